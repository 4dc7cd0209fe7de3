// Copyright 2026 The iidss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "iid/algebra.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace iid {

// ---------------------------------------------------------------- limits

Caps Caps::from_env() {
  Caps caps;
  if (const char* env = std::getenv("IID_MAX_DIM")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && v > 0) {
      caps.hilbert = std::max(caps.hilbert, v);
      caps.superop = v;
    }
  }
  return caps;
}

void Caps::require_hilbert(long long dim) const {
  if (dim > hilbert) throw CapExceeded("Hilbert-space dimension", dim, hilbert);
}

void Caps::require_superop(long long dim) const {
  if (dim > superop) throw CapExceeded("superoperator dimension", dim, superop);
}

long long ipow(long long base, int exp) {
  long long r = 1;
  for (int k = 0; k < exp; ++k) {
    if (r > std::numeric_limits<long long>::max() / std::max(base, 1LL))
      throw CapExceeded("integer power overflow", std::numeric_limits<long long>::max(), 0);
    r *= base;
  }
  return r;
}

// ---------------------------------------------------------------- local space

std::string to_string(Statistics s) {
  switch (s) {
    case Statistics::spin: return "spin";
    case Statistics::fermion: return "fermion";
    case Statistics::hardcore_boson: return "hardcore_boson";
    case Statistics::truncated_boson: return "truncated_boson";
  }
  return "spin";
}

Statistics statistics_from_string(const std::string& s) {
  if (s == "spin") return Statistics::spin;
  if (s == "fermion") return Statistics::fermion;
  if (s == "hardcore_boson") return Statistics::hardcore_boson;
  if (s == "truncated_boson") return Statistics::truncated_boson;
  throw InvalidParams("unknown statistics '" + s + "'");
}

LocalSpace LocalSpace::spin(int d) {
  LocalSpace s;
  s.dim = d;
  s.validate();
  return s;
}

namespace {

LocalSpace fermion_from_bits(std::vector<std::vector<int>> bits) {
  LocalSpace s;
  s.statistics = Statistics::fermion;
  s.superselection = true;
  s.dim = static_cast<int>(bits.size());
  for (const auto& b : bits) {
    int n = 0;
    for (int x : b) n += x;
    s.occupation.push_back(n);
    s.n_max = std::max(s.n_max, n);
  }
  s.mode_bits = std::move(bits);
  return s;
}

}  // namespace

LocalSpace LocalSpace::spinless_fermion() { return fermion_from_bits({{0}, {1}}); }

LocalSpace LocalSpace::spinful_fermion() {
  return fermion_from_bits({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

LocalSpace LocalSpace::no_double_occupancy() {
  return fermion_from_bits({{0, 0}, {0, 1}, {1, 0}});
}

LocalSpace LocalSpace::hardcore_boson(bool superselection) {
  LocalSpace s;
  s.dim = 2;
  s.statistics = Statistics::hardcore_boson;
  s.superselection = superselection;
  s.n_max = 1;
  s.occupation = {0, 1};
  return s;
}

LocalSpace LocalSpace::truncated_boson(int n_max) {
  if (n_max < 1) throw InvalidParams("truncated boson needs n_max >= 1");
  LocalSpace s;
  s.dim = n_max + 1;
  s.statistics = Statistics::truncated_boson;
  s.superselection = true;
  s.n_max = n_max;
  for (int k = 0; k <= n_max; ++k) s.occupation.push_back(k);
  return s;
}

LocalSpace LocalSpace::from_description(int dim, Statistics st, bool superselection) {
  switch (st) {
    case Statistics::spin: {
      LocalSpace s = spin(dim);
      if (superselection) throw InvalidParams("spin spaces carry no number operator");
      return s;
    }
    case Statistics::fermion:
      if (dim == 2) return spinless_fermion();
      if (dim == 3) return no_double_occupancy();
      if (dim == 4) return spinful_fermion();
      throw InvalidParams("fermionic local_dim must be 2, 3 or 4");
    case Statistics::hardcore_boson:
      if (dim != 2) throw InvalidParams("hard-core bosons have local_dim 2");
      return hardcore_boson(superselection);
    case Statistics::truncated_boson:
      return truncated_boson(dim - 1);
  }
  throw InvalidParams("bad local space");
}

Matrix LocalSpace::number_operator() const {
  if (!has_number()) throw InvalidParams("spin space has no number operator");
  Matrix n = Matrix::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) n(a, a) = occupation[a];
  return n;
}

Matrix LocalSpace::parity_operator() const {
  Matrix p = Matrix::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) p(a, a) = has_number() && (occupation[a] & 1) ? -1.0 : 1.0;
  return p;
}

Matrix LocalSpace::annihilator(int mode) const {
  Matrix c = Matrix::Zero(dim, dim);
  if (fermionic()) {
    if (mode < 0 || mode >= modes()) throw InvalidDimension("fermionic mode out of range");
    for (int a = 0; a < dim; ++a) {
      const auto& bits = mode_bits[a];
      if (!bits[mode]) continue;
      auto target = bits;
      target[mode] = 0;
      auto it = std::find(mode_bits.begin(), mode_bits.end(), target);
      if (it == mode_bits.end()) continue;
      int before = 0;
      for (int s = 0; s < mode; ++s) before += bits[s];
      c(it - mode_bits.begin(), a) = (before & 1) ? -1.0 : 1.0;
    }
    return c;
  }
  if (!has_number()) throw InvalidParams("spin space has no annihilator");
  if (mode != 0) throw InvalidDimension("bosonic sites carry one mode");
  // Hard-core bosons are the n_max = 1 case; the truncated ladder has √n.
  for (int a = 1; a < dim; ++a) c(a - 1, a) = statistics == Statistics::hardcore_boson ? 1.0 : std::sqrt(double(a));
  return c;
}

void LocalSpace::validate() const {
  if (dim < 2) throw InvalidDimension("local dimension must be >= 2");
  if (statistics == Statistics::spin) {
    if (!occupation.empty()) throw InvalidParams("spin space has occupations");
    return;
  }
  if (static_cast<int>(occupation.size()) != dim) throw InvalidParams("occupation list size != dim");
  if ((statistics == Statistics::fermion || statistics == Statistics::truncated_boson) &&
      !superselection)
    throw InvalidParams("fermions and massive bosons obey number superselection");
}

// ---------------------------------------------------------------- basics

Matrix tensor_power(const Matrix& rho, int n) {
  if (n < 1) throw InvalidDimension("tensor power needs n >= 1");
  Matrix out = rho;
  for (int k = 1; k < n; ++k) out = kron(out, rho);
  return out;
}

double trace_norm(const Matrix& x) {
  Eigen::BDCSVD<Matrix> svd(x);
  return svd.singularValues().sum();
}

double trace_distance(const Matrix& a, const Matrix& b) { return 0.5 * trace_norm(a - b); }

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw InvalidDimension(std::string(what) + ": expected a non-empty square matrix");
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw NonFinite(std::string(what) + ": non-finite entries");
}

// ---------------------------------------------------------------- embedding

Matrix embed_local(const Matrix& op, int site, int n, int d) {
  if (op.rows() != d || op.cols() != d) throw InvalidDimension("embed_local: op is not d×d");
  if (site < 0 || site >= n) throw InvalidDimension("embed_local: site out of range");
  const Matrix left = identity(ipow(d, site));
  const Matrix right = identity(ipow(d, n - site - 1));
  return kron(kron(left, op), right);
}

namespace {

// Site digits of a basis index, site 0 most significant.
void digits_of(long long idx, int n, int d, std::vector<int>& out) {
  out.resize(n);
  for (int k = n - 1; k >= 0; --k) {
    out[k] = static_cast<int>(idx % d);
    idx /= d;
  }
}

long long index_of(const std::vector<int>& digits, int d) {
  long long idx = 0;
  for (int x : digits) idx = idx * d + x;
  return idx;
}

}  // namespace

Matrix embed_sites(const Matrix& op, const std::vector<int>& sites, int n,
                   const LocalSpace& space) {
  const int d = space.dim;
  const int k = static_cast<int>(sites.size());
  const long long dk = ipow(d, k);
  if (op.rows() != dk || op.cols() != dk) throw InvalidDimension("embed_sites: op size mismatch");
  for (int m = 0; m < k; ++m) {
    if (sites[m] < 0 || sites[m] >= n) throw InvalidDimension("embed_sites: site out of range");
    if (m > 0 && sites[m] <= sites[m - 1])
      throw InvalidDimension("embed_sites: sites must be strictly ascending");
  }
  const long long dim = ipow(d, n);
  Matrix out = Matrix::Zero(dim, dim);
  std::vector<char> in_set(n, 0);
  for (int s : sites) in_set[s] = 1;

  std::vector<int> col_digits, row_digits, local(k);
  for (long long c = 0; c < dim; ++c) {
    digits_of(c, n, d, col_digits);
    long long cl = 0;
    for (int m = 0; m < k; ++m) cl = cl * d + col_digits[sites[m]];
    // particles on skipped sites strictly before each listed site
    std::vector<int> skipped_before(k, 0);
    if (space.fermionic()) {
      int count = 0, m = 0;
      for (int s = 0; s < n && m < k; ++s) {
        if (s == sites[m]) {
          skipped_before[m++] = count;
        } else if (!in_set[s]) {
          count += space.occupation[col_digits[s]];
        }
      }
    }
    for (long long rl = 0; rl < dk; ++rl) {
      const cplx v = op(rl, cl);
      if (v == cplx(0.0)) continue;
      row_digits = col_digits;
      long long t = rl;
      for (int m = k - 1; m >= 0; --m) {
        row_digits[sites[m]] = static_cast<int>(t % d);
        t /= d;
      }
      int phase = 0;
      if (space.fermionic())
        for (int m = 0; m < k; ++m)
          if (space.parity(row_digits[sites[m]]) != space.parity(col_digits[sites[m]]))
            phase += skipped_before[m];
      out(index_of(row_digits, d), c) += (phase & 1) ? -v : v;
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& x, std::vector<int> keep, int n, int d) {
  const long long dim = ipow(d, n);
  if (x.rows() != dim || x.cols() != dim) throw InvalidDimension("partial_trace: X is not d^n×d^n");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (int s : keep)
    if (s < 0 || s >= n) throw InvalidDimension("partial_trace: kept site out of range");
  const int k = static_cast<int>(keep.size());
  std::vector<char> kept(n, 0);
  for (int s : keep) kept[s] = 1;

  // Split every global index into (kept index, traced index) once.
  std::vector<long long> kidx(dim), tidx(dim);
  std::vector<int> digits;
  for (long long a = 0; a < dim; ++a) {
    digits_of(a, n, d, digits);
    long long ka = 0, ta = 0;
    for (int s = 0; s < n; ++s) {
      if (kept[s]) ka = ka * d + digits[s];
      else ta = ta * d + digits[s];
    }
    kidx[a] = ka;
    tidx[a] = ta;
  }
  const long long dk = ipow(d, k);
  Matrix out = Matrix::Zero(dk, dk);
  for (long long c = 0; c < dim; ++c)
    for (long long r = 0; r < dim; ++r)
      if (tidx[r] == tidx[c]) out(kidx[r], kidx[c]) += x(r, c);
  return out;
}

// ---------------------------------------------------------------- superoperators

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unvec(const Vector& v, Eigen::Index dim) {
  if (v.size() != dim * dim) throw InvalidDimension("unvec: length is not dim²");
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Matrix vectorize_superoperator(const Superoperator& apply, Eigen::Index dim) {
  const Eigen::Index dd = dim * dim;
  Matrix out(dd, dd);
  Matrix unit = Matrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dd; ++k) {
    unit(k % dim, k / dim) = 1.0;
    out.col(k) = vec(apply(unit));
    unit(k % dim, k / dim) = 0.0;
  }
  return out;
}

Matrix sandwich_superop(const Matrix& a, const Matrix& b) { return kron(b.transpose(), a); }

// ---------------------------------------------------------------- decompositions

Matrix matrix_exponential(const Matrix& m, double t) {
  require_square(m, "matrix_exponential");
  require_finite(m, "matrix_exponential");
  Matrix scaled = m * t;
  Matrix out = scaled.exp();
  require_finite(out, "matrix_exponential");
  return out;
}

Matrix null_space_basis(const Matrix& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return Matrix(m.cols(), 0);
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (smax > 0 && s(k) >= tol * smax) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

int numerical_rank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(0) > 0 && s(k) >= tol * s(0)) ++rank;
  return rank;
}

Eigensystem eigen_decomposition(const Matrix& m) {
  require_square(m, "eigen_decomposition");
  require_finite(m, "eigen_decomposition");
  Eigen::ComplexEigenSolver<Matrix> es(m, true);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("complex eigensolver did not converge");
  Eigensystem out;
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) {
    const double nrm = out.vectors.col(k).norm();
    if (nrm > 0) out.vectors.col(k) /= nrm;
  }
  Eigen::BDCSVD<Matrix> svd(out.vectors);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  out.condition = smin > 0 ? s(0) / smin : std::numeric_limits<double>::infinity();
  out.defective = !(out.condition <= 1e8);
  return out;
}

HermitianEigensystem hermitian_eigen(const Matrix& m) {
  require_square(m, "hermitian_eigen");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  if (es.info() != Eigen::Success) throw ConvergenceFailure("Hermitian eigensolver did not converge");
  HermitianEigensystem out;
  out.values = es.eigenvalues().reverse();
  out.vectors = es.eigenvectors().rowwise().reverse();
  return out;
}

}  // namespace iid
