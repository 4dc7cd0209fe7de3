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

#include "iid/permutations.hpp"

#include <algorithm>
#include <numeric>

namespace iid {

void validate_permutation(const Permutation& sigma, int n) {
  if (static_cast<int>(sigma.size()) != n) throw InvalidPermutation("permutation has wrong length");
  std::vector<char> seen(n, 0);
  for (int v : sigma) {
    if (v < 0 || v >= n || seen[v]) throw InvalidPermutation("not a permutation of {0..n-1}");
    seen[v] = 1;
  }
}

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(b.size());
  for (size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

Permutation inverse(const Permutation& sigma) {
  Permutation out(sigma.size());
  for (size_t i = 0; i < sigma.size(); ++i) out[sigma[i]] = static_cast<int>(i);
  return out;
}

std::vector<Transposition> canonical_transpositions(const Permutation& sigma) {
  // A cycle c0→c1→…→c_{m−1}→c0 equals (c0 c1), then (c0 c2), …, applied in
  // that order.
  const int n = static_cast<int>(sigma.size());
  std::vector<char> done(n, 0);
  std::vector<Transposition> out;
  for (int start = 0; start < n; ++start) {
    if (done[start]) continue;
    std::vector<int> cycle;
    for (int k = start; !done[k]; k = sigma[k]) {
      done[k] = 1;
      cycle.push_back(k);
    }
    for (size_t m = 1; m < cycle.size(); ++m) out.emplace_back(cycle[0], cycle[m]);
  }
  return out;
}

Matrix transposition_matrix(int i, int j, int n, const LocalSpace& space) {
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw InvalidPermutation("transposition needs two distinct valid sites");
  if (i > j) std::swap(i, j);
  const int d = space.dim;
  const long long dim = ipow(d, n);
  Matrix p = Matrix::Zero(dim, dim);
  std::vector<int> digits(n);
  for (long long c = 0; c < dim; ++c) {
    long long t = c;
    for (int k = n - 1; k >= 0; --k) {
      digits[k] = static_cast<int>(t % d);
      t /= d;
    }
    int sign = 0;
    if (space.fermionic()) {
      const int ni = space.occupation[digits[i]];
      const int nj = space.occupation[digits[j]];
      int between = 0;
      for (int k = i + 1; k < j; ++k) between += space.occupation[digits[k]];
      sign = ni * nj + between * (ni + nj);
    }
    std::swap(digits[i], digits[j]);
    long long r = 0;
    for (int x : digits) r = r * d + x;
    p(r, c) = (sign & 1) ? -1.0 : 1.0;
  }
  return p;
}

Matrix product_of_transpositions(const std::vector<Transposition>& ts, int n,
                                 const LocalSpace& space) {
  Matrix p = identity(ipow(space.dim, n));
  for (const auto& [a, b] : ts) p = transposition_matrix(a, b, n, space) * p;
  return p;
}

PermutationOperator permutation_operator(const Permutation& sigma, int n,
                                         const LocalSpace& space) {
  validate_permutation(sigma, n);
  PermutationOperator out;
  out.sigma = sigma;
  out.statistics = space.statistics;
  out.matrix = product_of_transpositions(canonical_transpositions(sigma), n, space);
  return out;
}

std::vector<Permutation> all_permutations(int n, const Caps& caps) {
  if (n > caps.perm_sites) throw CapExceeded("symmetric-group enumeration (sites)", n, caps.perm_sites);
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Matrix symmetrize(const Matrix& x, int n, const LocalSpace& space, const Caps& caps) {
  const long long dim = ipow(space.dim, n);
  if (x.rows() != dim || x.cols() != dim) throw InvalidDimension("symmetrize: X is not d^n×d^n");
  const auto perms = all_permutations(n, caps);
  Matrix acc = Matrix::Zero(dim, dim);
  for (const auto& s : perms) {
    const Matrix p = permutation_operator(s, n, space).matrix;
    acc += p * x * p.adjoint();
  }
  return acc / static_cast<double>(perms.size());
}

Matrix orthonormal_span(const std::vector<Matrix>& family, double tol) {
  if (family.empty()) return Matrix(0, 0);
  const Eigen::Index len = family[0].size();
  Matrix stacked(len, static_cast<Eigen::Index>(family.size()));
  for (size_t k = 0; k < family.size(); ++k) stacked.col(k) = vec(family[k]);
  Eigen::BDCSVD<Matrix> svd(stacked, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(0) > 0 && s(k) >= tol * s(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

double span_residual(const Matrix& x, const Matrix& q) {
  const Vector v = vec(x);
  const double nrm = v.norm();
  if (nrm == 0.0) return 0.0;
  if (q.cols() == 0) return 1.0;
  const Vector r = v - q * (q.adjoint() * v);
  return r.norm() / nrm;
}

BcomBasis bcom_basis(int n, const LocalSpace& space, const Caps& caps, double tol) {
  BcomBasis out;
  out.n = n;
  out.space = space;
  const bool monomials = space.superselection && space.has_number();
  const long long powers = monomials ? ipow(space.n_max + 1, n) : 1;
  const auto perms = all_permutations(n, caps);
  const long long count = static_cast<long long>(perms.size()) * powers;
  if (count > caps.bcom_generators) throw CapExceeded("B_com generator count", count, caps.bcom_generators);
  caps.require_hilbert(ipow(space.dim, n));

  // n̂^k for every local power k.
  std::vector<Matrix> npow;
  if (monomials) {
    const Matrix nop = space.number_operator();
    npow.push_back(identity(space.dim));
    for (int k = 1; k <= space.n_max; ++k) npow.push_back(npow.back() * nop);
  }
  for (const auto& s : perms) {
    const Matrix p = permutation_operator(s, n, space).matrix;
    std::string plabel = "P(";
    for (size_t k = 0; k < s.size(); ++k) plabel += (k ? "," : "") + std::to_string(s[k]);
    plabel += ")";
    for (long long m = 0; m < powers; ++m) {
      Matrix mono = Matrix::Identity(1, 1);
      std::string label;
      long long t = m;
      std::vector<int> ks(n, 0);
      for (int i = n - 1; i >= 0 && monomials; --i) {
        ks[i] = static_cast<int>(t % (space.n_max + 1));
        t /= space.n_max + 1;
      }
      for (int i = 0; i < n; ++i) {
        mono = kron(mono, monomials ? npow[ks[i]] : identity(space.dim));
        if (monomials && ks[i]) label += "n" + std::to_string(i) + "^" + std::to_string(ks[i]) + " ";
      }
      out.generators.push_back(mono * p);
      out.labels.push_back(label + plabel);
    }
  }
  const Eigen::Index m = static_cast<Eigen::Index>(out.generators.size());
  Matrix stacked(out.generators[0].size(), m);
  for (Eigen::Index k = 0; k < m; ++k) stacked.col(k) = vec(out.generators[k]);
  out.gram = stacked.adjoint() * stacked;
  out.orthonormal = orthonormal_span(out.generators, tol);
  out.rank = static_cast<int>(out.orthonormal.cols());
  return out;
}

Membership bcom_membership(const Matrix& x, const BcomBasis& basis, double tol) {
  if (basis.generators.empty() || x.rows() != basis.generators[0].rows() ||
      x.cols() != basis.generators[0].cols())
    throw InvalidDimension("bcom_membership: operator size does not match basis");
  Membership m;
  m.residual = span_residual(x, basis.orthonormal);
  m.member = m.residual < tol;
  return m;
}

int commutant_dimension(const std::vector<Matrix>& family, Eigen::Index dim, const Caps& caps,
                        double tol) {
  caps.require_superop(dim * dim);
  const Eigen::Index dd = dim * dim;
  const Matrix id = identity(dim);
  Matrix gram = Matrix::Zero(dd, dd);
  for (const auto& x : family) {
    if (x.rows() != dim || x.cols() != dim) throw InvalidDimension("commutant_dimension: size mismatch");
    const Matrix a = kron(id, x) - kron(x.transpose(), id);  // vec(XY − YX)
    gram.noalias() += a.adjoint() * a;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  const RealVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const double smax = ev.maxCoeff();
  if (smax == 0.0) return static_cast<int>(dd);
  int null = 0;
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    if (ev(k) < tol * smax * 1e3) ++null;  // √ of a Gram spectrum: widen the cutoff
  return null;
}

}  // namespace iid
