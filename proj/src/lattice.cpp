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

#include "iid/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace iid {

namespace {

void require_hermitian(const Matrix& h, const char* what) {
  if (hermiticity_residual(h) > 1e-12 * std::max(1.0, h.norm()))
    throw InvalidParams(std::string(what) + ": Hamiltonian term is not Hermitian");
}

// Two-site swap in the reduced basis, with the fermionic sign (−1)^{p_a p_b}.
Matrix pair_swap(const LocalSpace& space) {
  const int d = space.dim;
  Matrix p = Matrix::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      p(b * d + a, a * d + b) = (space.parity(a) & space.parity(b)) ? -1.0 : 1.0;
  return p;
}

}  // namespace

LatticeModel::LatticeModel(int n, LocalSpace space, std::string name)
    : n_(n), space_(std::move(space)), name_(std::move(name)) {
  if (n < 1) throw InvalidDimension("model needs at least one site");
  space_.validate();
}

void LatticeModel::add_two_site(int i, int j, const Matrix& h) {
  const int d = space_.dim;
  if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_)
    throw InvalidDimension("two-site term needs two distinct valid sites");
  if (h.rows() != d * d || h.cols() != d * d) throw InvalidDimension("two-site term is not d²×d²");
  require_hermitian(h, "two-site term");
  if (i < j) {
    two_site_.push_back({i, j, h});
  } else {
    const Matrix p = pair_swap(space_);
    two_site_.push_back({j, i, p * h * p.adjoint()});
  }
}

void LatticeModel::add_one_site(int site, const Matrix& h) {
  if (site < 0 || site >= n_) throw InvalidDimension("one-site term site out of range");
  if (h.rows() != d() || h.cols() != d()) throw InvalidDimension("one-site term is not d×d");
  require_hermitian(h, "one-site term");
  one_site_.push_back({site, h});
}

void LatticeModel::add_lindblad(int site, std::string label, const Matrix& op, double rate) {
  if (site < 0 || site >= n_) throw InvalidDimension("Lindblad site out of range");
  if (op.rows() != d() || op.cols() != d()) throw InvalidDimension("Lindblad operator is not d×d");
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw InvalidParams("Lindblad rate must be >= 0");
  require_finite(op, "Lindblad operator");
  lindblads_.push_back({site, std::move(label), op, rate, std::sqrt(rate) * op});
}

std::vector<Matrix> LatticeModel::lindblad_ops_at(int site) const {
  std::vector<Matrix> out;
  for (const auto& l : lindblads_)
    if (l.site == site) out.push_back(l.op);
  return out;
}

std::vector<const LindbladTerm*> LatticeModel::lindblads_at(int site) const {
  std::vector<const LindbladTerm*> out;
  for (const auto& l : lindblads_)
    if (l.site == site) out.push_back(&l);
  return out;
}

std::vector<SitePair> LatticeModel::pairs() const {
  std::set<SitePair> s;
  for (const auto& t : two_site_) s.insert({t.i, t.j});
  return {s.begin(), s.end()};
}

// ---------------------------------------------------------------- decomposition

PairPieces split_pair(const Matrix& h, int d) {
  if (h.rows() != d * d || h.cols() != d * d) throw InvalidDimension("split_pair: not d²×d²");
  PairPieces p;
  const cplx tr = h.trace();
  const Matrix id = identity(d);
  p.constant = tr.real() / double(d * d);
  p.left = partial_trace(h, {0}, 2, d) / double(d) - (tr / double(d * d)) * id;
  p.right = partial_trace(h, {1}, 2, d) / double(d) - (tr / double(d * d)) * id;
  p.irreducible = h - kron(p.left, id) - kron(id, p.right) - (tr / double(d * d)) * identity(d * d);
  return p;
}

HamiltonianDecomposition decompose_terms(int n, int d, const std::vector<TwoSiteTerm>& two,
                                         const std::vector<OneSiteTerm>& one) {
  HamiltonianDecomposition dec;
  dec.local.assign(n, Matrix::Zero(d, d));
  const Matrix id = identity(d);
  for (const auto& t : two) {
    PairPieces p = split_pair(t.h, d);
    auto it = dec.pair.find({t.i, t.j});
    if (it == dec.pair.end()) dec.pair.emplace(SitePair{t.i, t.j}, p.irreducible);
    else it->second += p.irreducible;
    dec.local[t.i] += p.left;
    dec.local[t.j] += p.right;
    dec.constant += p.constant;
  }
  for (const auto& t : one) {
    const cplx tr = t.h.trace();
    dec.local[t.site] += t.h - (tr / double(d)) * id;
    dec.constant += tr.real() / double(d);
  }
  return dec;
}

HamiltonianDecomposition decompose(const LatticeModel& model) {
  return decompose_terms(model.n(), model.d(), model.two_site_terms(), model.one_site_terms());
}

Matrix extract_irreducible_pair(const Matrix& h, int i, int j, int n, int d) {
  if (i >= j || i < 0 || j >= n) throw InvalidDimension("extract_irreducible_pair: need i < j");
  const double dn = static_cast<double>(ipow(d, n));
  const Matrix hij = partial_trace(h, {i, j}, n, d) / (dn / double(d * d));
  const Matrix hi = partial_trace(h, {i}, n, d) / (dn / double(d));
  const Matrix hj = partial_trace(h, {j}, n, d) / (dn / double(d));
  const Matrix id = identity(d);
  return hij - kron(hi, id) - kron(id, hj) + (h.trace() / dn) * identity(d * d);
}

Matrix extract_local(const Matrix& h, int i, int n, int d) {
  if (i < 0 || i >= n) throw InvalidDimension("extract_local: site out of range");
  const double dn = static_cast<double>(ipow(d, n));
  return partial_trace(h, {i}, n, d) / (dn / double(d)) - (h.trace() / dn) * identity(d);
}

HamiltonianDecomposition decompose_global(const Matrix& h, int n, int d) {
  HamiltonianDecomposition dec;
  for (int i = 0; i < n; ++i) dec.local.push_back(extract_local(h, i, n, d));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) dec.pair.emplace(SitePair{i, j}, extract_irreducible_pair(h, i, j, n, d));
  dec.constant = h.trace().real() / double(ipow(d, n));
  return dec;
}

Matrix reassemble(const HamiltonianDecomposition& dec, int n, const LocalSpace& space) {
  const long long dim = ipow(space.dim, n);
  Matrix h = dec.constant * identity(dim);
  for (const auto& [ij, m] : dec.pair) h += embed_sites(m, {ij.first, ij.second}, n, space);
  for (int i = 0; i < static_cast<int>(dec.local.size()); ++i)
    h += embed_local(dec.local[i], i, n, space.dim);
  return h;
}

// ---------------------------------------------------------------- generators

Matrix apply_dissipator(const Matrix& l, const Matrix& rho) {
  if (l.rows() != rho.rows() || l.cols() != rho.cols() || rho.rows() != rho.cols())
    throw InvalidDimension("apply_dissipator: dimension mismatch");
  const Matrix ldl = l.adjoint() * l;
  return l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
}

Matrix local_generator(const Matrix& h, const std::vector<Matrix>& ls) {
  const Eigen::Index d = h.rows();
  Matrix k = Matrix::Zero(d, d);
  for (const auto& l : ls) k += l.adjoint() * l;
  const Matrix heff = h - 0.5 * I_ * k;
  const Matrix id = identity(d);
  Matrix out = -I_ * (kron(id, heff) - kron(heff.conjugate(), id));
  for (const auto& l : ls) out += kron(l.conjugate(), l);
  return out;
}

Matrix local_hamiltonian(const LatticeModel& model, int site) {
  return decompose(model).local.at(site);
}

Superoperator single_site_lindbladian(const LatticeModel& model, int site) {
  Matrix h = local_hamiltonian(model, site);
  std::vector<Matrix> ls = model.lindblad_ops_at(site);
  return [h, ls](const Matrix& rho) {
    Matrix out = -I_ * commutator(h, rho);
    for (const auto& l : ls) out += apply_dissipator(l, rho);
    return out;
  };
}

Matrix single_site_generator(const LatticeModel& model, const HamiltonianDecomposition& dec,
                             int site) {
  return local_generator(dec.local.at(site), model.lindblad_ops_at(site));
}

Matrix single_site_generator(const LatticeModel& model, int site) {
  return single_site_generator(model, decompose(model), site);
}

GlobalLindbladian::GlobalLindbladian(const LatticeModel& model, const Caps& caps) {
  caps.require_hilbert(model.hilbert_dim());
  h_ = global_hamiltonian(model);
  ls_ = global_lindblads(model);
  heff_ = h_;
  for (const auto& l : ls_) {
    ldl_.push_back(l.adjoint() * l);
    heff_ -= 0.5 * I_ * ldl_.back();
  }
}

Matrix GlobalLindbladian::apply(const Matrix& rho) const {
  if (rho.rows() != h_.rows() || rho.cols() != h_.cols())
    throw InvalidDimension("apply_lindbladian: ρ is not d^n×d^n");
  Matrix out = -I_ * (heff_ * rho - rho * heff_.adjoint());
  for (const auto& l : ls_) out += l * rho * l.adjoint();
  return out;
}

Matrix GlobalLindbladian::matrix(const Caps& caps) const {
  const long long dim = h_.rows();
  caps.require_superop(dim * dim);
  const Matrix id = identity(dim);
  Matrix out = -I_ * (kron(id, heff_) - kron(heff_.conjugate(), id));
  for (const auto& l : ls_) out += kron(l.conjugate(), l);
  return out;
}

Matrix global_hamiltonian(const LatticeModel& model) {
  const int n = model.n();
  const LocalSpace& space = model.space();
  Matrix h = Matrix::Zero(model.hilbert_dim(), model.hilbert_dim());
  for (const auto& t : model.two_site_terms()) h += embed_sites(t.h, {t.i, t.j}, n, space);
  for (const auto& t : model.one_site_terms()) h += embed_local(t.h, t.site, n, space.dim);
  return h;
}

std::vector<Matrix> global_lindblads(const LatticeModel& model) {
  std::vector<Matrix> out;
  for (const auto& l : model.lindblads())
    out.push_back(embed_sites(l.op, {l.site}, model.n(), model.space()));
  return out;
}

Matrix effective_hamiltonian(const LatticeModel& model) {
  Matrix h = global_hamiltonian(model);
  for (const auto& l : global_lindblads(model)) h -= 0.5 * I_ * (l.adjoint() * l);
  return h;
}

Matrix apply_lindbladian(const LatticeModel& model, const Matrix& rho) {
  return GlobalLindbladian(model).apply(rho);
}

Matrix lindbladian_matrix(const LatticeModel& model, const Caps& caps) {
  return GlobalLindbladian(model, caps).matrix(caps);
}

}  // namespace iid
