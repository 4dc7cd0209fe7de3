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

#pragma once

#include "iid/algebra.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace iid {

using SitePair = std::pair<int, int>;

// Two-site term on the ordered pair i < j. The matrix lives in the reduced
// basis |a_i⟩⊗|b_j⟩; for fermions this is the two-site occupation basis and
// the Jordan-Wigner string over sites between i and j is implicit.
struct TwoSiteTerm {
  int i = 0, j = 1;
  Matrix h;
};

struct OneSiteTerm {
  int site = 0;
  Matrix h;
};

// `op` is √rate·raw; every formula downstream uses `op`.
struct LindbladTerm {
  int site = 0;
  std::string label;
  Matrix raw;
  double rate = 1.0;
  Matrix op;
};

class LatticeModel {
 public:
  LatticeModel() = default;
  LatticeModel(int n, LocalSpace space, std::string name = {});

  int n() const { return n_; }
  int d() const { return space_.dim; }
  long long hilbert_dim() const { return ipow(space_.dim, n_); }
  const LocalSpace& space() const { return space_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  // i > j is accepted and reordered by conjugating with the two-site swap.
  void add_two_site(int i, int j, const Matrix& h);
  void add_one_site(int site, const Matrix& h);
  void add_lindblad(int site, std::string label, const Matrix& op, double rate = 1.0);

  const std::vector<TwoSiteTerm>& two_site_terms() const { return two_site_; }
  const std::vector<OneSiteTerm>& one_site_terms() const { return one_site_; }
  const std::vector<LindbladTerm>& lindblads() const { return lindblads_; }
  std::vector<Matrix> lindblad_ops_at(int site) const;
  std::vector<const LindbladTerm*> lindblads_at(int site) const;

  // Distinct pairs that carry at least one two-site term, ascending.
  std::vector<SitePair> pairs() const;

 private:
  int n_ = 0;
  LocalSpace space_;
  std::string name_;
  std::vector<TwoSiteTerm> two_site_;
  std::vector<OneSiteTerm> one_site_;
  std::vector<LindbladTerm> lindblads_;
};

// ---------------------------------------------------------------- decomposition

// H = Σ H_ij + Σ H_i + constant·I, with H_ij traceless on either site and H_i
// traceless.
struct HamiltonianDecomposition {
  std::map<SitePair, Matrix> pair;
  std::vector<Matrix> local;
  double constant = 0.0;
};

// Pieces of a single two-site matrix h = irr + left⊗I + I⊗right + c·I.
struct PairPieces {
  Matrix irreducible;
  Matrix left;
  Matrix right;
  double constant = 0.0;
};

PairPieces split_pair(const Matrix& h, int d);

// Term-list route, valid for any n.
HamiltonianDecomposition decompose(const LatticeModel& model);
HamiltonianDecomposition decompose_terms(int n, int d, const std::vector<TwoSiteTerm>& two,
                                         const std::vector<OneSiteTerm>& one);

// Global-matrix route via partial traces.
Matrix extract_irreducible_pair(const Matrix& h, int i, int j, int n, int d);
Matrix extract_local(const Matrix& h, int i, int n, int d);
HamiltonianDecomposition decompose_global(const Matrix& h, int n, int d);

// Reassemble on the full space (with Jordan-Wigner strings for fermions).
Matrix reassemble(const HamiltonianDecomposition& dec, int n, const LocalSpace& space);

// ---------------------------------------------------------------- generators

Matrix apply_dissipator(const Matrix& l, const Matrix& rho);

// Matrix of −i[h,·] + Σ 𝒟_L on d×d inputs.
Matrix local_generator(const Matrix& h, const std::vector<Matrix>& ls);

// H_i from the full decomposition (including 1-local shadows of pair terms).
Matrix local_hamiltonian(const LatticeModel& model, int site);
Superoperator single_site_lindbladian(const LatticeModel& model, int site);
Matrix single_site_generator(const LatticeModel& model, int site);
Matrix single_site_generator(const LatticeModel& model, const HamiltonianDecomposition& dec,
                             int site);

// Global operators; built once, then applied directly.
class GlobalLindbladian {
 public:
  explicit GlobalLindbladian(const LatticeModel& model, const Caps& caps = Caps::from_env());

  const Matrix& hamiltonian() const { return h_; }
  const Matrix& effective_hamiltonian() const { return heff_; }
  const std::vector<Matrix>& lindblads() const { return ls_; }
  long long dim() const { return h_.rows(); }

  Matrix apply(const Matrix& rho) const;
  // Vectorized generator, −i(I⊗H_eff − conj(H_eff)⊗I) + Σ conj(L)⊗L.
  Matrix matrix(const Caps& caps = Caps::from_env()) const;

 private:
  Matrix h_, heff_;
  std::vector<Matrix> ls_;
  std::vector<Matrix> ldl_;
};

Matrix global_hamiltonian(const LatticeModel& model);
std::vector<Matrix> global_lindblads(const LatticeModel& model);
Matrix effective_hamiltonian(const LatticeModel& model);
Matrix apply_lindbladian(const LatticeModel& model, const Matrix& rho);
Matrix lindbladian_matrix(const LatticeModel& model, const Caps& caps = Caps::from_env());

}  // namespace iid
