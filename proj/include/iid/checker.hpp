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

#include "iid/lattice.hpp"
#include "iid/permutations.hpp"
#include "iid/steady.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace iid {

struct Verdict {
  bool pass = false;
  double residual = 0.0;
  std::string note;
};

struct CheckReport {
  std::string theorem;
  std::vector<std::pair<std::string, Verdict>> verdicts;  // in evaluation order
  bool overall = false;
  std::vector<std::string> notes;

  std::optional<double> oracle_residual;  // ‖ℒ(ρ^{⊗n})‖_F
  std::optional<bool> oracle_agrees;
  std::string mode;                       // e.g. "equivalence" / "sufficient-only"
  std::vector<Matrix> witnesses;          // local states certifying a pass
  std::optional<Matrix> generator;        // ℓ for the sufficient conditions

  const Verdict* find(const std::string& name) const;
  void add(std::string name, Verdict v) { verdicts.emplace_back(std::move(name), std::move(v)); }
};

struct CheckOptions {
  Tolerances tol;
  Caps caps = Caps::from_env();
  bool oracle = true;                    // brute-force ℒ(ρ^{⊗n}) when d^n fits
  long long global_ii_limit = 1024;      // run the d^n path of (ii) up to this size
};

// Theorem conditions on a candidate ρ_loc. Residuals are absolute; a verdict
// passes when residual ≤ tol·max(1, operator scale).
Verdict check_condition_i(const LatticeModel& model, const LocalState& state,
                          const CheckOptions& opt = {});
Verdict check_condition_ii(const LatticeModel& model, const LocalState& state,
                           const CheckOptions& opt = {});
Verdict check_condition_iii(const LatticeModel& model, const LocalState& state,
                            const CheckOptions& opt = {});
Verdict check_condition_iv(const LatticeModel& model, const LocalState& state,
                           const CheckOptions& opt = {});

CheckReport check_theorem1(const LatticeModel& model, const LocalState& state,
                           const CheckOptions& opt = {});
CheckReport check_lemma2(const LatticeModel& model, const LocalState& state,
                         const CheckOptions& opt = {});
// d = 2 only. `overall` is the existence verdict: case 1 OR case 2.
CheckReport check_corollary3(const LatticeModel& model, const CheckOptions& opt = {});
CheckReport check_theorem5(const LatticeModel& model, const CheckOptions& opt = {});
CheckReport check_theorem5prime(const LatticeModel& model, const CheckOptions& opt = {});
CheckReport check_theorem8(const LatticeModel& model, const CheckOptions& opt = {});

// ---------------------------------------------------------------- d = 2 pair terms

// Symmetric two-qubit basis, coefficient order
// (α_x, α_y, α_z, β_x, β_y, β_z, β_xy, β_zx, β_yz):
// (σ⊗I + I⊗σ)/√2, σ⊗σ, (σ⊗τ + τ⊗σ)/√2.
std::vector<Matrix> symmetric_pair_basis();

// Real 9×9 matrix M(s) with [Σ_l c_l B_l, ρ⊗ρ] = 0 ⇔ M c = 0, for
// ρ = (I + s·σ)/2. Closed form; `appendix_matrix_numeric` evaluates the
// defining trace M_kl = Tr(B_k [B_l, ρ⊗ρ]) / 4i directly.
RealMatrix appendix_matrix(const Eigen::Vector3d& s);
RealMatrix appendix_matrix_numeric(const Eigen::Vector3d& s);

// Basis of symmetric, partial-traceless Hermitian pair terms commuting with
// ρ⊗ρ. Generic s: {X⊗X+Y⊗Y+Z⊗Z, (s·σ)⊗(s·σ)} up to recombination.
std::vector<Matrix> allowed_pair_terms_d2(const Eigen::Vector3d& s, double tol = 1e-10);
Eigen::Vector3d bloch_vector(const Matrix& rho);

// ‖[h, P_ij]‖ for a two-site term in the reduced basis.
double pair_asymmetry(const Matrix& h, const LocalSpace& space);

// Residual of H against span(B_com(n) ∪ uniform 1-local operators) on the
// full space; cross-check of the term-list split used by check_theorem5.
double theorem5_split_residual_global(const LatticeModel& model, const Caps& caps = Caps::from_env());

}  // namespace iid
