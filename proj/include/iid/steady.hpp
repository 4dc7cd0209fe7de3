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

#include <optional>
#include <string>
#include <vector>

namespace iid {

// Single-site density matrix with its spectral data.
struct LocalState {
  Matrix rho;
  RealVector eigenvalues;  // descending
  int rank = 0;
  Matrix image_basis;      // d×r, orthonormal columns spanning Im ρ
  Matrix projector;        // image_basis·image_basis†

  // Validates Hermiticity, trace and positivity, then hermitizes.
  static LocalState from(const Matrix& rho, double rank_tol = 1e-10);
  int dim() const { return static_cast<int>(rho.rows()); }
  bool regular() const { return rank == dim(); }
};

// Columns vec(E_ab) with n_a = n_b: the matrices commuting with n̂. Without
// superselection (or for spins) this is the identity on d².
Matrix sector_basis(const LocalSpace& space);

// Spectral projector onto ker G along the complementary invariant subspace,
// E = R (Lᴴ R)⁻¹ Lᴴ with R, L right/left null bases. Zero if ker G = {0}.
Matrix kernel_projector(const Matrix& g, double tol = 1e-10);

struct MeanFieldSolution {
  LocalState state;              // E(I/d), the maximal-support fixed point
  std::vector<Matrix> family;    // density matrices spanning the fixed-point set
  int null_dim = 0;
  double residual = 0.0;         // ‖ℓ(ρ)‖_F
  std::vector<std::string> notes;
};

// Fixed point of a single-site generator (d²×d², column-stacked), restricted
// to the number sector when the space has superselection.
MeanFieldSolution fixed_point(const Matrix& generator, const LocalSpace& space,
                              const Tolerances& tol = {});

// Mean-field fixed point of ℒ_site (from the full decomposition).
MeanFieldSolution meanfield_steady_state(const LatticeModel& model, int site = 0,
                                         const Tolerances& tol = {});

struct SteadyStateResult {
  std::optional<LocalState> rho_loc;
  std::vector<Matrix> full_basis;  // unit-trace where possible
  int dimension = 0;
  double residual = 0.0;           // max ‖𝓛 v‖ over the null basis
  bool unique_in_oracle = false;
  // ‖v − QQᴴv‖/‖v‖ for v = vec(ρ_loc^{⊗n}); set when rho_loc is given.
  std::optional<double> iid_projection_residual;
};

// Null space of the vectorized full Lindbladian.
SteadyStateResult full_steady_states(const LatticeModel& model,
                                     const std::optional<LocalState>& candidate = std::nullopt,
                                     const Caps& caps = Caps::from_env(),
                                     const Tolerances& tol = {});

// ‖ℒ(ρ^{⊗n})‖_F by direct application.
double verify_iid(const LatticeModel& model, const Matrix& rho_loc,
                  const Caps& caps = Caps::from_env());

}  // namespace iid
