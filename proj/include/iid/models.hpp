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

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace iid {

// ---------------------------------------------------------------- operators

namespace ops {

// Spin-1/2 in the basis (|↑⟩, |↓⟩).
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix spin_x();
Matrix spin_y();
Matrix spin_z();
Matrix spin_minus();  // |↓⟩⟨↑|
Matrix spin_plus();

// Spin operators of a two-mode fermionic site (↑ = mode 0, ↓ = mode 1),
// S = ½ c†σc, for the spinful and the no-double-occupancy spaces.
Matrix fermion_spin_x(const LocalSpace& space);
Matrix fermion_spin_y(const LocalSpace& space);
Matrix fermion_spin_z(const LocalSpace& space);
Matrix fermion_spin_minus(const LocalSpace& space);  // c↓†c↑

// Annihilator of `mode` on site 0 or 1 of a two-site block in its reduced
// basis; the second site carries the parity string of the first.
Matrix pair_annihilator(const LocalSpace& space, int site, int mode);

// Σ_modes (c_0†c_1 + c_1†c_0) on a two-site block.
Matrix pair_hopping(const LocalSpace& space);
// n ⊗ n on a two-site block.
Matrix pair_density(const LocalSpace& space);

// S·S on two spin-1/2 sites.
Matrix heisenberg_pair();

}  // namespace ops

// ---------------------------------------------------------------- examples

enum class Geometry { chain, ring, all };
std::string to_string(Geometry g);
Geometry geometry_from_string(const std::string& s);
// Pair list for the geometry; a ring on two sites is a single bond.
std::vector<SitePair> geometry_pairs(Geometry g, int n);

struct ExampleSpec {
  int id = 1;
  int n = 3;
  Geometry geometry = Geometry::chain;
  std::map<std::string, double> params;  // overrides on top of the defaults

  double get(const std::string& key) const;
};

// Parameter names and defaults for an example; unknown ids throw.
std::map<std::string, double> default_params(int id);
std::string example_title(int id);
// Default spec with id and size filled in.
ExampleSpec example_spec(int id, int n = 3);

// Models:
//  1  Σ J S_i·S_j − B Σ Sˣ,            L = √γ S⁻
//  2  Σ J (rSʸ+Sᶻ)(rSʸ+Sᶻ) − B Σ Sˣ,   L = √γ S⁻
//  3  spinless fermions −t hop + V nn + μ n,  L = √γ₋ c, √γ₊ c†
//  4  t–J on {|0⟩,|↓⟩,|↑⟩}: −t hop + J(S·S − nn/4) − BₓSˣ − B_zSᶻ,  L = √γ S⁻
//  5  Hubbard −t hop + U n↑n↓ + V nn − BₓSˣ − B_zSᶻ, four channels γ_{±σ}
//  6  hard-core bosons −t hop + V nn + μ n,  L = √γ₋ b, √γ₊ b†
LatticeModel build_example(const ExampleSpec& spec);

// Closed-form reference values at the example parameters. Fields that do not
// apply to an example are left empty.
struct ExpectedValues {
  std::optional<Matrix> rho_loc;
  std::optional<double> n_ss;
  std::optional<Eigen::Vector3d> m_ss;
  std::vector<cplx> lie_eigenvalues;     // example 1: {−γ/2, λ₊, λ₋}
  std::optional<double> threshold_b;     // example 2: B = rγ/2
  std::optional<bool> iid_exists;
  std::map<std::string, cplx> r_params;  // example 5: r11, r22, r33, r44, r23
  std::optional<double> constraint;      // example 5: r11 r44 − r22 r33 + |r23|²
  std::vector<std::string> notes;
};

ExpectedValues expected_values(const ExampleSpec& spec);

// Example 5 parametrization: r-values of a number-diagonal d = 4 state.
std::map<std::string, cplx> hubbard_r_params(const Matrix& rho);
double hubbard_constraint(const Matrix& rho);

}  // namespace iid
