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

#include "iid/checker.hpp"
#include "iid/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace iid {

// ---------------------------------------------------------------- evolution

// ρ(t_k) = e^{𝓛 t_k} ρ0. Uniform grids precompute e^{𝓛Δt} and step.
std::vector<Matrix> evolve_full(const LatticeModel& model, const Matrix& rho0,
                                const std::vector<double>& times, const Caps& caps = Caps::from_env());
std::vector<Matrix> evolve_generator(const Matrix& generator, const Matrix& rho0,
                                     const std::vector<double>& times);

// ρ_loc(t) = e^{ℒ_0 t} ρ_loc0. Requires check_theorem8 unless `override_check`.
std::vector<Matrix> evolve_iid(const LatticeModel& model, const Matrix& rho_loc0,
                               const std::vector<double>& times, bool override_check = false,
                               const CheckOptions& opt = {});

// ‖ρ − (Tr_{rest} ρ)^{⊗n}‖₁ with the site-0 marginal; zero exactly on i.i.d. states.
double iid_distance(const Matrix& rho, int n, int d);

// Σ_i op_i on n sites (op must be parity-even for fermions).
Matrix uniform_sum(const Matrix& op, int n, int d);

// ---------------------------------------------------------------- spectrum

struct SpectrumReport {
  std::vector<cplx> eigenvalues;
  double spectral_gap = 0.0;     // −max Re λ over nonzero modes
  int zero_multiplicity = 0;
  bool purely_imaginary = false; // some nonzero mode with Re λ ≈ 0
  bool defective = false;
  double max_real = 0.0;
};

SpectrumReport spectrum(const LatticeModel& model, const Caps& caps = Caps::from_env());
SpectrumReport spectrum_of(const Matrix& generator);

// ---------------------------------------------------------------- fits

struct DecayFit {
  double rate = 0.0;
  double quality = 0.0;  // R² of the tail window
  int samples = 0;
};

// Tail slope of log|f|; needs ≥ 10 samples above 1e−13 spanning ≥ 3 e-foldings.
DecayFit decay_fit(const std::vector<double>& times, const std::vector<double>& values);

// Exponents λ of Σ_m p_m(t) e^{λ_m t} shared by every channel (uniform step dt),
// by a multi-channel matrix pencil. order = 0 picks the numerical rank.
std::vector<cplx> fit_exponents(double dt, const std::vector<std::vector<cplx>>& channels,
                                int order = 0, double rank_tol = 1e-9);

// ---------------------------------------------------------------- Lie-algebra picture

enum class LieMode { su, number };

struct LieBasis {
  std::vector<Matrix> elements;  // Hermitian, traceless, Tr[XᵅXᵝ] = δ
  std::vector<std::string> labels;
  LieMode mode = LieMode::su;
};

// Generalized Gell-Mann matrices / √2 (for d = 2: X, Y, Z over √2).
LieBasis lie_basis_su(int d);
// Orthonormal traceless Hermitian basis of the matrices commuting with n̂.
LieBasis lie_basis_number(const LocalSpace& space);
// 𝔫 under superselection, su(d) otherwise.
LieBasis default_lie_basis(const LocalSpace& space);

// ℒ_0†(Xᵅ) = Σ_β 𝔏_{αβ} Xᵝ + c_α I.
struct LieGenerator {
  RealMatrix frak;   // 𝔏_{αβ} = Tr[Xᵅ ℒ_0(Xᵝ)]
  RealVector offset; // c_α = Tr[Xᵅ ℒ_0(I)] / d
};

LieGenerator lie_generator(const LatticeModel& model, const LieBasis& basis, bool enforce = true,
                           const CheckOptions& opt = {});
RealMatrix lindblad_superop_on_lie(const LatticeModel& model, const LieBasis& basis,
                                   bool enforce = true, const CheckOptions& opt = {});

// ---------------------------------------------------------------- correlations

struct CorrelationSeries {
  std::vector<double> times;
  std::vector<Matrix> values;  // C_{αγ}(τ) per time
  std::vector<std::string> labels;
};

// C_{αγ}(t+τ, t) = Tr[𝕏ᵅ e^{𝓛τ}(𝕏ᵞ ρ_loc^{⊗n})], 𝕏ᵅ = Σ_i X_iᵅ, from
// single-site data only. `connected` subtracts ⟨𝕏ᵅ⟩_{t+τ}⟨𝕏ᵞ⟩_t.
CorrelationSeries correlate_analytic(const LatticeModel& model, const Matrix& rho_loc,
                                     const LieBasis& basis, const std::vector<double>& taus,
                                     bool connected = false, bool enforce = true,
                                     const CheckOptions& opt = {});

// Same quantity on the full space for arbitrary global operators:
// C_{ab}(τ) = Tr[A_a e^{𝓛τ}(B_b ρ_t)].
CorrelationSeries correlate_bruteforce(const LatticeModel& model, const Matrix& rho_t,
                                       const std::vector<Matrix>& as, const std::vector<Matrix>& bs,
                                       const std::vector<double>& taus, bool connected = false,
                                       const Caps& caps = Caps::from_env());
// Scalar form: evolves ρ0 to t first.
CorrelationSeries correlate_bruteforce(const LatticeModel& model, const Matrix& rho0, const Matrix& a,
                                       const Matrix& b, double t, const std::vector<double>& taus,
                                       const Caps& caps = Caps::from_env());
// Uniform sums of a Lie basis as global operators, labels carried over.
std::vector<Matrix> global_basis(const LieBasis& basis, int n, int d);

// ---------------------------------------------------------------- response

// φ(t_k, τ_m) = −2 Im Tr[B e^{𝓛(t_k−τ_m)}(A ρ(τ_m))] for m ≤ k (zero above),
// the linear response of ⟨B⟩ to H → H − ξ(t)A.
struct ResponseTable {
  std::vector<double> times;
  RealMatrix phi;
};

ResponseTable response_function(const LatticeModel& model, const Matrix& rho0, const Matrix& a,
                                const Matrix& b, const std::vector<double>& grid,
                                const Caps& caps = Caps::from_env());
// Uniform 1-local A = Σ a_i, B = Σ b_i under condition (II); a_loc, b_loc ∈ span{I, basis}.
ResponseTable response_function_iid(const LatticeModel& model, const Matrix& rho_loc0,
                                    const Matrix& a_loc, const Matrix& b_loc,
                                    const std::vector<double>& grid, const LieBasis& basis,
                                    const CheckOptions& opt = {});

struct Drive {
  enum class Kind { impulse, step };
  Kind kind = Kind::impulse;
  double amplitude = 1e-4;
  double t0 = 0.0;  // must lie on the grid
};

// δ⟨B⟩(t_k) = ∫ ξ(τ) φ(t_k, τ) dτ (trapezoid for steps).
std::vector<double> linear_response(const ResponseTable& table, const Drive& drive);
// Finite-difference oracle: perturbed minus unperturbed ⟨B⟩ on the grid.
std::vector<double> perturbed_response(const LatticeModel& model, const Matrix& rho0, const Matrix& a,
                                       const Matrix& b, const Drive& drive,
                                       const std::vector<double>& grid, const Caps& caps = Caps::from_env());

}  // namespace iid
