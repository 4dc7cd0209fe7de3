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

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace iid {

using cplx = std::complex<double>;

template <typename Scalar>
using MatrixT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixT<cplx>;
using Vector = VectorT<cplx>;
using RealMatrix = MatrixT<double>;
using RealVector = VectorT<double>;

inline constexpr cplx I_{0.0, 1.0};

// ---------------------------------------------------------------- errors

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidDimension : Error { using Error::Error; };
struct NonFinite : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };
struct InvalidPermutation : Error { using Error::Error; };
struct ConditionViolation : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };
struct NoPSDRepresentative : Error { using Error::Error; };
struct InsufficientDecay : Error { using Error::Error; };

struct CapExceeded : Error {
  CapExceeded(const std::string& what, long long requested, long long limit)
      : Error(what + ": requested " + std::to_string(requested) + ", limit " +
              std::to_string(limit)),
        requested(requested),
        limit(limit) {}
  long long requested;
  long long limit;
};

// ---------------------------------------------------------------- limits

// Dense-size limits. `hilbert` bounds d^n for directly applied operators,
// `superop` bounds d^(2n) for anything vectorized, `perm_sites` bounds full
// symmetric-group enumeration. IID_MAX_DIM raises hilbert and superop.
struct Caps {
  long long hilbert = 4096;
  long long superop = 4096;
  int perm_sites = 6;
  long long bcom_generators = 20000;

  static Caps from_env();
  void require_hilbert(long long dim) const;
  void require_superop(long long dim) const;
};

struct Tolerances {
  double structural = 1e-10;  // residual certificates
  double oracle = 1e-8;       // brute-force agreement
  double rank = 1e-10;        // eigenvalue / singular-value cutoff
};

long long ipow(long long base, int exp);

// ---------------------------------------------------------------- local space

enum class Statistics { spin, fermion, hardcore_boson, truncated_boson };

std::string to_string(Statistics s);
Statistics statistics_from_string(const std::string& s);

// Local Hilbert space. For particle statistics every basis state carries an
// occupation number; fermionic states additionally carry per-mode bits in
// the canonical mode order, which fixes the Jordan-Wigner signs.
struct LocalSpace {
  int dim = 2;
  Statistics statistics = Statistics::spin;
  bool superselection = false;
  int n_max = 0;
  std::vector<int> occupation;              // n̂ eigenvalue per basis state
  std::vector<std::vector<int>> mode_bits;  // fermions only

  static LocalSpace spin(int d);
  static LocalSpace spinless_fermion();
  static LocalSpace spinful_fermion();        // |0>, |dn>, |up>, |up dn>
  static LocalSpace no_double_occupancy();    // |0>, |dn>, |up>
  static LocalSpace hardcore_boson(bool superselection = true);
  static LocalSpace truncated_boson(int n_max);
  // Reconstruct from (dim, statistics) as in model files.
  static LocalSpace from_description(int dim, Statistics s, bool superselection);

  bool has_number() const { return statistics != Statistics::spin; }
  bool fermionic() const { return statistics == Statistics::fermion; }
  int modes() const { return mode_bits.empty() ? 0 : static_cast<int>(mode_bits[0].size()); }
  int parity(int state) const { return fermionic() ? (occupation[state] & 1) : 0; }

  Matrix number_operator() const;
  Matrix parity_operator() const;  // (-1)^n̂
  // Annihilator of internal mode s, including the intra-site sign.
  Matrix annihilator(int mode) const;

  void validate() const;
};

// ---------------------------------------------------------------- basics

inline Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

template <typename A, typename B>
Matrix kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return Eigen::kroneckerProduct(a.eval(), b.eval()).eval();
}

template <typename A, typename B>
Matrix commutator(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return a * b - b * a;
}

template <typename A, typename B>
Matrix anticommutator(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return a * b + b * a;
}

template <typename A>
double hermiticity_residual(const Eigen::MatrixBase<A>& a) {
  return (a - a.adjoint()).norm();
}

// rho^{⊗n}
Matrix tensor_power(const Matrix& rho, int n);

// Trace norm ‖X‖₁ (sum of singular values) and ½‖A − B‖₁.
double trace_norm(const Matrix& x);
double trace_distance(const Matrix& a, const Matrix& b);

void require_square(const Matrix& m, const char* what);
void require_finite(const Matrix& m, const char* what);

// ---------------------------------------------------------------- embedding

// I^{⊗site} ⊗ op ⊗ I^{⊗(n−site−1)}; site 0 is the leftmost factor.
Matrix embed_local(const Matrix& op, int site, int n, int d);

// Embed an operator given on the ascending site list `sites` (in the reduced
// basis of just those sites) into n sites. For fermions, Jordan-Wigner strings
// over sites outside the list are restored element-wise: a matrix element
// changing the parity of site s picks up (−1)^(particles on skipped sites < s).
Matrix embed_sites(const Matrix& op, const std::vector<int>& sites, int n,
                   const LocalSpace& space);

// Trace over all sites not in `keep`; the result is ordered by ascending site.
Matrix partial_trace(const Matrix& x, std::vector<int> keep, int n, int d);

// ---------------------------------------------------------------- superoperators

using Superoperator = std::function<Matrix(const Matrix&)>;

// Column stacking: vec(A ρ B) = (Bᵀ ⊗ A) vec(ρ).
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, Eigen::Index dim);
Matrix vectorize_superoperator(const Superoperator& apply, Eigen::Index dim);
// Matrix of ρ ↦ A ρ B.
Matrix sandwich_superop(const Matrix& a, const Matrix& b);

// ---------------------------------------------------------------- decompositions

// exp(t·M) via scaling and squaring with a Padé approximant.
Matrix matrix_exponential(const Matrix& m, double t = 1.0);

// Orthonormal columns spanning {v : singular value < tol·σ_max}.
Matrix null_space_basis(const Matrix& m, double tol = 1e-10);
int numerical_rank(const Matrix& m, double tol = 1e-10);

struct Eigensystem {
  Vector values;
  Matrix vectors;       // unit-norm right eigenvectors in columns
  double condition = 1; // condition number of `vectors`
  bool defective = false;
};

Eigensystem eigen_decomposition(const Matrix& m);

// Hermitian eigensystem, eigenvalues descending.
struct HermitianEigensystem {
  RealVector values;
  Matrix vectors;
};
HermitianEigensystem hermitian_eigen(const Matrix& m);

}  // namespace iid
