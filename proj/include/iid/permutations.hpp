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

#include <string>
#include <utility>
#include <vector>

namespace iid {

// sigma[i] = σ(i): the content of site i moves to site σ(i).
using Permutation = std::vector<int>;
using Transposition = std::pair<int, int>;

struct PermutationOperator {
  Permutation sigma;
  Matrix matrix;
  Statistics statistics = Statistics::spin;
};

void validate_permutation(const Permutation& sigma, int n);
Permutation compose(const Permutation& a, const Permutation& b);  // a∘b
Permutation inverse(const Permutation& sigma);

// Cycle decomposition written as transpositions in order of application.
std::vector<Transposition> canonical_transpositions(const Permutation& sigma);

// Single transposition with the fermionic sign
// (−1)^{n_i n_j + n_{i∼j}(n_i + n_j)} on occupation-basis states.
Matrix transposition_matrix(int i, int j, int n, const LocalSpace& space);
// Product over transpositions, first element applied first.
Matrix product_of_transpositions(const std::vector<Transposition>& ts, int n,
                                 const LocalSpace& space);

PermutationOperator permutation_operator(const Permutation& sigma, int n,
                                         const LocalSpace& space);

// All n! permutations in lexicographic order.
std::vector<Permutation> all_permutations(int n, const Caps& caps = Caps::from_env());

// (1/n!) Σ_σ P_σ X P_σ†.
Matrix symmetrize(const Matrix& x, int n, const LocalSpace& space,
                  const Caps& caps = Caps::from_env());

struct BcomBasis {
  int n = 0;
  LocalSpace space;
  std::vector<Matrix> generators;
  std::vector<std::string> labels;
  Matrix gram;
  int rank = 0;
  Matrix orthonormal;  // columns: orthonormal basis of span(vec(generators))
};

// Generators P_σ (spin, or no superselection) or Π_i n̂_i^{k_i}·P_σ with
// 0 ≤ k_i ≤ n_max under number superselection.
BcomBasis bcom_basis(int n, const LocalSpace& space, const Caps& caps = Caps::from_env(),
                     double tol = 1e-10);

struct Membership {
  bool member = false;
  double residual = 0.0;  // ‖X − proj X‖ / ‖X‖
};

Membership bcom_membership(const Matrix& x, const BcomBasis& basis, double tol = 1e-10);

// Projection of vec(X) onto the span of the given columns (orthonormalized
// internally); returns the relative residual.
double span_residual(const Matrix& x, const Matrix& orthonormal_columns);
Matrix orthonormal_span(const std::vector<Matrix>& family, double tol = 1e-10);

// dim {Y : [Y, X] = 0 for all X in family}.
int commutant_dimension(const std::vector<Matrix>& family, Eigen::Index dim,
                        const Caps& caps = Caps::from_env(), double tol = 1e-10);

}  // namespace iid
