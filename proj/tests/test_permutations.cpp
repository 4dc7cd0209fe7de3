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
#include "iid/models.hpp"
#include "iid/permutations.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace iid;
using iid::test::max_abs;

namespace {

Matrix global_annihilator(const LocalSpace& space, int site, int mode, int n) {
  return embed_sites(space.annihilator(mode), {site}, n, space);
}

// 1 − (a_0† − a_1†)(a_0 − a_1) for one mode.
Matrix exchange_factor(const LocalSpace& space, int mode) {
  const Matrix a = global_annihilator(space, 0, mode, 2) - global_annihilator(space, 1, mode, 2);
  return identity(a.rows()) - a.adjoint() * a;
}

std::vector<Matrix> random_products(int n, int d, int count, const LocalSpace* sector = nullptr) {
  std::vector<Matrix> out;
  for (int k = 0; k < count; ++k)
    out.push_back(tensor_power(sector ? test::random_sector_density(*sector) : test::random_density(d), n));
  return out;
}

}  // namespace

TEST_CASE("identity permutation") {
  for (const LocalSpace& sp : {LocalSpace::spin(2), LocalSpace::spinful_fermion(), LocalSpace::hardcore_boson()}) {
    const PermutationOperator p = permutation_operator({0, 1, 2}, 3, sp);
    CHECK(max_abs(p.matrix - identity(p.matrix.rows())) == 0.0);
  }
  CHECK_THROWS_AS(permutation_operator({0, 0, 1}, 3, LocalSpace::spin(2)), InvalidPermutation);
}

TEST_CASE("explicit exchange forms of the swap") {
  const LocalSpace f = LocalSpace::spinless_fermion();
  CHECK(max_abs(transposition_matrix(0, 1, 2, f) - exchange_factor(f, 0)) < 1e-14);

  const LocalSpace b = LocalSpace::hardcore_boson();
  const Matrix n0 = embed_local(b.number_operator(), 0, 2, 2), n1 = embed_local(b.number_operator(), 1, 2, 2);
  CHECK(max_abs(transposition_matrix(0, 1, 2, b) - (exchange_factor(b, 0) + 2.0 * n0 * n1)) < 1e-14);

  const LocalSpace s = LocalSpace::spinful_fermion();
  const Matrix p4 = exchange_factor(s, 0) * exchange_factor(s, 1);
  CHECK(max_abs(transposition_matrix(0, 1, 2, s) - p4) < 1e-14);

  // Without double occupancy the swap is the restriction of the spinful one.
  const LocalSpace t = LocalSpace::no_double_occupancy();
  const Matrix p3 = transposition_matrix(0, 1, 2, t);
  for (int a = 0; a < 9; ++a)
    for (int c = 0; c < 9; ++c) CHECK(std::abs(p3(a, c) - p4((a / 3) * 4 + a % 3, (c / 3) * 4 + c % 3)) < 1e-14);

  const Matrix ps = transposition_matrix(0, 1, 2, LocalSpace::spin(2));
  CHECK(max_abs(ps - (2.0 * ops::heisenberg_pair() + 0.5 * identity(4))) < 1e-15);
}

TEST_CASE("partial traces of the swap") {
  for (const LocalSpace& sp : {LocalSpace::spin(2), LocalSpace::spin(3), LocalSpace::hardcore_boson()})
    CHECK(max_abs(partial_trace(transposition_matrix(0, 1, 2, sp), {1}, 2, sp.dim) - identity(sp.dim)) == 0.0);
  for (const LocalSpace& sp : {LocalSpace::spinless_fermion(), LocalSpace::spinful_fermion(), LocalSpace::no_double_occupancy()}) {
    CHECK(max_abs(partial_trace(transposition_matrix(0, 1, 2, sp), {1}, 2, sp.dim) - sp.parity_operator()) == 0.0);
    CHECK(max_abs(partial_trace(transposition_matrix(0, 1, 2, sp), {0}, 2, sp.dim) - sp.parity_operator()) == 0.0);
  }
}

TEST_CASE("conjugation law and unitarity") {
  for (const LocalSpace& sp : {LocalSpace::spin(2), LocalSpace::spin(3), LocalSpace::spinless_fermion(),
                               LocalSpace::spinful_fermion(), LocalSpace::hardcore_boson()}) {
    const int n = 3;
    for (const Permutation& sigma : all_permutations(n)) {
      const Matrix p = permutation_operator(sigma, n, sp).matrix;
      CHECK(max_abs(p.adjoint() * p - identity(p.rows())) < 1e-12);
      const Matrix pinv = permutation_operator(inverse(sigma), n, sp).matrix;
      CHECK(max_abs(p.adjoint() - pinv) < 1e-12);
      for (int i = 0; i < n; ++i) {
        Matrix x = test::random_matrix(sp.dim, sp.dim);
        if (sp.fermionic())  // parity-even part
          for (int a = 0; a < sp.dim; ++a)
            for (int b = 0; b < sp.dim; ++b)
              if (sp.parity(a) != sp.parity(b)) x(a, b) = 0.0;
        const Matrix xi = embed_sites(x, {i}, n, sp), xs = embed_sites(x, {sigma[i]}, n, sp);
        CHECK(max_abs(p * xi * p.adjoint() - xs) < 1e-12);
        if (sp.fermionic()) {
          const Matrix ci = global_annihilator(sp, i, 0, n), cs = global_annihilator(sp, sigma[i], 0, n);
          CHECK(max_abs(p * ci * p.adjoint() - cs) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("group law and decomposition independence") {
  for (const LocalSpace& sp : {LocalSpace::spin(2), LocalSpace::spinless_fermion(), LocalSpace::spinful_fermion()}) {
    const int n = 3;
    const auto perms = all_permutations(n);
    for (const auto& a : perms)
      for (const auto& b : perms) {
        const Matrix lhs = permutation_operator(a, n, sp).matrix * permutation_operator(b, n, sp).matrix;
        const Matrix rhs = permutation_operator(compose(a, b), n, sp).matrix;
        if (sp.fermionic()) CHECK(std::min(max_abs(lhs - rhs), max_abs(lhs + rhs)) < 1e-12);
        else CHECK(max_abs(lhs - rhs) < 1e-12);
      }
    // Random words of transpositions against the canonical decomposition.
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<Transposition> word;
      Permutation s{0, 1, 2};
      const int len = 1 + rep % 5;
      for (int k = 0; k < len; ++k) {
        const int i = static_cast<int>(test::rng()() % 3);
        const int j = (i + 1 + static_cast<int>(test::rng()() % 2)) % 3;
        word.emplace_back(std::min(i, j), std::max(i, j));
        Permutation t{0, 1, 2};
        std::swap(t[i], t[j]);
        s = compose(t, s);
      }
      CHECK(max_abs(product_of_transpositions(word, n, sp) - permutation_operator(s, n, sp).matrix) < 1e-12);
    }
  }
}

TEST_CASE("symmetrize") {
  const LocalSpace sp = LocalSpace::spin(2);
  const Matrix heis = ops::heisenberg_pair();
  CHECK(max_abs(symmetrize(heis, 2, sp) - heis) < 1e-14);
  const Matrix z0 = embed_local(ops::pauli_z(), 0, 2, 2), z1 = embed_local(ops::pauli_z(), 1, 2, 2);
  CHECK(max_abs(symmetrize(z0, 2, sp) - 0.5 * (z0 + z1)) < 1e-14);
  const Matrix x = test::random_matrix(8, 8);
  const Matrix s1 = symmetrize(x, 3, sp);
  CHECK(max_abs(symmetrize(s1, 3, sp) - s1) < 1e-13);
  for (const auto& sigma : all_permutations(3)) {
    const Matrix p = permutation_operator(sigma, 3, sp).matrix;
    CHECK(max_abs(commutator(p, s1)) < 1e-13);
  }
  Caps caps;
  caps.perm_sites = 2;
  CHECK_THROWS_AS(symmetrize(x, 3, sp, caps), CapExceeded);
}

TEST_CASE("B_com ranks") {
  CHECK(bcom_basis(2, LocalSpace::spin(2)).rank == 2);
  CHECK(bcom_basis(3, LocalSpace::spin(2)).rank == 5);
  const LocalSpace f = LocalSpace::spinless_fermion();
  const int brute = commutant_dimension(random_products(2, 2, 8, &f), 4);
  CHECK(bcom_basis(2, f).rank == brute);
  const LocalSpace hub = LocalSpace::spinful_fermion();
  CHECK(bcom_basis(2, hub).rank == commutant_dimension(random_products(2, 4, 32, &hub), 16));
}

TEST_CASE("B_com membership") {
  const LocalSpace sp = LocalSpace::spin(2);
  const BcomBasis b3 = bcom_basis(3, sp);
  Matrix x = Matrix::Zero(8, 8);
  const double js[3] = {0.7, -1.1, 0.4};
  int k = 0;
  for (const auto& [i, j] : geometry_pairs(Geometry::all, 3)) {
    x += js[k++] * (2.0 * embed_sites(ops::heisenberg_pair(), {i, j}, 3, sp) + 0.5 * identity(8));
  }
  const Membership m = bcom_membership(x, b3);
  CHECK(m.member);
  CHECK(m.residual < 1e-12);

  const Matrix a = ops::spin_y() + ops::spin_z();
  CHECK_FALSE(bcom_membership(kron(a, a), bcom_basis(2, sp)).member);

  const LocalSpace hub = LocalSpace::spinful_fermion();
  const Membership hop = bcom_membership(ops::pair_hopping(hub), bcom_basis(2, hub));
  CHECK_FALSE(hop.member);
  CHECK(hop.residual > 1e-3);
  // The on-site repulsion and density-density pieces are members.
  const Matrix cu = hub.annihilator(0), cd = hub.annihilator(1);
  const Matrix u = kron(Matrix(cu.adjoint() * cu * cd.adjoint() * cd), identity(4));
  CHECK(bcom_membership(u + ops::pair_density(hub), bcom_basis(2, hub)).member);
}

TEST_CASE("commutant dimensions") {
  CHECK(commutant_dimension(random_products(3, 2, 8), 8) == 5);
  CHECK(commutant_dimension({identity(4)}, 4) == 16);
  CHECK(commutant_dimension(random_products(2, 3, 18), 9) == 2);
}

TEST_CASE("Schur-Weyl: commutant dimension equals the Gram rank of the permutations") {
  for (const auto& [d, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}}) {
    const long long dim = ipow(d, n);
    const int brute = commutant_dimension(random_products(n, d, 2 * d * d), dim);
    CHECK(brute == bcom_basis(n, LocalSpace::spin(d)).rank);
  }
}
