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
#include "iid/models.hpp"
#include "iid/permutations.hpp"
#include "iid/steady.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace iid;
using iid::test::max_abs;

namespace {

LatticeModel random_model(int n, const LocalSpace& space, bool all_pairs = true) {
  const int d = space.dim;
  LatticeModel m(n, space, "random");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (all_pairs || j == i + 1) m.add_two_site(i, j, test::random_hermitian(d * d));
  for (int i = 0; i < n; ++i) m.add_one_site(i, test::random_hermitian(d));
  return m;
}

// Random parity-even, number-conserving pair term for fermions.
Matrix random_number_conserving_pair(const LocalSpace& space) {
  const int d = space.dim;
  Matrix h = test::random_hermitian(d * d);
  for (int a = 0; a < d * d; ++a)
    for (int b = 0; b < d * d; ++b) {
      const int na = space.occupation[a / d] + space.occupation[a % d];
      const int nb = space.occupation[b / d] + space.occupation[b % d];
      if (na != nb) h(a, b) = 0.0;
    }
  return h;
}

}  // namespace

TEST_CASE("extract_irreducible_pair examples") {
  const LocalSpace spin = LocalSpace::spin(2);
  const Matrix p = transposition_matrix(0, 1, 2, spin);
  CHECK(max_abs(extract_irreducible_pair(p, 0, 1, 2, 2) - (p - 0.5 * identity(4))) < 1e-15);
  CHECK(max_abs(extract_irreducible_pair(identity(4), 0, 1, 2, 2)) < 1e-15);
  CHECK(max_abs(extract_irreducible_pair(embed_local(ops::pauli_z(), 0, 2, 2), 0, 1, 2, 2)) < 1e-15);
}

TEST_CASE("extract_local examples") {
  const double b = 0.7;
  const Matrix x = ops::pauli_x();
  CHECK(max_abs(extract_local(b * embed_local(x, 0, 2, 2), 0, 2, 2) - b * x) < 1e-15);
  CHECK(max_abs(extract_local(transposition_matrix(0, 1, 2, LocalSpace::spin(2)), 0, 2, 2)) < 1e-15);
  CHECK(max_abs(extract_local(identity(8), 1, 3, 2)) < 1e-15);
}

TEST_CASE("decomposition pieces are traceless and reassemble the Hamiltonian") {
  for (const LocalSpace& space : {LocalSpace::spin(2), LocalSpace::spin(3)}) {
    const LatticeModel m = random_model(3, space);
    const HamiltonianDecomposition dec = decompose(m);
    const int d = space.dim;
    for (const auto& [pair, h] : dec.pair) {
      CHECK(max_abs(partial_trace(h, {0}, 2, d)) < 1e-12);
      CHECK(max_abs(partial_trace(h, {1}, 2, d)) < 1e-12);
    }
    for (const Matrix& h : dec.local) CHECK(std::abs(h.trace()) < 1e-12);
    const Matrix h = global_hamiltonian(m);
    CHECK(max_abs(reassemble(dec, 3, space) - h) < 1e-12);

    // Term-list and partial-trace routes agree.
    const HamiltonianDecomposition g = decompose_global(h, 3, d);
    CHECK(std::abs(g.constant - dec.constant) < 1e-12);
    for (const auto& [pair, hp] : dec.pair) CHECK(max_abs(g.pair.at(pair) - hp) < 1e-12);
    for (int i = 0; i < 3; ++i) CHECK(max_abs(g.local[i] - dec.local[i]) < 1e-12);
  }
}

TEST_CASE("fermionic term lists agree with the Jordan-Wigner global operators") {
  for (const LocalSpace& space : {LocalSpace::spinless_fermion(), LocalSpace::spinful_fermion()}) {
    const int n = space.dim == 2 ? 4 : 3;
    LatticeModel m(n, space, "fermions");
    m.add_two_site(0, n - 1, random_number_conserving_pair(space));
    m.add_two_site(0, 1, random_number_conserving_pair(space));
    m.add_one_site(1, test::random_hermitian(space.dim).cwiseProduct(identity(space.dim)));
    const Matrix h = global_hamiltonian(m);

    // Independent construction of the long-range hopping from global c's.
    Matrix hop = Matrix::Zero(h.rows(), h.cols());
    for (int mode = 0; mode < space.modes(); ++mode) {
      const Matrix c0 = embed_sites(space.annihilator(mode), {0}, n, space);
      const Matrix cl = embed_sites(space.annihilator(mode), {n - 1}, n, space);
      hop += c0.adjoint() * cl + cl.adjoint() * c0;
    }
    LatticeModel only(n, space, "hop");
    only.add_two_site(0, n - 1, ops::pair_hopping(space));
    CHECK(max_abs(global_hamiltonian(only) - hop) < 1e-14);

    const HamiltonianDecomposition dec = decompose(m);
    CHECK(max_abs(reassemble(dec, n, space) - h) < 1e-12);
  }
}

TEST_CASE("effective Hamiltonian") {
  LatticeModel m(1, LocalSpace::spin(2), "decay");
  const double g = 0.8;
  m.add_lindblad(0, "s-", ops::spin_minus(), g);
  Matrix expect = Matrix::Zero(2, 2);
  expect(0, 0) = -0.5 * I_ * g;
  CHECK(max_abs(effective_hamiltonian(m) - expect) < 1e-15);

  LatticeModel h(2, LocalSpace::spin(2), "closed");
  h.add_two_site(0, 1, ops::heisenberg_pair());
  CHECK(max_abs(effective_hamiltonian(h) - global_hamiltonian(h)) == 0.0);

  const LatticeModel ex1 = build_example(example_spec(1, 2));
  const Matrix heff = effective_hamiltonian(ex1);
  const Matrix anti = 0.5 * (heff - heff.adjoint());
  const Matrix up = ops::spin_plus() * ops::spin_minus();
  const Matrix expected = -0.5 * I_ * 2.0 * (embed_local(up, 0, 2, 2) + embed_local(up, 1, 2, 2));
  CHECK(max_abs(anti - expected) < 1e-14);
  CHECK(max_abs(0.5 * (heff + heff.adjoint()) - global_hamiltonian(ex1)) < 1e-14);
}

TEST_CASE("apply_dissipator examples") {
  const Matrix sm = ops::spin_minus();
  Matrix up = Matrix::Zero(2, 2), dn = Matrix::Zero(2, 2);
  up(0, 0) = 1;
  dn(1, 1) = 1;
  CHECK(max_abs(apply_dissipator(sm, up) - (dn - up)) < 1e-15);
  CHECK(max_abs(apply_dissipator(identity(2), test::random_density(2))) < 1e-15);
  CHECK(max_abs(apply_dissipator(sm, dn)) < 1e-15);
  const Matrix r = test::random_matrix(3, 3);
  CHECK(std::abs(apply_dissipator(test::random_matrix(3, 3), r).trace()) < 1e-13);
}

TEST_CASE("single-site Lindbladian of the driven decay model") {
  const double b = 1.0, g = 2.0;
  const LatticeModel m = build_example(example_spec(1, 3));
  const Matrix sx = ops::spin_x(), sm = ops::spin_minus();
  const Superoperator expect = [&](const Matrix& r) {
    return Matrix(I_ * b * commutator(sx, r) + g * apply_dissipator(sm, r));
  };
  CHECK(max_abs(single_site_generator(m, 1) - vectorize_superoperator(expect, 2)) < 1e-14);
  const Matrix r = test::random_matrix(2, 2);
  CHECK(max_abs(single_site_lindbladian(m, 0)(r) - expect(r)) < 1e-14);

  LatticeModel perm(3, LocalSpace::spin(2), "permutations");
  for (const auto& [i, j] : geometry_pairs(Geometry::all, 3)) perm.add_two_site(i, j, 0.9 * transposition_matrix(0, 1, 2, LocalSpace::spin(2)));
  for (int i = 0; i < 3; ++i) CHECK(max_abs(single_site_generator(perm, i)) < 1e-15);
}

TEST_CASE("single-site Lindbladian of the Hubbard model under superselection") {
  const LatticeModel m = build_example(example_spec(5, 2));
  const LocalSpace& sp = m.space();
  // The U and V shadows act as commutators with functions of n, which vanish
  // on number-diagonal states; only the field and the channels remain.
  const Matrix r = test::random_sector_density(sp);
  LatticeModel reduced(2, sp, "reduced");
  for (int i = 0; i < 2; ++i) {
    reduced.add_one_site(i, -0.6 * ops::fermion_spin_x(sp) - 0.35 * ops::fermion_spin_z(sp));
    for (const auto* l : m.lindblads_at(i)) reduced.add_lindblad(i, l->label, l->raw, l->rate);
  }
  CHECK(max_abs(single_site_lindbladian(m, 0)(r) - single_site_lindbladian(reduced, 0)(r)) < 1e-13);
}

TEST_CASE("apply_lindbladian examples and invariants") {
  ExampleSpec spec = example_spec(1, 2);
  spec.params = {{"B", 1.0}, {"gamma", 2.0}};
  const LatticeModel ex1 = build_example(spec);
  const Matrix rho = *expected_values(spec).rho_loc;
  CHECK(apply_lindbladian(ex1, tensor_power(rho, 2)).norm() < 1e-12);

  LatticeModel zero(2, LocalSpace::spin(2), "zero");
  CHECK(max_abs(apply_lindbladian(zero, test::random_density(4))) == 0.0);

  LatticeModel unital(2, LocalSpace::spin(2), "unital");
  unital.add_two_site(0, 1, test::random_hermitian(4));
  unital.add_lindblad(0, "z", ops::pauli_z(), 0.5);
  unital.add_lindblad(1, "x", ops::pauli_x(), 0.3);
  CHECK(max_abs(apply_lindbladian(unital, identity(4) / 4.0)) < 1e-15);

  for (int rep = 0; rep < 4; ++rep) {
    LatticeModel m = random_model(3, LocalSpace::spin(2), false);
    m.add_lindblad(0, "a", test::random_matrix(2, 2), 0.4);
    m.add_lindblad(2, "b", test::random_matrix(2, 2), 1.1);
    const Matrix r = test::random_density(8);
    const Matrix out = apply_lindbladian(m, r);
    CHECK(std::abs(out.trace()) < 1e-12);
    CHECK((vec(out) - lindbladian_matrix(m) * vec(r)).norm() < 1e-12);
    const Matrix x = test::random_matrix(8, 8);
    CHECK(max_abs(apply_lindbladian(m, x.adjoint()) - apply_lindbladian(m, x).adjoint()) < 1e-12);
  }
}

TEST_CASE("number-superselected models preserve [rho, N] = 0") {
  for (int id : {3, 5, 6}) {
    const LatticeModel m = build_example(example_spec(id, 2));
    const LocalSpace& sp = m.space();
    const Matrix ntot = embed_local(sp.number_operator(), 0, 2, sp.dim) + embed_local(sp.number_operator(), 1, 2, sp.dim);
    // Block-diagonal random state in total number.
    Matrix a = test::random_matrix(ntot.rows(), ntot.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        if (ntot(i, i) != ntot(j, j)) a(i, j) = 0.0;
    Matrix r = a * a.adjoint();
    r /= r.trace();
    CHECK(max_abs(commutator(r, ntot)) < 1e-13);
    CHECK(max_abs(commutator(apply_lindbladian(m, r), ntot)) < 1e-12);
  }
}

TEST_CASE("model validation") {
  LatticeModel m(2, LocalSpace::spin(2), "bad");
  CHECK_THROWS_AS(m.add_two_site(0, 0, identity(4)), InvalidDimension);
  CHECK_THROWS_AS(m.add_one_site(0, test::random_matrix(2, 2)), InvalidParams);
  CHECK_THROWS_AS(m.add_lindblad(0, "x", identity(2), -1.0), InvalidParams);
  const Matrix h = test::random_hermitian(4);
  m.add_two_site(1, 0, h);
  // Reordered pair keeps the same global operator.
  const Matrix p = transposition_matrix(0, 1, 2, LocalSpace::spin(2));
  CHECK(max_abs(global_hamiltonian(m) - p * h * p) < 1e-14);
  CHECK(m.lindblads().empty());
  LatticeModel rates(1, LocalSpace::spin(2), "rates");
  rates.add_lindblad(0, "x", ops::pauli_x(), 4.0);
  CHECK(max_abs(rates.lindblads()[0].op - 2.0 * ops::pauli_x()) < 1e-15);
}
