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
#include "iid/checker.hpp"
#include "iid/models.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace iid;
using iid::test::max_abs;

namespace {

double expect(const Matrix& rho, const Matrix& op) { return (rho * op).trace().real(); }

}  // namespace

TEST_CASE("spin operators") {
  CHECK(max_abs(commutator(ops::spin_x(), ops::spin_y()) - I_ * ops::spin_z()) < 1e-15);
  CHECK(max_abs(ops::spin_minus() - (ops::spin_x() - I_ * ops::spin_y())) < 1e-15);
  CHECK(std::abs(ops::spin_minus()(1, 0) - 1.0) < 1e-15);
  for (const LocalSpace& sp : {LocalSpace::spinful_fermion(), LocalSpace::no_double_occupancy()}) {
    const Matrix sx = ops::fermion_spin_x(sp), sy = ops::fermion_spin_y(sp), sz = ops::fermion_spin_z(sp);
    CHECK(max_abs(commutator(sx, sy) - I_ * sz) < 1e-15);
    CHECK(max_abs(ops::fermion_spin_minus(sp) - (sx - I_ * sy)) < 1e-15);
  }
  CHECK_THROWS(ops::fermion_spin_x(LocalSpace::spinless_fermion()));
}

TEST_CASE("geometries") {
  CHECK(geometry_pairs(Geometry::chain, 4).size() == 3);
  CHECK(geometry_pairs(Geometry::ring, 4).size() == 4);
  CHECK(geometry_pairs(Geometry::ring, 2).size() == 1);
  CHECK(geometry_pairs(Geometry::all, 4).size() == 6);
  CHECK(geometry_from_string("ring") == Geometry::ring);
  CHECK_THROWS_AS(geometry_from_string("torus"), InvalidParams);
}

TEST_CASE("parameter validation") {
  ExampleSpec s = example_spec(1, 3);
  s.params["gama"] = 1.0;
  CHECK_THROWS_AS(build_example(s), InvalidParams);
  s.params = {{"gamma", -1.0}};
  CHECK_THROWS_AS(build_example(s), InvalidParams);
  s.params = {{"B", std::nan("")}};
  CHECK_THROWS_AS(build_example(s), InvalidParams);
  ExampleSpec t = example_spec(4, 2);
  t.params["r"] = 1.5;
  CHECK_THROWS_AS(build_example(t), InvalidParams);
  CHECK_THROWS_AS(example_spec(7, 2), InvalidParams);
}

TEST_CASE("example 1 over random parameters") {
  for (int k = 0; k < 5; ++k) {
    ExampleSpec s = example_spec(1, 3);
    s.params = {{"J", test::uniform(-2, 2)}, {"B", test::uniform(0.1, 2)}, {"gamma", test::uniform(0.2, 3)}};
    const LatticeModel m = build_example(s);
    const ExpectedValues e = expected_values(s);
    const Matrix rho = meanfield_steady_state(m).state.rho;
    CHECK(max_abs(rho - *e.rho_loc) < 1e-12);
    CHECK(verify_iid(m, rho) < 1e-10);
    const Eigen::Vector3d mag = 3.0 * Eigen::Vector3d(expect(rho, ops::spin_x()), expect(rho, ops::spin_y()),
                                                      expect(rho, ops::spin_z()));
    CHECK((mag - *e.m_ss).norm() < 1e-12);
  }
}

TEST_CASE("example 4 family over random parameters") {
  for (int k = 0; k < 5; ++k) {
    ExampleSpec s = example_spec(4, 3);
    s.params = {{"t", test::uniform(-1, 1)}, {"J", test::uniform(-1, 1)}, {"Bx", test::uniform(-1, 1)},
                {"Bz", test::uniform(-1, 1)}, {"gamma", test::uniform(0.1, 2)}, {"r", test::uniform(0, 1)}};
    const LatticeModel m = build_example(s);
    const ExpectedValues e = expected_values(s);
    CHECK(verify_iid(m, *e.rho_loc) < 1e-10);
    const LocalSpace sp = m.space();
    const Matrix& rho = *e.rho_loc;
    CHECK(std::abs(3.0 * expect(rho, sp.number_operator()) - *e.n_ss) < 1e-12);
    const Eigen::Vector3d mag = 3.0 * Eigen::Vector3d(expect(rho, ops::fermion_spin_x(sp)),
                                                      expect(rho, ops::fermion_spin_y(sp)),
                                                      expect(rho, ops::fermion_spin_z(sp)));
    CHECK((mag - *e.m_ss).norm() < 1e-12);
  }
}

TEST_CASE("example 5 over random parameters") {
  for (int k = 0; k < 5; ++k) {
    ExampleSpec s = example_spec(5, 2);
    s.params = {{"t", test::uniform(-1, 1)},          {"U", test::uniform(0, 4)},
                {"V", test::uniform(-1, 1)},          {"Bx", test::uniform(-1, 1)},
                {"Bz", test::uniform(-1, 1)},         {"gamma_plus_up", test::uniform(0.1, 1)},
                {"gamma_plus_dn", test::uniform(0.1, 1)}, {"gamma_minus_up", test::uniform(0.1, 1)},
                {"gamma_minus_dn", test::uniform(0.1, 1)}};
    const LatticeModel m = build_example(s);
    const ExpectedValues e = expected_values(s);
    const Matrix rho = meanfield_steady_state(m).state.rho;
    CHECK(std::abs(hubbard_constraint(rho)) < 1e-12);
    CHECK(max_abs(rho - *e.rho_loc) < 1e-12);
    const LocalSpace sp = m.space();
    CHECK(std::abs(2.0 * expect(rho, sp.number_operator()) - *e.n_ss) < 1e-10);
    const Eigen::Vector3d mag = 2.0 * Eigen::Vector3d(expect(rho, ops::fermion_spin_x(sp)),
                                                      expect(rho, ops::fermion_spin_y(sp)),
                                                      expect(rho, ops::fermion_spin_z(sp)));
    CHECK((mag - *e.m_ss).norm() < 1e-10);
    CHECK(verify_iid(m, rho) < 1e-10);
  }
}

TEST_CASE("example 3 and 6 populations") {
  for (int id : {3, 6}) {
    ExampleSpec s = example_spec(id, 3);
    s.params = {{"gamma_minus", test::uniform(0.1, 2)}, {"gamma_plus", test::uniform(0.1, 2)},
                {"t", test::uniform(-1, 1)}, {"V", test::uniform(-1, 1)}};
    const LatticeModel m = build_example(s);
    const ExpectedValues e = expected_values(s);
    CHECK(verify_iid(m, *e.rho_loc) < 1e-10);
    CHECK(std::abs(3.0 * expect(*e.rho_loc, m.space().number_operator()) - *e.n_ss) < 1e-14);
  }
}

TEST_CASE("hopping of hard-core bosons and spinless fermions lies in B_com") {
  for (const LocalSpace& sp : {LocalSpace::hardcore_boson(), LocalSpace::spinless_fermion()}) {
    const Membership m = bcom_membership(ops::pair_hopping(sp), bcom_basis(2, sp));
    CHECK(m.member);
  }
  CHECK(check_theorem8(build_example(example_spec(6, 3))).overall);
  CHECK(check_theorem5(build_example(example_spec(6, 3))).overall);
}

TEST_CASE("zero rates are dropped") {
  ExampleSpec s = example_spec(3, 2);
  s.params = {{"gamma_plus", 0.0}};
  CHECK(build_example(s).lindblads().size() == 2);
  CHECK(build_example(example_spec(3, 2)).lindblads().size() == 4);
}
