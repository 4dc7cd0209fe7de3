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
#include "iid/steady.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace iid;
using iid::test::max_abs;

namespace {

LatticeModel example(int id, int n, std::map<std::string, double> params = {}) {
  ExampleSpec spec = example_spec(id, n);
  spec.params = std::move(params);
  return build_example(spec);
}

}  // namespace

TEST_CASE("LocalState validation") {
  const LocalState s = LocalState::from(Matrix(Eigen::Vector2cd(0.25, 0.75).asDiagonal()));
  CHECK(s.rank == 2);
  CHECK(s.eigenvalues(0) == doctest::Approx(0.75));
  CHECK(max_abs(s.projector - identity(2)) < 1e-14);
  const LocalState pure = LocalState::from(Matrix(Eigen::Vector2cd(0.0, 1.0).asDiagonal()));
  CHECK(pure.rank == 1);
  CHECK(max_abs(pure.projector * pure.rho - pure.rho) < 1e-14);
  CHECK_THROWS_AS(LocalState::from(identity(2)), InvalidParams);
  Matrix nh = 0.5 * identity(2);
  nh(0, 1) = 0.3;
  CHECK_THROWS_AS(LocalState::from(nh), InvalidParams);
  CHECK_THROWS_AS(LocalState::from(Matrix(Eigen::Vector2cd(1.5, -0.5).asDiagonal())), InvalidParams);
}

TEST_CASE("kernel projector") {
  const Matrix g = single_site_generator(example(1, 3), 0);
  const Matrix e = kernel_projector(g);
  CHECK(max_abs(e * e - e) < 1e-10);
  CHECK(max_abs(g * e) < 1e-10);
  CHECK(max_abs(e * g) < 1e-10);
  CHECK(numerical_rank(e) == 1);
}

TEST_CASE("mean-field steady states of the examples") {
  const ExampleSpec s1 = example_spec(1, 3);
  const MeanFieldSolution m1 = meanfield_steady_state(build_example(s1));
  Matrix golden(2, 2);
  golden << 1.0 / 6, 2.0 * I_ / 6.0, -2.0 * I_ / 6.0, 5.0 / 6;
  CHECK(max_abs(m1.state.rho - golden) < 1e-12);
  CHECK(m1.null_dim == 1);
  CHECK(m1.residual < 1e-12);

  for (int id : {2, 3, 6}) {
    const ExampleSpec s = example_spec(id, 3);
    const MeanFieldSolution m = meanfield_steady_state(build_example(s));
    CHECK(max_abs(m.state.rho - *expected_values(s).rho_loc) < 1e-12);
  }
  const ExampleSpec s5 = example_spec(5, 2);
  const MeanFieldSolution m5 = meanfield_steady_state(build_example(s5));
  CHECK(max_abs(m5.state.rho - *expected_values(s5).rho_loc) < 1e-12);
  CHECK(std::abs(hubbard_constraint(m5.state.rho)) < 1e-12);

  // t–J: a one-parameter family; the representative has full support.
  const MeanFieldSolution m4 = meanfield_steady_state(example(4, 3));
  CHECK(m4.null_dim == 2);
  CHECK(m4.family.size() == 2);
  CHECK(m4.state.rank >= 2);
}

TEST_CASE("full steady states") {
  const ExampleSpec s1 = example_spec(1, 3);
  const LatticeModel ex1 = build_example(s1);
  const SteadyStateResult r1 = full_steady_states(ex1, LocalState::from(*expected_values(s1).rho_loc));
  CHECK(r1.dimension == 1);
  CHECK(r1.unique_in_oracle);
  CHECK(*r1.iid_projection_residual < 1e-8);
  CHECK(r1.residual < 1e-10);

  for (double r : {0.0, 0.5, 1.0}) {
    ExampleSpec s4 = example_spec(4, 2);
    s4.params["r"] = r;
    const Matrix rho = *expected_values(s4).rho_loc;
    const LatticeModel m = build_example(s4);
    CHECK(verify_iid(m, rho) < 1e-10);
    const SteadyStateResult full = full_steady_states(m, LocalState::from(rho));
    CHECK(full.dimension > 1);
    CHECK(*full.iid_projection_residual < 1e-8);
  }

  LatticeModel idle(2, LocalSpace::spin(2), "idle");
  CHECK(full_steady_states(idle).dimension == 16);

  Caps small;
  small.hilbert = 4;
  small.superop = 4;
  CHECK_THROWS_AS(full_steady_states(ex1, std::nullopt, small), CapExceeded);
}

TEST_CASE("verify_iid") {
  const ExampleSpec s1 = example_spec(1, 3);
  const LatticeModel ex1 = build_example(s1);
  const Matrix rho = *expected_values(s1).rho_loc;
  CHECK(verify_iid(ex1, rho) < 1e-12);
  Matrix off = rho;
  off(0, 0) += 0.05;
  off(1, 1) -= 0.05;
  CHECK(verify_iid(ex1, off) > 1e-3);
  CHECK_THROWS_AS(verify_iid(ex1, identity(3) / 3.0), InvalidDimension);
}

TEST_CASE("superselected fixed points stay in the number sector") {
  for (int id : {3, 5, 6}) {
    const LatticeModel m = example(id, 2);
    const Matrix rho = meanfield_steady_state(m).state.rho;
    const Matrix n = m.space().number_operator();
    CHECK(max_abs(commutator(rho, n)) < 1e-12);
  }
}
