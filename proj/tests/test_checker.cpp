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

LatticeModel example(int id, int n, std::map<std::string, double> params = {}) {
  ExampleSpec spec = example_spec(id, n);
  spec.params = std::move(params);
  return build_example(spec);
}

LocalState basis_state(int d, int k) {
  Matrix rho = Matrix::Zero(d, d);
  rho(k, k) = 1.0;
  return LocalState::from(rho);
}

// Σ_{i<j} J P_ij on n spin-1/2 sites with the given Lindblad at every site.
LatticeModel swap_model(int n, double j, const Matrix& l, const std::string& label) {
  LatticeModel m(n, LocalSpace::spin(2), "swap");
  const Matrix p = 2.0 * ops::heisenberg_pair() + 0.5 * identity(4);
  for (const auto& [a, b] : geometry_pairs(Geometry::all, n)) m.add_two_site(a, b, j * p);
  if (l.size())
    for (int s = 0; s < n; ++s) m.add_lindblad(s, label, l);
  return m;
}

double span_distance(const Matrix& x, const std::vector<Matrix>& basis) {
  return span_residual(x, orthonormal_span(basis));
}

}  // namespace

TEST_CASE("condition (i)") {
  const LatticeModel ex1 = example(1, 3, {{"gamma", 1.0}});
  CHECK(check_condition_i(ex1, meanfield_steady_state(ex1).state).pass);
  CHECK(check_condition_i(ex1, basis_state(2, 1)).pass);
  const Verdict up = check_condition_i(ex1, basis_state(2, 0));
  CHECK_FALSE(up.pass);
  CHECK(up.residual == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("condition (ii)") {
  const LatticeModel ex1 = example(1, 3);
  CHECK(check_condition_ii(ex1, meanfield_steady_state(ex1).state).pass);
  const LatticeModel ex2 = example(2, 3);
  CHECK_FALSE(check_condition_ii(ex2, basis_state(2, 1)).pass);
  const LatticeModel deph = swap_model(3, 0.7, std::sqrt(0.9) * ops::pauli_z(), "Z");
  CHECK(check_condition_ii(deph, basis_state(2, 0)).pass);
}

TEST_CASE("condition (iii)") {
  const LatticeModel ex1 = example(1, 3);
  CHECK(check_condition_iii(ex1, meanfield_steady_state(ex1).state).pass);
  CHECK(check_condition_iii(example(2, 3, {{"B", 0.9}}), basis_state(2, 0)).pass);
  const LatticeModel stale = example(1, 3, {{"B", 1.1}});
  const Verdict v = check_condition_iii(stale, meanfield_steady_state(ex1).state);
  CHECK_FALSE(v.pass);
  CHECK(v.residual > 1e-3);
}

TEST_CASE("condition (iv)") {
  const LatticeModel ex1 = example(1, 3);
  for (int k = 0; k < 5; ++k) {
    const Verdict v = check_condition_iv(ex1, LocalState::from(test::random_density(2)));
    CHECK(v.pass);
    CHECK(v.residual < 1e-14);
  }
  const LatticeModel off = example(2, 3, {{"B", 0.8}});
  CHECK_FALSE(check_condition_iv(off, meanfield_steady_state(off).state).pass);
  const LatticeModel on = example(2, 3);  // B = rγ/2
  CHECK(check_condition_iv(on, meanfield_steady_state(on).state).pass);
}

TEST_CASE("Theorem 1") {
  const LatticeModel ex1 = example(1, 3);
  const CheckReport r1 = check_theorem1(ex1, meanfield_steady_state(ex1).state);
  CHECK(r1.overall);
  REQUIRE(r1.oracle_residual);
  CHECK(*r1.oracle_residual < 1e-10);
  CHECK(*r1.oracle_agrees);
  CHECK(r1.verdicts.size() == 4);

  const LatticeModel ex2 = example(2, 3, {{"B", 1.3}});
  const CheckReport r2 = check_theorem1(ex2, meanfield_steady_state(ex2).state);
  CHECK_FALSE(r2.overall);
  CHECK(*r2.oracle_residual > 1e-8);
  CHECK(*r2.oracle_agrees);

  const LatticeModel ex5 = example(5, 2);
  const CheckReport r5 = check_theorem1(ex5, meanfield_steady_state(ex5).state);
  CHECK(r5.overall);
  CHECK(*r5.oracle_agrees);
}

TEST_CASE("overall is the conjunction of the verdicts") {
  for (int id = 1; id <= 6; ++id) {
    const LatticeModel m = example(id, id == 5 ? 2 : 3, id == 2 ? std::map<std::string, double>{{"B", 1.7}}
                                                                : std::map<std::string, double>{});
    const CheckReport r = check_theorem1(m, meanfield_steady_state(m).state);
    bool all = true;
    for (const auto& [name, v] : r.verdicts) all = all && v.pass;
    CHECK(r.overall == all);
  }
}

TEST_CASE("Lemma 2") {
  const LatticeModel ex1 = example(1, 3);
  const CheckReport r1 = check_lemma2(ex1, meanfield_steady_state(ex1).state);
  CHECK(r1.overall);
  CHECK(r1.mode == "equivalence");

  const LatticeModel ex3 = example(3, 3);
  const ExpectedValues e3 = expected_values(example_spec(3, 3));
  REQUIRE(e3.rho_loc);
  const CheckReport r3 = check_lemma2(ex3, LocalState::from(*e3.rho_loc));
  CHECK(r3.overall);

  LatticeModel loss(3, LocalSpace::spin(2), "loss");
  for (int s = 0; s < 3; ++s) loss.add_lindblad(s, "S-", ops::spin_minus());
  const CheckReport rp = check_lemma2(loss, basis_state(2, 1));
  CHECK(rp.overall);
  CHECK(rp.mode == "sufficient-only");
}

TEST_CASE("Corollary 3") {
  const CheckReport generic = check_corollary3(example(2, 3, {{"B", 0.8}}));
  CHECK_FALSE(generic.overall);
  CHECK_FALSE(generic.find("case1")->pass);
  CHECK_FALSE(generic.find("case2")->pass);

  const ExampleSpec spec = example_spec(2, 3);
  const CheckReport at = check_corollary3(build_example(spec));
  CHECK(at.overall);
  CHECK(at.find("case2")->pass);
  REQUIRE_FALSE(at.witnesses.empty());
  CHECK(max_abs(at.witnesses.back() - *expected_values(spec).rho_loc) < 1e-10);

  LatticeModel loss(3, LocalSpace::spin(2), "loss");
  for (int s = 0; s < 3; ++s) loss.add_lindblad(s, "S-", ops::spin_minus());
  const CheckReport lr = check_corollary3(loss);
  CHECK(lr.overall);
  CHECK(lr.find("case1")->pass);
  REQUIRE_FALSE(lr.witnesses.empty());
  CHECK(std::abs(lr.witnesses.front()(1, 1) - 1.0) < 1e-12);

  CHECK_THROWS_AS(check_corollary3(example(4, 2)), InvalidDimension);
}

TEST_CASE("appendix matrix: closed form against the defining trace") {
  for (int k = 0; k < 10; ++k) {
    Eigen::Vector3d s(test::uniform(-1, 1), test::uniform(-1, 1), test::uniform(-1, 1));
    s *= test::uniform(0.05, 1.0) / s.norm();
    CHECK((appendix_matrix(s) - appendix_matrix_numeric(s)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("allowed pair terms for d = 2") {
  const double r = 1.3, g = 0.8, b = r * g / 2;
  const Eigen::Vector3d s(0, -2 * g * b / (2 * b * b + g * g), -g * g / (2 * b * b + g * g));
  const auto basis = allowed_pair_terms_d2(s);
  CHECK(basis.size() == 2);
  const Matrix a = r * ops::pauli_y() + ops::pauli_z();
  CHECK(span_distance(kron(a, a), basis) < 1e-10);

  const auto pole = allowed_pair_terms_d2({0, 0, 1});
  CHECK(pole.size() == 2);
  const Matrix heis = kron(ops::pauli_x(), ops::pauli_x()) + kron(ops::pauli_y(), ops::pauli_y()) +
                      kron(ops::pauli_z(), ops::pauli_z());
  CHECK(span_distance(heis, pole) < 1e-12);
  CHECK(span_distance(kron(ops::pauli_z(), ops::pauli_z()), pole) < 1e-12);

  for (int k = 0; k < 5; ++k) {
    const Matrix rho = test::random_density(2);
    const auto terms = allowed_pair_terms_d2(bloch_vector(rho));
    CHECK(terms.size() == 2);
    for (const Matrix& h : terms) {
      CHECK(max_abs(commutator(h, kron(rho, rho))) < 1e-12);
      CHECK(max_abs(partial_trace(h, {0}, 2, 2)) < 1e-12);
      CHECK(max_abs(h - h.adjoint()) < 1e-12);
    }
  }
}

TEST_CASE("Theorem 5") {
  const ExampleSpec s1 = example_spec(1, 3);
  const CheckReport r1 = check_theorem5(build_example(s1));
  CHECK(r1.overall);
  REQUIRE(r1.generator);
  const MeanFieldSolution fp = fixed_point(*r1.generator, LocalSpace::spin(2));
  CHECK(max_abs(fp.state.rho - *expected_values(s1).rho_loc) < 1e-12);

  CHECK(check_theorem5(example(4, 3)).overall);
  const CheckReport r5 = check_theorem5(example(5, 2));
  CHECK_FALSE(r5.overall);
  CHECK(check_theorem1(example(5, 2), meanfield_steady_state(example(5, 2)).state).overall);
}

TEST_CASE("Theorem 5 prime") {
  // Drive and loss on site 0 only.
  LatticeModel m = swap_model(3, 0.6, Matrix(), "");
  m.add_one_site(0, -1.0 * ops::spin_x());
  m.add_lindblad(0, "S-", ops::spin_minus(), 2.0);
  const CheckReport r = check_theorem5prime(m);
  CHECK(r.overall);
  REQUIRE_FALSE(r.witnesses.empty());
  CHECK(verify_iid(m, r.witnesses.front()) < 1e-10);
  CHECK_FALSE(check_theorem5(m).overall);

  for (int id : {1, 2, 4, 6}) {
    const LatticeModel u = example(id, 3, id == 2 ? std::map<std::string, double>{{"B", 0.8}}
                                                 : std::map<std::string, double>{});
    CHECK(check_theorem5prime(u).overall == check_theorem5(u).overall);
  }

  LatticeModel clash = swap_model(2, 0.6, Matrix(), "");
  clash.add_lindblad(0, "S-", ops::spin_minus());
  clash.add_lindblad(1, "S+", ops::spin_plus());
  CHECK_FALSE(check_theorem5prime(clash).overall);
}

TEST_CASE("Theorem 8") {
  CHECK(check_theorem8(example(1, 3)).overall);
  for (double b : {0.0, 0.5, 1.0}) {
    const CheckReport r = check_theorem8(example(2, 3, {{"B", b}}));
    CHECK_FALSE(r.overall);
    CHECK(r.find("pair_bcom")->residual > 1e-3);
  }
  CHECK_FALSE(check_theorem8(example(5, 2)).overall);
}

TEST_CASE("Theorem 5 implies Theorem 8 on every built-in") {
  for (int id = 1; id <= 6; ++id) {
    const LatticeModel m = example(id, id == 5 ? 2 : 3);
    if (check_theorem5(m).overall) CHECK(check_theorem8(m).overall);
  }
}

TEST_CASE("Theorem 1 agrees with the oracle on random perturbations") {
  for (int id : {1, 2, 3, 6}) {
    for (int k = 0; k < 4; ++k) {
      ExampleSpec spec = example_spec(id, 3);
      for (auto& [key, value] : default_params(id)) {
        if (id == 2 && key == "r") continue;
        spec.params[key] = value * test::uniform(0.5, 1.5);
      }
      const LatticeModel m = build_example(spec);
      const CheckReport r = check_theorem1(m, meanfield_steady_state(m).state);
      REQUIRE(r.oracle_agrees);
      CHECK(*r.oracle_agrees);
    }
  }
}
