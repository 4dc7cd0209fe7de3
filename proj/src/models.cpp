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

#include <cmath>

namespace iid {

namespace ops {

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, -I_, I_, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix spin_x() { return 0.5 * pauli_x(); }
Matrix spin_y() { return 0.5 * pauli_y(); }
Matrix spin_z() { return 0.5 * pauli_z(); }

Matrix spin_minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

Matrix spin_plus() { return spin_minus().adjoint(); }

namespace {

void require_two_modes(const LocalSpace& space) {
  if (!space.fermionic() || space.modes() != 2)
    throw InvalidParams("spin operators need a two-mode fermionic site");
}

}  // namespace

Matrix fermion_spin_x(const LocalSpace& space) {
  require_two_modes(space);
  const Matrix cu = space.annihilator(0), cd = space.annihilator(1);
  return 0.5 * (cu.adjoint() * cd + cd.adjoint() * cu);
}

Matrix fermion_spin_y(const LocalSpace& space) {
  require_two_modes(space);
  const Matrix cu = space.annihilator(0), cd = space.annihilator(1);
  return -0.5 * I_ * (cu.adjoint() * cd - cd.adjoint() * cu);
}

Matrix fermion_spin_z(const LocalSpace& space) {
  require_two_modes(space);
  const Matrix cu = space.annihilator(0), cd = space.annihilator(1);
  return 0.5 * (cu.adjoint() * cu - cd.adjoint() * cd);
}

Matrix fermion_spin_minus(const LocalSpace& space) {
  require_two_modes(space);
  return space.annihilator(1).adjoint() * space.annihilator(0);
}

Matrix pair_annihilator(const LocalSpace& space, int site, int mode) {
  const Matrix c = space.annihilator(mode);
  const int d = space.dim;
  if (site == 0) return kron(c, identity(d));
  if (site == 1) return kron(space.fermionic() ? space.parity_operator() : identity(d), c);
  throw InvalidDimension("pair_annihilator: site must be 0 or 1");
}

Matrix pair_hopping(const LocalSpace& space) {
  const int modes = space.fermionic() ? space.modes() : 1;
  const int d = space.dim;
  Matrix h = Matrix::Zero(d * d, d * d);
  for (int s = 0; s < modes; ++s) {
    const Matrix hop = pair_annihilator(space, 0, s).adjoint() * pair_annihilator(space, 1, s);
    h += hop + hop.adjoint();
  }
  return h;
}

Matrix pair_density(const LocalSpace& space) {
  const Matrix n = space.number_operator();
  return kron(n, n);
}

Matrix heisenberg_pair() {
  return kron(spin_x(), spin_x()) + kron(spin_y(), spin_y()) + kron(spin_z(), spin_z());
}

}  // namespace ops

// ---------------------------------------------------------------- geometry

std::string to_string(Geometry g) {
  switch (g) {
    case Geometry::chain: return "chain";
    case Geometry::ring: return "ring";
    case Geometry::all: return "all";
  }
  return "chain";
}

Geometry geometry_from_string(const std::string& s) {
  if (s == "chain") return Geometry::chain;
  if (s == "ring") return Geometry::ring;
  if (s == "all") return Geometry::all;
  throw InvalidParams("unknown geometry '" + s + "' (chain, ring, all)");
}

std::vector<SitePair> geometry_pairs(Geometry g, int n) {
  std::vector<SitePair> out;
  if (g == Geometry::all) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
    return out;
  }
  for (int i = 0; i + 1 < n; ++i) out.emplace_back(i, i + 1);
  if (g == Geometry::ring && n > 2) out.emplace_back(0, n - 1);
  return out;
}

// ---------------------------------------------------------------- specs

std::map<std::string, double> default_params(int id) {
  switch (id) {
    case 1: return {{"J", 1.0}, {"B", 1.0}, {"gamma", 2.0}};
    case 2: return {{"J", 1.0}, {"r", 1.0}, {"B", 0.5}, {"gamma", 1.0}};
    case 3: return {{"t", 1.0}, {"V", 0.5}, {"mu", 0.3}, {"gamma_minus", 3.0}, {"gamma_plus", 1.0}};
    case 4:
      return {{"t", 1.0}, {"J", 0.5}, {"Bx", 0.6}, {"Bz", 0.45}, {"gamma", 0.8}, {"r", 1.0}};
    case 5:
      return {{"t", 1.0},           {"U", 2.0},           {"V", 0.5},
              {"Bx", 0.6},          {"Bz", 0.35},         {"gamma_plus_up", 0.7},
              {"gamma_plus_dn", 0.4}, {"gamma_minus_up", 0.3}, {"gamma_minus_dn", 0.9}};
    case 6: return {{"t", 1.0}, {"V", 0.5}, {"mu", 0.3}, {"gamma_minus", 2.0}, {"gamma_plus", 1.0}};
    default: throw InvalidParams("unknown example id " + std::to_string(id) + " (1-6)");
  }
}

std::string example_title(int id) {
  switch (id) {
    case 1: return "dissipative spin-1/2 isotropic Heisenberg model";
    case 2: return "dissipative spin-1/2 model with YZ+ZY interactions";
    case 3: return "dissipative spinless fermion model";
    case 4: return "dissipative t-J model";
    case 5: return "dissipative Hubbard model";
    case 6: return "dissipative hard-core boson model";
    default: throw InvalidParams("unknown example id " + std::to_string(id) + " (1-6)");
  }
}

ExampleSpec example_spec(int id, int n) {
  ExampleSpec s;
  s.id = id;
  s.n = n;
  default_params(id);  // validates id
  return s;
}

double ExampleSpec::get(const std::string& key) const {
  const auto defaults = default_params(id);
  if (!defaults.count(key)) throw InvalidParams("example " + std::to_string(id) + " has no parameter '" + key + "'");
  const auto it = params.find(key);
  return it == params.end() ? defaults.at(key) : it->second;
}

namespace {

void validate_spec(const ExampleSpec& spec) {
  const auto defaults = default_params(spec.id);
  if (spec.n < 1) throw InvalidParams("example needs n >= 1");
  for (const auto& [k, v] : spec.params) {
    if (!defaults.count(k))
      throw InvalidParams("example " + std::to_string(spec.id) + " has no parameter '" + k + "'");
    if (!std::isfinite(v)) throw InvalidParams("parameter '" + k + "' is not finite");
    if (k.rfind("gamma", 0) == 0 && v < 0.0) throw InvalidParams("rate '" + k + "' is negative");
  }
  if (spec.id == 4) {
    const double r = spec.get("r");
    if (r < 0.0 || r > 1.0) throw InvalidParams("example 4 family parameter r must lie in [0, 1]");
  }
}

void add_pairs(LatticeModel& m, Geometry g, const Matrix& h) {
  for (const auto& [i, j] : geometry_pairs(g, m.n())) m.add_two_site(i, j, h);
}

void add_uniform(LatticeModel& m, const Matrix& h) {
  if (h.norm() == 0.0) return;
  for (int i = 0; i < m.n(); ++i) m.add_one_site(i, h);
}

void add_channel(LatticeModel& m, const std::string& label, const Matrix& op, double rate) {
  if (rate == 0.0) return;
  for (int i = 0; i < m.n(); ++i) m.add_lindblad(i, label, op, rate);
}

}  // namespace

LatticeModel build_example(const ExampleSpec& spec) {
  validate_spec(spec);
  const auto p = [&](const char* k) { return spec.get(k); };
  const std::string name = "example" + std::to_string(spec.id);

  switch (spec.id) {
    case 1: {
      LatticeModel m(spec.n, LocalSpace::spin(2), name);
      add_pairs(m, spec.geometry, p("J") * ops::heisenberg_pair());
      add_uniform(m, -p("B") * ops::spin_x());
      add_channel(m, "S-", ops::spin_minus(), p("gamma"));
      return m;
    }
    case 2: {
      LatticeModel m(spec.n, LocalSpace::spin(2), name);
      const Matrix a = p("r") * ops::spin_y() + ops::spin_z();
      add_pairs(m, spec.geometry, p("J") * kron(a, a));
      add_uniform(m, -p("B") * ops::spin_x());
      add_channel(m, "S-", ops::spin_minus(), p("gamma"));
      return m;
    }
    case 3:
    case 6: {
      const LocalSpace space = spec.id == 3 ? LocalSpace::spinless_fermion() : LocalSpace::hardcore_boson();
      LatticeModel m(spec.n, space, name);
      add_pairs(m, spec.geometry, -p("t") * ops::pair_hopping(space) + p("V") * ops::pair_density(space));
      add_uniform(m, p("mu") * space.number_operator());
      const Matrix c = space.annihilator(0);
      add_channel(m, spec.id == 3 ? "c" : "b", c, p("gamma_minus"));
      add_channel(m, spec.id == 3 ? "c+" : "b+", c.adjoint(), p("gamma_plus"));
      return m;
    }
    case 4: {
      const LocalSpace space = LocalSpace::no_double_occupancy();
      LatticeModel m(spec.n, space, name);
      const Matrix sx = ops::fermion_spin_x(space), sy = ops::fermion_spin_y(space),
                   sz = ops::fermion_spin_z(space);
      const Matrix ss = kron(sx, sx) + kron(sy, sy) + kron(sz, sz);
      add_pairs(m, spec.geometry,
                -p("t") * ops::pair_hopping(space) + p("J") * (ss - 0.25 * ops::pair_density(space)));
      add_uniform(m, -p("Bx") * sx - p("Bz") * sz);
      add_channel(m, "S-", ops::fermion_spin_minus(space), p("gamma"));
      return m;
    }
    case 5: {
      const LocalSpace space = LocalSpace::spinful_fermion();
      LatticeModel m(spec.n, space, name);
      const Matrix cu = space.annihilator(0), cd = space.annihilator(1);
      const Matrix nu = cu.adjoint() * cu, nd = cd.adjoint() * cd;
      add_pairs(m, spec.geometry, -p("t") * ops::pair_hopping(space) + p("V") * ops::pair_density(space));
      add_uniform(m, p("U") * nu * nd - p("Bx") * ops::fermion_spin_x(space) -
                         p("Bz") * ops::fermion_spin_z(space));
      add_channel(m, "c+up", cu.adjoint(), p("gamma_plus_up"));
      add_channel(m, "c+dn", cd.adjoint(), p("gamma_plus_dn"));
      add_channel(m, "c-up", cu, p("gamma_minus_up"));
      add_channel(m, "c-dn", cd, p("gamma_minus_dn"));
      return m;
    }
    default:
      throw InvalidParams("unknown example id " + std::to_string(spec.id));
  }
}

// ---------------------------------------------------------------- golden values

std::map<std::string, cplx> hubbard_r_params(const Matrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw InvalidDimension("hubbard_r_params: state is not 4×4");
  // Basis 0 = |0⟩, 1 = |↓⟩, 2 = |↑⟩, 3 = |↑↓⟩.
  return {{"r11", rho(3, 3)}, {"r22", rho(2, 2)}, {"r33", rho(1, 1)}, {"r44", rho(0, 0)}, {"r23", rho(2, 1)}};
}

double hubbard_constraint(const Matrix& rho) {
  const auto r = hubbard_r_params(rho);
  return (r.at("r11") * r.at("r44") - r.at("r22") * r.at("r33")).real() + std::norm(r.at("r23"));
}

namespace {

// Example 1/2 local state (1/(2B²+γ²))[[B², iBγ], [−iBγ, B²+γ²]].
Matrix driven_decay_state(double b, double g) {
  const double den = 2 * b * b + g * g;
  if (den == 0.0) throw InvalidParams("B = γ = 0 leaves the local state undetermined");
  Matrix rho(2, 2);
  rho << b * b, I_ * b * g, -I_ * b * g, b * b + g * g;
  return rho / den;
}

}  // namespace

ExpectedValues expected_values(const ExampleSpec& spec) {
  validate_spec(spec);
  const auto p = [&](const char* k) { return spec.get(k); };
  const double n = spec.n;
  ExpectedValues out;

  switch (spec.id) {
    case 1:
    case 2: {
      const double b = p("B"), g = p("gamma");
      const Matrix rho = driven_decay_state(b, g);
      const double den = 2 * b * b + g * g;
      out.m_ss = Eigen::Vector3d(0.0, -0.5 * n * 2 * g * b / den, -0.5 * n * g * g / den);
      if (spec.id == 1) {
        out.rho_loc = rho;
        out.iid_exists = true;
        const cplx root = std::sqrt(cplx(g * g / 16 - b * b));
        out.lie_eigenvalues = {-0.5 * g, -0.75 * g + root, -0.75 * g - root};
      } else {
        const double thr = p("r") * g / 2;
        out.threshold_b = thr;
        const bool at = std::abs(b - thr) <= 1e-12 * std::max(1.0, std::abs(thr));
        out.iid_exists = at || p("J") == 0.0 || spec.n < 2;
        if (*out.iid_exists) out.rho_loc = rho;
        else out.m_ss.reset();
        out.notes.push_back("i.i.d. steady state only at B = r*gamma/2 (for J != 0)");
      }
      return out;
    }
    case 3:
    case 6: {
      const double gm = p("gamma_minus"), gp = p("gamma_plus");
      if (gm + gp == 0.0) throw InvalidParams("gamma_minus + gamma_plus must be positive");
      Matrix rho = Matrix::Zero(2, 2);
      rho(0, 0) = gm / (gm + gp);
      rho(1, 1) = gp / (gm + gp);
      out.rho_loc = rho;
      out.n_ss = n * gp / (gm + gp);
      out.iid_exists = true;
      return out;
    }
    case 4: {
      const double bx = p("Bx"), bz = p("Bz"), g = p("gamma"), r = p("r");
      const double den = g * g + 2 * bx * bx + 4 * bz * bz;
      if (den == 0.0) throw InvalidParams("gamma = Bx = Bz = 0 leaves the spin sector undetermined");
      // Basis 0 = |0⟩, 1 = |↓⟩, 2 = |↑⟩.
      Matrix rho = Matrix::Zero(3, 3);
      rho(2, 2) = bx * bx;
      rho(2, 1) = -bx * (2 * bz - I_ * g);
      rho(1, 2) = -bx * (2 * bz + I_ * g);
      rho(1, 1) = g * g + bx * bx + 4 * bz * bz;
      rho *= r / den;
      rho(0, 0) = 1 - r;
      out.rho_loc = rho;
      out.n_ss = n * r;
      out.m_ss = -n * r / (2 * den) * Eigen::Vector3d(4 * bx * bz, 2 * bx * g, g * g + 4 * bz * bz);
      out.iid_exists = true;
      out.notes.push_back("one-parameter family in r; the vacuum weight is 1 - r");
      return out;
    }
    case 5: {
      const double gpu = p("gamma_plus_up"), gpd = p("gamma_plus_dn"), gmu = p("gamma_minus_up"),
                   gmd = p("gamma_minus_dn"), bx = p("Bx"), bz = p("Bz");
      const double gu = gpu + gmu, gd = gpd + gmd, g = gu + gd;
      if (gu == 0.0 || gd == 0.0) throw InvalidParams("both spin species need a nonzero total rate");
      const double den = g * g * gu * gd + bx * bx * g * g + 4 * bz * bz * gu * gd;
      const cplx r23 = (gpd * gmu - gpu * gmd) * bx * (-2 * bz + I_ * g) / den;
      const double im = r23.imag(), ggg = g * gu * gd;
      const double r11 = gpu * gpd / (gu * gd) - (gu * gpu - gd * gpd) / ggg * bx * im;
      const double r22 = gpu * gmd / (gu * gd) + (gu * (gpu + gd) + gd * gmd) / ggg * bx * im;
      const double r33 = gmu * gpd / (gu * gd) - (gd * (gpd + gu) + gu * gmu) / ggg * bx * im;
      const double r44 = gmu * gmd / (gu * gd) - (gd * gmd - gu * gmu) / ggg * bx * im;
      Matrix rho = Matrix::Zero(4, 4);
      rho(3, 3) = r11;
      rho(2, 2) = r22;
      rho(1, 1) = r33;
      rho(0, 0) = r44;
      rho(2, 1) = r23;
      rho(1, 2) = std::conj(r23);
      out.rho_loc = rho;
      out.r_params = hubbard_r_params(rho);
      out.constraint = hubbard_constraint(rho);
      out.n_ss = n * ((2 * gpu * gpd + gpu * gmd + gpd * gmu) / (gu * gd) -
                      bx * bx * g * (gu - gd) * (gpd * gmu - gpu * gmd) / (gu * gd * den));
      out.m_ss = n * (gpu * gmd - gpd * gmu) / (2 * den) *
                 Eigen::Vector3d(4 * bx * bz, 2 * bx * g, g * g + 4 * bz * bz);
      out.iid_exists = true;
      return out;
    }
    default:
      throw InvalidParams("unknown example id " + std::to_string(spec.id));
  }
}

}  // namespace iid
