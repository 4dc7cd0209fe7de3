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

#include "iid/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace iid {

namespace {

bool uniform_grid(const std::vector<double>& t, double& dt) {
  if (t.size() < 2) return false;
  dt = t[1] - t[0];
  if (!(dt > 0)) return false;
  for (size_t k = 2; k < t.size(); ++k)
    if (std::abs((t[k] - t[k - 1]) - dt) > 1e-9 * std::max(1.0, dt)) return false;
  return true;
}

void require_increasing(const std::vector<double>& t, const char* what) {
  for (size_t k = 0; k < t.size(); ++k) {
    if (!std::isfinite(t[k])) throw InvalidParams(std::string(what) + ": non-finite time");
    if (k && t[k] < t[k - 1]) throw InvalidParams(std::string(what) + ": times must be non-decreasing");
  }
}

// Columns of v0 propagated under e^{G t_k}.
std::vector<Matrix> propagate(const Matrix& g, const Matrix& v0, const std::vector<double>& times) {
  std::vector<Matrix> out;
  out.reserve(times.size());
  if (times.empty()) return out;
  double dt = 0.0;
  if (uniform_grid(times, dt)) {
    const Matrix step = matrix_exponential(g, dt);
    Matrix v = times[0] == 0.0 ? v0 : Matrix(matrix_exponential(g, times[0]) * v0);
    out.push_back(v);
    for (size_t k = 1; k < times.size(); ++k) {
      v = step * v;
      out.push_back(v);
    }
  } else {
    for (double t : times) out.push_back(t == 0.0 ? v0 : Matrix(matrix_exponential(g, t) * v0));
  }
  return out;
}

void require_density(const Matrix& rho, long long dim, const char* what) {
  if (rho.rows() != dim || rho.cols() != dim) throw InvalidDimension(std::string(what) + ": wrong state dimension");
  require_finite(rho, what);
  if (std::abs(rho.trace() - 1.0) > 1e-8) throw InvalidParams(std::string(what) + ": state must have unit trace");
}

void enforce_stability(const LatticeModel& model, const CheckOptions& opt, const char* what) {
  const CheckReport rep = check_theorem8(model, opt);
  if (!rep.overall) {
    double worst = 0.0;
    for (const auto& [k, v] : rep.verdicts) worst = std::max(worst, v.residual);
    throw ConditionViolation(std::string(what) +
                             ": model violates condition (II) (residual " + std::to_string(worst) + ")");
  }
}

// Â on coefficient rows (y_I, y_α): ℒ†(Σ y 𝕏) ↔ y Â.
RealMatrix augmented(const LieGenerator& lg, int n) {
  const Eigen::Index m = lg.frak.rows();
  RealMatrix a = RealMatrix::Zero(m + 1, m + 1);
  a.block(1, 0, m, 1) = double(n) * lg.offset;
  a.block(1, 1, m, m) = lg.frak;
  return a;
}

std::vector<Matrix> exp_series(const RealMatrix& a, const std::vector<double>& taus) {
  const Matrix ac = a.cast<cplx>();
  return propagate(ac, identity(a.rows()), taus);
}

}  // namespace

// ---------------------------------------------------------------- evolution

std::vector<Matrix> evolve_generator(const Matrix& generator, const Matrix& rho0,
                                     const std::vector<double>& times) {
  require_increasing(times, "evolve");
  const Eigen::Index dim = rho0.rows();
  if (generator.rows() != dim * dim) throw InvalidDimension("evolve: generator does not match the state");
  std::vector<Matrix> out;
  for (const Matrix& v : propagate(generator, vec(rho0), times)) out.push_back(unvec(v.col(0), dim));
  return out;
}

std::vector<Matrix> evolve_full(const LatticeModel& model, const Matrix& rho0,
                                const std::vector<double>& times, const Caps& caps) {
  require_density(rho0, model.hilbert_dim(), "evolve_full");
  return evolve_generator(lindbladian_matrix(model, caps), rho0, times);
}

std::vector<Matrix> evolve_iid(const LatticeModel& model, const Matrix& rho_loc0,
                               const std::vector<double>& times, bool override_check,
                               const CheckOptions& opt) {
  require_density(rho_loc0, model.d(), "evolve_iid");
  if (!override_check) enforce_stability(model, opt, "evolve_iid");
  return evolve_generator(single_site_generator(model, 0), rho_loc0, times);
}

double iid_distance(const Matrix& rho, int n, int d) {
  const Matrix marginal = partial_trace(rho, {0}, n, d);
  return trace_norm(rho - tensor_power(marginal, n));
}

Matrix uniform_sum(const Matrix& op, int n, int d) {
  Matrix out = Matrix::Zero(ipow(d, n), ipow(d, n));
  for (int i = 0; i < n; ++i) out += embed_local(op, i, n, d);
  return out;
}

// ---------------------------------------------------------------- spectrum

SpectrumReport spectrum_of(const Matrix& generator) {
  const Eigensystem es = eigen_decomposition(generator);
  SpectrumReport rep;
  rep.defective = es.defective;
  double scale = 1.0;
  for (Eigen::Index k = 0; k < es.values.size(); ++k) scale = std::max(scale, std::abs(es.values(k)));
  rep.max_real = -std::numeric_limits<double>::infinity();
  double top_nonzero = -std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    const cplx l = es.values(k);
    rep.eigenvalues.push_back(l);
    rep.max_real = std::max(rep.max_real, l.real());
    if (std::abs(l) <= 1e-10 * scale) {
      ++rep.zero_multiplicity;
      continue;
    }
    top_nonzero = std::max(top_nonzero, l.real());
    if (std::abs(l.real()) < 1e-10 * scale && std::abs(l.imag()) > 1e-8) rep.purely_imaginary = true;
  }
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });
  rep.spectral_gap = std::isfinite(top_nonzero) ? -top_nonzero : 0.0;
  return rep;
}

SpectrumReport spectrum(const LatticeModel& model, const Caps& caps) {
  return spectrum_of(lindbladian_matrix(model, caps));
}

// ---------------------------------------------------------------- fits

DecayFit decay_fit(const std::vector<double>& times, const std::vector<double>& values) {
  if (times.size() != values.size()) throw InvalidDimension("decay_fit: times and values differ in length");
  constexpr double floor = 1e-13;
  size_t usable = 0;
  while (usable < values.size() && std::isfinite(values[usable]) && std::abs(values[usable]) > floor) ++usable;
  if (usable < 10) throw InsufficientDecay("decay_fit: fewer than 10 samples above the signal floor");
  std::vector<double> y(usable);
  for (size_t k = 0; k < usable; ++k) y[k] = std::log(std::abs(values[k]));
  if (y.front() - y.back() < 3.0) throw InsufficientDecay("decay_fit: series spans fewer than 3 e-foldings");

  const size_t first = usable - std::max<size_t>(5, usable / 2);
  const size_t m = usable - first;
  double st = 0, sy = 0;
  for (size_t k = first; k < usable; ++k) {
    st += times[k];
    sy += y[k];
  }
  const double mt = st / m, my = sy / m;
  double stt = 0, sty = 0, syy = 0;
  for (size_t k = first; k < usable; ++k) {
    stt += (times[k] - mt) * (times[k] - mt);
    sty += (times[k] - mt) * (y[k] - my);
    syy += (y[k] - my) * (y[k] - my);
  }
  DecayFit fit;
  const double slope = sty / stt;
  fit.rate = -slope;
  fit.quality = syy > 0 ? (sty * sty) / (stt * syy) : 1.0;
  fit.samples = static_cast<int>(m);
  return fit;
}

std::vector<cplx> fit_exponents(double dt, const std::vector<std::vector<cplx>>& channels, int order,
                                double rank_tol) {
  if (channels.empty() || !(dt > 0)) throw InvalidParams("fit_exponents: need channels and dt > 0");
  const Eigen::Index k = static_cast<Eigen::Index>(channels[0].size());
  for (const auto& c : channels)
    if (static_cast<Eigen::Index>(c.size()) != k) throw InvalidDimension("fit_exponents: ragged channels");
  const Eigen::Index pencil = k / 2;
  const Eigen::Index rows_per = k - pencil;
  if (pencil < 2) throw InvalidParams("fit_exponents: too few samples");

  // Stacked Hankel windows [y_i … y_{i+L}], one block per channel.
  Matrix y(rows_per * static_cast<Eigen::Index>(channels.size()), pencil + 1);
  for (size_t c = 0; c < channels.size(); ++c)
    for (Eigen::Index i = 0; i < rows_per; ++i)
      for (Eigen::Index j = 0; j <= pencil; ++j) y(c * rows_per + i, j) = channels[c][i + j];
  Eigen::BDCSVD<Matrix> svd(y, Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  Eigen::Index m = order;
  if (m <= 0) {
    m = 0;
    for (Eigen::Index q = 0; q < s.size(); ++q)
      if (s(0) > 0 && s(q) > rank_tol * s(0)) ++m;
  }
  m = std::min<Eigen::Index>(m, pencil);
  if (m == 0) return {};
  // Rows of Y lie in span{(1, z, …, z^L)}: the columns of conj(V).
  const Matrix w = svd.matrixV().leftCols(m).conjugate();
  const Matrix w0 = w.topRows(pencil), w1 = w.bottomRows(pencil);
  const Matrix shift = w0.completeOrthogonalDecomposition().solve(w1);
  const Eigensystem es = eigen_decomposition(shift);
  std::vector<cplx> out;
  for (Eigen::Index q = 0; q < es.values.size(); ++q) out.push_back(std::log(es.values(q)) / dt);
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });
  return out;
}

// ---------------------------------------------------------------- Lie basis

LieBasis lie_basis_su(int d) {
  if (d < 2) throw InvalidDimension("lie_basis_su: d must be ≥ 2");
  LieBasis b;
  b.mode = LieMode::su;
  const double r2 = std::sqrt(2.0);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      Matrix s = Matrix::Zero(d, d), a = Matrix::Zero(d, d);
      s(j, k) = s(k, j) = 1.0 / r2;
      a(j, k) = -I_ / r2;
      a(k, j) = I_ / r2;
      b.elements.push_back(s);
      b.labels.push_back("sym" + std::to_string(j) + std::to_string(k));
      b.elements.push_back(a);
      b.labels.push_back("asym" + std::to_string(j) + std::to_string(k));
    }
  for (int l = 1; l < d; ++l) {
    Matrix g = Matrix::Zero(d, d);
    const double c = 1.0 / std::sqrt(double(l) * (l + 1));
    for (int q = 0; q < l; ++q) g(q, q) = c;
    g(l, l) = -double(l) * c;
    b.elements.push_back(g);
    b.labels.push_back("diag" + std::to_string(l));
  }
  if (d == 2) b.labels = {"X", "Y", "Z"};
  return b;
}

LieBasis lie_basis_number(const LocalSpace& space) {
  if (!space.has_number()) throw InvalidParams("lie_basis_number: local space has no number operator");
  const int d = space.dim;
  LieBasis b;
  b.mode = LieMode::number;
  const double r2 = std::sqrt(2.0);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      if (space.occupation[j] != space.occupation[k]) continue;
      Matrix s = Matrix::Zero(d, d), a = Matrix::Zero(d, d);
      s(j, k) = s(k, j) = 1.0 / r2;
      a(j, k) = -I_ / r2;
      a(k, j) = I_ / r2;
      b.elements.push_back(s);
      b.labels.push_back("sym" + std::to_string(j) + std::to_string(k));
      b.elements.push_back(a);
      b.labels.push_back("asym" + std::to_string(j) + std::to_string(k));
    }
  const LieBasis su = lie_basis_su(d);
  for (size_t q = 0; q < su.elements.size(); ++q)
    if (su.labels[q].rfind("diag", 0) == 0 || (d == 2 && su.labels[q] == "Z")) {
      b.elements.push_back(su.elements[q]);
      b.labels.push_back(d == 2 ? "Z" : su.labels[q]);
    }
  return b;
}

LieBasis default_lie_basis(const LocalSpace& space) {
  return space.superselection && space.has_number() ? lie_basis_number(space) : lie_basis_su(space.dim);
}

LieGenerator lie_generator(const LatticeModel& model, const LieBasis& basis, bool enforce,
                           const CheckOptions& opt) {
  const int d = model.d();
  const bool ss = model.space().superselection && model.space().has_number();
  if (enforce) {
    enforce_stability(model, opt, "lie_generator");
    if (ss && basis.mode != LieMode::number)
      throw ConditionViolation("lie_generator: superselection model needs the number-sector basis");
  }
  const Eigen::Index m = static_cast<Eigen::Index>(basis.elements.size());
  for (const auto& x : basis.elements)
    if (x.rows() != d || x.cols() != d) throw InvalidDimension("lie_generator: basis element is not d×d");

  const Matrix g = single_site_generator(model, 0);
  Matrix frak(m, m);
  Vector off(m);
  const Vector vid = vec(identity(d));
  for (Eigen::Index a = 0; a < m; ++a) {
    const Vector xa = vec(basis.elements[a]);
    for (Eigen::Index b = 0; b < m; ++b) frak(a, b) = xa.dot(g * vec(basis.elements[b]));
    off(a) = xa.dot(g * vid) / double(d);
  }
  const double scale = std::max(1.0, frak.norm());
  const double imag = std::max(frak.imag().cwiseAbs().maxCoeff(), m ? off.imag().cwiseAbs().maxCoeff() : 0.0);
  if (imag > 1e-12 * scale)
    throw ConditionViolation("lie_generator: 𝔏 has imaginary part " + std::to_string(imag));

  // ℒ†(Xᵅ) must stay inside span{I, Xᵝ}.
  const Matrix gd = g.adjoint();
  for (Eigen::Index a = 0; a < m; ++a) {
    Vector r = gd * vec(basis.elements[a]) - off(a).real() * vid;
    for (Eigen::Index b = 0; b < m; ++b) r -= frak(a, b).real() * vec(basis.elements[b]);
    if (r.norm() > 1e-10 * std::max(1.0, g.norm()))
      throw ConditionViolation("lie_generator: basis is not invariant under the adjoint generator");
  }
  return {frak.real(), off.real()};
}

RealMatrix lindblad_superop_on_lie(const LatticeModel& model, const LieBasis& basis, bool enforce,
                                   const CheckOptions& opt) {
  return lie_generator(model, basis, enforce, opt).frak;
}

// ---------------------------------------------------------------- correlations

CorrelationSeries correlate_analytic(const LatticeModel& model, const Matrix& rho_loc,
                                     const LieBasis& basis, const std::vector<double>& taus,
                                     bool connected, bool enforce, const CheckOptions& opt) {
  require_increasing(taus, "correlate_analytic");
  require_density(rho_loc, model.d(), "correlate_analytic");
  const LieGenerator lg = lie_generator(model, basis, enforce, opt);
  const int n = model.n();
  const Eigen::Index m = static_cast<Eigen::Index>(basis.elements.size());
  const auto& x = basis.elements;

  Vector mean(m);
  for (Eigen::Index a = 0; a < m; ++a) mean(a) = (x[a] * rho_loc).trace();
  Matrix c0(m + 1, m);
  Vector v0(m + 1);
  v0(0) = 1.0;
  for (Eigen::Index g = 0; g < m; ++g) {
    c0(0, g) = double(n) * mean(g);
    v0(g + 1) = double(n) * mean(g);
    for (Eigen::Index b = 0; b < m; ++b)
      c0(b + 1, g) = double(n) * (x[b] * x[g] * rho_loc).trace() + double(n) * (n - 1) * mean(b) * mean(g);
  }

  CorrelationSeries out;
  out.times = taus;
  out.labels = basis.labels;
  for (const Matrix& p : exp_series(augmented(lg, n), taus)) {
    Matrix c = (p * c0).bottomRows(m);
    if (connected) {
      const Vector mt = (p * v0).tail(m);
      c -= mt * (double(n) * mean).transpose();
    }
    out.values.push_back(c);
  }
  return out;
}

CorrelationSeries correlate_bruteforce(const LatticeModel& model, const Matrix& rho_t,
                                       const std::vector<Matrix>& as, const std::vector<Matrix>& bs,
                                       const std::vector<double>& taus, bool connected, const Caps& caps) {
  require_increasing(taus, "correlate_bruteforce");
  const long long dim = model.hilbert_dim();
  require_density(rho_t, dim, "correlate_bruteforce");
  const Matrix g = lindbladian_matrix(model, caps);
  const Eigen::Index na = static_cast<Eigen::Index>(as.size()), nb = static_cast<Eigen::Index>(bs.size());

  // Columns: vec(B_b ρ_t) for each b, then vec(ρ_t).
  Matrix v0(dim * dim, nb + 1);
  for (Eigen::Index b = 0; b < nb; ++b) v0.col(b) = vec(bs[b] * rho_t);
  v0.col(nb) = vec(rho_t);
  Matrix rows(na, dim * dim);  // Tr[A Y] = vec(Aᵀ)ᵀ vec(Y)
  for (Eigen::Index a = 0; a < na; ++a) rows.row(a) = vec(as[a].transpose()).transpose();
  Vector bmean(nb);
  for (Eigen::Index b = 0; b < nb; ++b) bmean(b) = (bs[b] * rho_t).trace();

  CorrelationSeries out;
  out.times = taus;
  for (const Matrix& v : propagate(g, v0, taus)) {
    const Matrix tr = rows * v;  // na × (nb+1)
    Matrix c = tr.leftCols(nb);
    if (connected) c -= tr.col(nb) * bmean.transpose();
    out.values.push_back(c);
  }
  return out;
}

CorrelationSeries correlate_bruteforce(const LatticeModel& model, const Matrix& rho0, const Matrix& a,
                                       const Matrix& b, double t, const std::vector<double>& taus,
                                       const Caps& caps) {
  const Matrix rho_t = t == 0.0 ? rho0 : evolve_full(model, rho0, {t}, caps).front();
  return correlate_bruteforce(model, rho_t, {a}, {b}, taus, false, caps);
}

std::vector<Matrix> global_basis(const LieBasis& basis, int n, int d) {
  std::vector<Matrix> out;
  for (const auto& x : basis.elements) out.push_back(uniform_sum(x, n, d));
  return out;
}

// ---------------------------------------------------------------- response

ResponseTable response_function(const LatticeModel& model, const Matrix& rho0, const Matrix& a,
                                const Matrix& b, const std::vector<double>& grid, const Caps& caps) {
  require_increasing(grid, "response_function");
  const long long dim = model.hilbert_dim();
  require_density(rho0, dim, "response_function");
  if (a.rows() != dim || b.rows() != dim) throw InvalidDimension("response_function: operators are not d^n×d^n");
  const Matrix g = lindbladian_matrix(model, caps);
  const std::vector<Matrix> rho = propagate(g, vec(rho0), grid);
  const Vector brow = vec(b.transpose());
  const Eigen::Index k = static_cast<Eigen::Index>(grid.size());

  ResponseTable out;
  out.times = grid;
  out.phi = RealMatrix::Zero(k, k);
  for (Eigen::Index m = 0; m < k; ++m) {
    const Matrix y = a * unvec(rho[m].col(0), dim);
    std::vector<double> offs;
    for (Eigen::Index q = m; q < k; ++q) offs.push_back(grid[q] - grid[m]);
    const std::vector<Matrix> ys = propagate(g, vec(y), offs);
    for (Eigen::Index q = m; q < k; ++q)
      out.phi(q, m) = -2.0 * (brow.transpose() * ys[q - m].col(0))(0).imag();
  }
  return out;
}

ResponseTable response_function_iid(const LatticeModel& model, const Matrix& rho_loc0,
                                    const Matrix& a_loc, const Matrix& b_loc,
                                    const std::vector<double>& grid, const LieBasis& basis,
                                    const CheckOptions& opt) {
  require_increasing(grid, "response_function_iid");
  const int n = model.n(), d = model.d();
  require_density(rho_loc0, d, "response_function_iid");
  const LieGenerator lg = lie_generator(model, basis, true, opt);
  const RealMatrix aug = augmented(lg, n);
  const auto& x = basis.elements;
  const Eigen::Index m = static_cast<Eigen::Index>(x.size());

  // B_loc = b0 I + Σ b_α Xᵅ.
  Vector w(m + 1);
  Matrix rebuilt = (b_loc.trace() / double(d)) * identity(d);
  w(0) = double(n) * b_loc.trace() / double(d);
  for (Eigen::Index q = 0; q < m; ++q) {
    w(q + 1) = (x[q] * b_loc).trace();
    rebuilt += w(q + 1) * x[q];
  }
  if ((rebuilt - b_loc).norm() > 1e-10 * std::max(1.0, b_loc.norm()))
    throw ConditionViolation("response_function_iid: observable is outside span{I, basis}");

  const std::vector<Matrix> rho = evolve_generator(single_site_generator(model, 0), rho_loc0, grid);
  const Eigen::Index k = static_cast<Eigen::Index>(grid.size());
  ResponseTable out;
  out.times = grid;
  out.phi = RealMatrix::Zero(k, k);
  for (Eigen::Index mm = 0; mm < k; ++mm) {
    const Matrix& r = rho[mm];
    const cplx ar = (a_loc * r).trace();
    Vector u(m + 1);
    u(0) = double(n) * ar;
    for (Eigen::Index q = 0; q < m; ++q)
      u(q + 1) = double(n) * (x[q] * a_loc * r).trace() + double(n) * (n - 1) * (x[q] * r).trace() * ar;
    std::vector<double> offs;
    for (Eigen::Index q = mm; q < k; ++q) offs.push_back(grid[q] - grid[mm]);
    const std::vector<Matrix> ps = exp_series(aug, offs);
    for (Eigen::Index q = mm; q < k; ++q) out.phi(q, mm) = -2.0 * (w.transpose() * ps[q - mm] * u)(0).imag();
  }
  return out;
}

namespace {

Eigen::Index grid_index(const std::vector<double>& grid, double t0) {
  for (size_t k = 0; k < grid.size(); ++k)
    if (std::abs(grid[k] - t0) <= 1e-9 * std::max(1.0, std::abs(t0))) return static_cast<Eigen::Index>(k);
  throw InvalidParams("drive onset is not a grid point");
}

}  // namespace

std::vector<double> linear_response(const ResponseTable& table, const Drive& drive) {
  const Eigen::Index k = static_cast<Eigen::Index>(table.times.size());
  const Eigen::Index m0 = grid_index(table.times, drive.t0);
  std::vector<double> out(k, 0.0);
  for (Eigen::Index q = m0; q < k; ++q) {
    if (drive.kind == Drive::Kind::impulse) {
      out[q] = drive.amplitude * table.phi(q, m0);
    } else {
      double acc = 0.0;
      for (Eigen::Index m = m0; m < q; ++m)
        acc += 0.5 * (table.times[m + 1] - table.times[m]) * (table.phi(q, m) + table.phi(q, m + 1));
      out[q] = drive.amplitude * acc;
    }
  }
  return out;
}

std::vector<double> perturbed_response(const LatticeModel& model, const Matrix& rho0, const Matrix& a,
                                       const Matrix& b, const Drive& drive,
                                       const std::vector<double>& grid, const Caps& caps) {
  require_increasing(grid, "perturbed_response");
  const long long dim = model.hilbert_dim();
  require_density(rho0, dim, "perturbed_response");
  const Matrix g = lindbladian_matrix(model, caps);
  const Eigen::Index m0 = grid_index(grid, drive.t0);
  const std::vector<Matrix> base = propagate(g, vec(rho0), grid);
  const Matrix start = unvec(base[m0].col(0), dim);

  std::vector<double> offs;
  for (size_t q = m0; q < grid.size(); ++q) offs.push_back(grid[q] - grid[m0]);
  std::vector<Matrix> pert;
  if (drive.kind == Drive::Kind::impulse) {
    // H − κδ(t − t0)A: ρ ↦ e^{iκA} ρ e^{−iκA} at t0.
    const Matrix u = matrix_exponential(I_ * drive.amplitude * a);
    pert = propagate(g, vec(u * start * u.adjoint()), offs);
  } else {
    const Matrix id = identity(dim);
    const Matrix gp = g + I_ * drive.amplitude * (kron(id, a) - kron(a.transpose(), id));
    pert = propagate(gp, vec(start), offs);
  }
  std::vector<double> out(grid.size(), 0.0);
  for (size_t q = m0; q < grid.size(); ++q) {
    const Matrix diff = unvec(pert[q - m0].col(0), dim) - unvec(base[q].col(0), dim);
    out[q] = (b * diff).trace().real();
  }
  return out;
}

}  // namespace iid
