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

#include "iid/steady.hpp"

#include <cmath>

namespace iid {

LocalState LocalState::from(const Matrix& rho, double rank_tol) {
  require_square(rho, "local state");
  require_finite(rho, "local state");
  const double scale = std::max(1.0, rho.norm());
  if (hermiticity_residual(rho) > 1e-10 * scale) throw InvalidParams("local state is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > 1e-10) throw InvalidParams("local state does not have unit trace");
  LocalState s;
  s.rho = 0.5 * (rho + rho.adjoint());
  const HermitianEigensystem es = hermitian_eigen(s.rho);
  if (es.values(es.values.size() - 1) < -1e-10) throw InvalidParams("local state is not positive semidefinite");
  s.eigenvalues = es.values;
  for (Eigen::Index k = 0; k < es.values.size(); ++k)
    if (es.values(k) > rank_tol) ++s.rank;
  s.image_basis = es.vectors.leftCols(s.rank);
  s.projector = s.image_basis * s.image_basis.adjoint();
  return s;
}

Matrix sector_basis(const LocalSpace& space) {
  const int d = space.dim;
  if (!(space.superselection && space.has_number())) return identity(d * d);
  std::vector<Eigen::Index> cols;
  for (int b = 0; b < d; ++b)
    for (int a = 0; a < d; ++a)
      if (space.occupation[a] == space.occupation[b]) cols.push_back(b * d + a);
  Matrix out = Matrix::Zero(d * d, static_cast<Eigen::Index>(cols.size()));
  for (size_t k = 0; k < cols.size(); ++k) out(cols[k], static_cast<Eigen::Index>(k)) = 1.0;
  return out;
}

Matrix kernel_projector(const Matrix& g, double tol) {
  require_square(g, "kernel_projector");
  const Matrix r = null_space_basis(g, tol);
  const Matrix l = null_space_basis(g.adjoint(), tol);
  if (r.cols() != l.cols())
    throw ConvergenceFailure("kernel_projector: left and right null spaces differ in dimension");
  if (r.cols() == 0) return Matrix::Zero(g.rows(), g.cols());
  const Matrix overlap = l.adjoint() * r;
  return r * overlap.fullPivLu().solve(l.adjoint());
}

namespace {

// Density matrices whose span is the Hermitian part of the number sector.
std::vector<Matrix> sector_seeds(const LocalSpace& space) {
  const int d = space.dim;
  const bool ss = space.superselection && space.has_number();
  std::vector<Matrix> out;
  for (int a = 0; a < d; ++a) {
    Matrix m = Matrix::Zero(d, d);
    m(a, a) = 1.0;
    out.push_back(m);
  }
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      if (ss && space.occupation[a] != space.occupation[b]) continue;
      for (cplx ph : {cplx(1.0), I_}) {
        Vector v = Vector::Zero(d);
        v(a) = 1.0;
        v(b) = ph;
        out.push_back(0.5 * v * v.adjoint());
      }
    }
  return out;
}

Matrix clean_density(const Matrix& m) {
  Matrix rho = m / m.trace();
  rho = 0.5 * (rho + rho.adjoint());
  const HermitianEigensystem es = hermitian_eigen(rho);
  if (es.values(es.values.size() - 1) < -1e-9)
    throw NoPSDRepresentative("fixed point is not positive semidefinite (min eigenvalue " +
                              std::to_string(es.values(es.values.size() - 1)) + ")");
  // Clip round-off negatives only.
  const RealVector lam = es.values.cwiseMax(0.0);
  rho = es.vectors * lam.cast<cplx>().asDiagonal() * es.vectors.adjoint();
  return rho / rho.trace();
}

}  // namespace

MeanFieldSolution fixed_point(const Matrix& generator, const LocalSpace& space,
                              const Tolerances& tol) {
  const int d = space.dim;
  if (generator.rows() != d * d || generator.cols() != d * d)
    throw InvalidDimension("fixed_point: generator is not d²×d²");
  require_finite(generator, "single-site generator");
  MeanFieldSolution out;

  Matrix basis = sector_basis(space);
  Matrix reduced = basis.adjoint() * generator * basis;
  const double gscale = std::max(1.0, generator.norm());
  if (basis.cols() < d * d && (generator * basis - basis * reduced).norm() > tol.structural * gscale) {
    out.notes.push_back("generator leaves the number sector; solved on the full operator space");
    basis = identity(d * d);
    reduced = generator;
  }

  const Matrix e = kernel_projector(reduced, tol.rank);
  const Matrix full_e = basis * e * basis.adjoint();
  out.null_dim = static_cast<int>(std::lround(e.trace().real()));
  if (out.null_dim == 0) throw NoPSDRepresentative("single-site generator has a trivial kernel");

  const Vector seed = vec(identity(d) / double(d));
  out.state = LocalState::from(clean_density(unvec(full_e * seed, d)), tol.rank);
  out.residual = (generator * vec(out.state.rho)).norm();

  // Images of spanning density matrices, keeping a linearly independent subset.
  Matrix span(d * d, 0);
  for (const Matrix& s : sector_seeds(space)) {
    if (static_cast<int>(out.family.size()) == out.null_dim) break;
    const Vector img = full_e * vec(s);
    Matrix trial(d * d, span.cols() + 1);
    trial << span, img;
    if (numerical_rank(trial, 1e-8) > span.cols()) {
      span = trial;
      out.family.push_back(clean_density(unvec(img, d)));
    }
  }
  if (out.null_dim > 1) out.notes.push_back("fixed-point set has dimension " + std::to_string(out.null_dim));
  return out;
}

MeanFieldSolution meanfield_steady_state(const LatticeModel& model, int site,
                                         const Tolerances& tol) {
  if (site < 0 || site >= model.n()) throw InvalidDimension("meanfield_steady_state: site out of range");
  return fixed_point(single_site_generator(model, site), model.space(), tol);
}

SteadyStateResult full_steady_states(const LatticeModel& model,
                                     const std::optional<LocalState>& candidate,
                                     const Caps& caps, const Tolerances& tol) {
  const long long dim = model.hilbert_dim();
  caps.require_hilbert(dim);
  caps.require_superop(dim * dim);
  const Matrix g = lindbladian_matrix(model, caps);
  const Matrix q = null_space_basis(g, tol.rank);

  SteadyStateResult out;
  out.dimension = static_cast<int>(q.cols());
  out.unique_in_oracle = out.dimension == 1;
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    out.residual = std::max(out.residual, (g * q.col(k)).norm());
    Matrix m = unvec(q.col(k), dim);
    const cplx tr = m.trace();
    if (std::abs(tr) > 1e-8) m /= tr;
    out.full_basis.push_back(std::move(m));
  }
  if (candidate) {
    out.rho_loc = candidate;
    const Vector v = vec(tensor_power(candidate->rho, model.n()));
    const Vector r = v - q * (q.adjoint() * v);
    out.iid_projection_residual = r.norm() / v.norm();
  }
  return out;
}

double verify_iid(const LatticeModel& model, const Matrix& rho_loc, const Caps& caps) {
  if (rho_loc.rows() != model.d() || rho_loc.cols() != model.d())
    throw InvalidDimension("verify_iid: ρ_loc is not d×d");
  return GlobalLindbladian(model, caps).apply(tensor_power(rho_loc, model.n())).norm();
}

}  // namespace iid
