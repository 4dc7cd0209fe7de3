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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace iid {

const Verdict* CheckReport::find(const std::string& name) const {
  for (const auto& [k, v] : verdicts)
    if (k == name) return &v;
  return nullptr;
}

namespace {

bool within(double residual, double scale, double tol) {
  return residual <= tol * std::max(1.0, scale);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

// Raw two-site terms summed per ordered pair.
std::map<SitePair, Matrix> summed_pairs(const LatticeModel& model) {
  std::map<SitePair, Matrix> out;
  for (const auto& t : model.two_site_terms()) {
    auto it = out.find({t.i, t.j});
    if (it == out.end()) out.emplace(SitePair{t.i, t.j}, t.h);
    else it->second += t.h;
  }
  return out;
}

// One-site part of H_eff at each site: Σ one-site terms − (i/2) Σ L†L.
std::vector<Matrix> local_effective(const LatticeModel& model) {
  std::vector<Matrix> out(model.n(), Matrix::Zero(model.d(), model.d()));
  for (const auto& t : model.one_site_terms()) out[t.site] += t.h;
  for (const auto& l : model.lindblads()) out[l.site] -= 0.5 * I_ * (l.op.adjoint() * l.op);
  return out;
}

bool has_nonadjacent_fermion_pairs(const LatticeModel& model) {
  if (!model.space().fermionic()) return false;
  for (const auto& [i, j] : model.pairs())
    if (j - i > 1) return true;
  return false;
}

void require_state_dim(const LatticeModel& model, const LocalState& state) {
  if (state.dim() != model.d()) throw InvalidDimension("local state dimension does not match the model");
}

}  // namespace

// ---------------------------------------------------------------- conditions

Verdict check_condition_i(const LatticeModel& model, const LocalState& state,
                          const CheckOptions& opt) {
  require_state_dim(model, state);
  const Matrix q = identity(model.d()) - state.projector;
  Verdict v;
  double scale = 0.0;
  for (const auto& l : model.lindblads()) {
    v.residual = std::max(v.residual, (q * l.op * state.projector).norm());
    scale = std::max(scale, l.op.norm());
  }
  v.pass = within(v.residual, scale, opt.tol.structural);
  return v;
}

Verdict check_condition_ii(const LatticeModel& model, const LocalState& state,
                           const CheckOptions& opt) {
  require_state_dim(model, state);
  const int d = model.d();
  const int n = model.n();
  Verdict v;
  if (state.regular()) {
    v.pass = true;
    v.note = "regular state: Π = I";
    return v;
  }
  const Matrix& p = state.projector;
  const Matrix q = identity(d) - p;
  const Matrix pp = kron(p, p);
  const double r = state.rank;

  // Exact local criterion. With Q = I − Π, the component of H_eff Π^{⊗n} with
  // Q on two sites comes from H_ij alone; the component with Q on site i alone
  // splits into parts traceless on a neighbour's image (must vanish per
  // pair) and a 1-local remainder Q K_i Π + Σ_j Y_ij (must vanish per site).
  double local = 0.0, scale = 0.0;
  std::vector<Matrix> acc(n, Matrix::Zero(d, d));
  for (const auto& [ij, h] : summed_pairs(model)) {
    scale = std::max(scale, h.norm());
    local = std::max(local, (kron(q, q) * h * pp).norm());
    const Matrix xi = kron(q, p) * h * pp;
    const Matrix yi = partial_trace(xi, {0}, 2, d) / r;
    local = std::max(local, (xi - kron(yi, p)).norm());
    const Matrix xj = kron(p, q) * h * pp;
    const Matrix yj = partial_trace(xj, {1}, 2, d) / r;
    local = std::max(local, (xj - kron(p, yj)).norm());
    acc[ij.first] += yi;
    acc[ij.second] += yj;
  }
  const std::vector<Matrix> k = local_effective(model);
  for (int i = 0; i < n; ++i) {
    scale = std::max(scale, k[i].norm());
    local = std::max(local, (q * k[i] * p + acc[i]).norm());
  }
  const bool local_pass = within(local, scale, opt.tol.structural);

  const long long dim = model.hilbert_dim();
  if (dim <= opt.global_ii_limit && dim <= opt.caps.hilbert) {
    const GlobalLindbladian gl(model, opt.caps);
    const Matrix pin = tensor_power(p, n);
    const Matrix hp = gl.effective_hamiltonian() * pin;
    v.residual = (hp - pin * hp).norm();
    v.pass = within(v.residual, scale, opt.tol.structural);
    v.note = "global path (d^n = " + std::to_string(dim) + "), local residual " + fmt(local);
    if (v.pass != local_pass) v.note += "; WARNING: local and global paths disagree";
  } else {
    v.residual = local;
    v.pass = local_pass;
    v.note = "local path";
    if (has_nonadjacent_fermion_pairs(model))
      v.note += "; Jordan-Wigner strings of non-adjacent pairs are not resolved locally";
  }
  return v;
}

namespace {

struct Projected {
  HamiltonianDecomposition dec;
  std::vector<std::vector<Matrix>> lindblads;  // per site, r×r
  Matrix rho;                                  // r×r
};

Projected project(const LatticeModel& model, const LocalState& state) {
  const Matrix& vb = state.image_basis;
  const Matrix vv = kron(vb, vb);
  std::vector<TwoSiteTerm> two;
  for (const auto& t : model.two_site_terms()) two.push_back({t.i, t.j, vv.adjoint() * t.h * vv});
  std::vector<OneSiteTerm> one;
  for (const auto& t : model.one_site_terms()) one.push_back({t.site, vb.adjoint() * t.h * vb});
  Projected out;
  out.dec = decompose_terms(model.n(), state.rank, two, one);
  out.lindblads.resize(model.n());
  for (const auto& l : model.lindblads()) out.lindblads[l.site].push_back(vb.adjoint() * l.op * vb);
  out.rho = vb.adjoint() * state.rho * vb;
  return out;
}

}  // namespace

Verdict check_condition_iii(const LatticeModel& model, const LocalState& state,
                            const CheckOptions& opt) {
  require_state_dim(model, state);
  const Projected pr = project(model, state);
  Verdict v;
  double scale = 0.0;
  for (int i = 0; i < model.n(); ++i) {
    const Matrix g = local_generator(pr.dec.local[i], pr.lindblads[i]);
    v.residual = std::max(v.residual, (g * vec(pr.rho)).norm());
    scale = std::max(scale, g.norm());
  }
  v.pass = within(v.residual, scale, opt.tol.structural);
  if (state.rank == 1) v.note = "rank 1: projected space is one-dimensional";
  return v;
}

Verdict check_condition_iv(const LatticeModel& model, const LocalState& state,
                           const CheckOptions& opt) {
  require_state_dim(model, state);
  const Projected pr = project(model, state);
  const Matrix rr = kron(pr.rho, pr.rho);
  Verdict v;
  double scale = 0.0;
  for (const auto& [ij, h] : pr.dec.pair) {
    v.residual = std::max(v.residual, commutator(h, rr).norm());
    scale = std::max(scale, h.norm());
  }
  v.pass = within(v.residual, scale, opt.tol.structural);
  return v;
}

namespace {

void attach_oracle(const LatticeModel& model, const LocalState& state, const CheckOptions& opt,
                   CheckReport& rep) {
  if (!opt.oracle || model.hilbert_dim() > opt.caps.hilbert) return;
  rep.oracle_residual = verify_iid(model, state.rho, opt.caps);
  rep.oracle_agrees = rep.overall == (*rep.oracle_residual < opt.tol.oracle);
  if (!*rep.oracle_agrees)
    rep.notes.push_back("WARNING: verdict disagrees with the brute-force residual " + fmt(*rep.oracle_residual));
}

}  // namespace

CheckReport check_theorem1(const LatticeModel& model, const LocalState& state,
                           const CheckOptions& opt) {
  CheckReport rep;
  rep.theorem = "theorem1";
  rep.add("i", check_condition_i(model, state, opt));
  rep.add("ii", check_condition_ii(model, state, opt));
  rep.add("iii", check_condition_iii(model, state, opt));
  rep.add("iv", check_condition_iv(model, state, opt));
  rep.overall = std::all_of(rep.verdicts.begin(), rep.verdicts.end(),
                            [](const auto& kv) { return kv.second.pass; });
  rep.mode = "rank " + std::to_string(state.rank) + " of " + std::to_string(state.dim());
  if (rep.overall) rep.witnesses.push_back(state.rho);
  attach_oracle(model, state, opt, rep);
  return rep;
}

CheckReport check_lemma2(const LatticeModel& model, const LocalState& state,
                         const CheckOptions& opt) {
  require_state_dim(model, state);
  CheckReport rep;
  rep.theorem = "lemma2";
  const HamiltonianDecomposition dec = decompose(model);
  Verdict a, b;
  double sa = 0.0, sb = 0.0;
  for (int i = 0; i < model.n(); ++i) {
    const Matrix g = single_site_generator(model, dec, i);
    a.residual = std::max(a.residual, (g * vec(state.rho)).norm());
    sa = std::max(sa, g.norm());
  }
  a.pass = within(a.residual, sa, opt.tol.structural);
  const Matrix rr = kron(state.rho, state.rho);
  for (const auto& [ij, h] : dec.pair) {
    b.residual = std::max(b.residual, commutator(h, rr).norm());
    sb = std::max(sb, h.norm());
  }
  b.pass = within(b.residual, sb, opt.tol.structural);
  rep.add("iii'", a);
  rep.add("iv'", b);
  rep.overall = a.pass && b.pass;
  rep.mode = state.regular() ? "equivalence" : "sufficient-only";
  if (!state.regular()) rep.notes.push_back("state is not regular: the conditions are only sufficient");
  if (rep.overall) rep.witnesses.push_back(state.rho);
  attach_oracle(model, state, opt, rep);
  return rep;
}

// ---------------------------------------------------------------- d = 2

double pair_asymmetry(const Matrix& h, const LocalSpace& space) {
  const Matrix p = transposition_matrix(0, 1, 2, space);
  return commutator(h, p).norm();
}

Eigen::Vector3d bloch_vector(const Matrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) throw InvalidDimension("bloch_vector: ρ is not 2×2");
  return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

std::vector<Matrix> symmetric_pair_basis() {
  Matrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -I_, I_, 0;
  z << 1, 0, 0, -1;
  const Matrix id = identity(2);
  const double r2 = std::sqrt(2.0);
  return {(kron(x, id) + kron(id, x)) / r2, (kron(y, id) + kron(id, y)) / r2,
          (kron(z, id) + kron(id, z)) / r2, kron(x, x), kron(y, y), kron(z, z),
          (kron(x, y) + kron(y, x)) / r2, (kron(z, x) + kron(x, z)) / r2,
          (kron(y, z) + kron(z, y)) / r2};
}

RealMatrix appendix_matrix(const Eigen::Vector3d& sv) {
  const double x = sv(0), y = sv(1), z = sv(2), s = std::sqrt(2.0);
  RealMatrix m(9, 9);
  // clang-format off
  m <<      0,       z,      -y,       0,   s*y*z,  -s*y*z,     x*z,    -x*y, z*z-y*y,
           -z,       0,       x,  -s*x*z,       0,   s*x*z,    -y*z, x*x-z*z,     x*y,
            y,      -x,       0,   s*x*y,  -s*x*y,       0, y*y-x*x,     y*z,    -x*z,
            0,   s*x*z,  -s*x*y,       0,       0,       0,     s*z,    -s*y,       0,
       -s*y*z,       0,   s*x*y,       0,       0,       0,    -s*z,       0,     s*x,
        s*y*z,  -s*x*z,       0,       0,       0,       0,       0,     s*y,    -s*x,
         -x*z,     y*z, x*x-y*y,    -s*z,     s*z,       0,       0,       x,      -y,
          x*y, z*z-x*x,    -y*z,     s*y,       0,    -s*y,      -x,       0,       z,
      y*y-z*z,    -x*y,     x*z,       0,    -s*x,     s*x,       y,      -z,       0;
  // clang-format on
  return 0.5 * m;
}

RealMatrix appendix_matrix_numeric(const Eigen::Vector3d& sv) {
  Matrix rho(2, 2);
  rho << 1.0 + sv(2), cplx(sv(0), -sv(1)), cplx(sv(0), sv(1)), 1.0 - sv(2);
  rho *= 0.5;
  const Matrix rr = kron(rho, rho);
  const auto b = symmetric_pair_basis();
  RealMatrix m(9, 9);
  for (int k = 0; k < 9; ++k)
    for (int l = 0; l < 9; ++l) m(k, l) = ((b[k] * commutator(b[l], rr)).trace() / (4.0 * I_)).real();
  return m;
}

std::vector<Matrix> allowed_pair_terms_d2(const Eigen::Vector3d& s, double tol) {
  RealMatrix sys = RealMatrix::Zero(12, 9);
  sys.topRows(9) = appendix_matrix(s);
  for (int k = 0; k < 3; ++k) sys(9 + k, k) = 1.0;  // partial-traceless: no α
  Eigen::JacobiSVD<RealMatrix> svd(sys, Eigen::ComputeFullV);
  const auto& sing = svd.singularValues();
  const double cut = tol * std::max(1.0, sing(0));
  int rank = 0;
  for (Eigen::Index k = 0; k < sing.size(); ++k)
    if (sing(k) > cut) ++rank;
  const auto basis = symmetric_pair_basis();
  std::vector<Matrix> out;
  for (int c = rank; c < 9; ++c) {
    Matrix h = Matrix::Zero(4, 4);
    for (int l = 0; l < 9; ++l) h += svd.matrixV()(l, c) * basis[l];
    out.push_back(h);
  }
  return out;
}

namespace {

// Joint eigenvectors of ops on C²; nullopt when every op is ∝ I.
std::optional<std::vector<Vector>> joint_eigenvectors_d2(const std::vector<Matrix>& ops) {
  std::optional<std::vector<Vector>> cand;
  for (const Matrix& l : ops) {
    const double sc = std::max(1.0, l.norm());
    const cplx mean = l.trace() / 2.0;
    const Matrix shifted = l - mean * identity(2);
    if (!cand) {
      if (shifted.norm() <= 1e-12 * sc) continue;
      const Eigensystem es = eigen_decomposition(l);
      std::vector<Vector> vs;
      if (std::abs(es.values(0) - es.values(1)) < 1e-9 * sc) {
        vs.push_back(null_space_basis(shifted, 1e-6).col(0));  // Jordan block: one eigenvector
      } else {
        vs.push_back(es.vectors.col(0));
        vs.push_back(es.vectors.col(1));
      }
      cand = vs;
    } else {
      std::vector<Vector> keep;
      for (const Vector& v : *cand) {
        const cplx lam = v.dot(l * v);
        if ((l * v - lam * v).norm() <= 1e-9 * sc) keep.push_back(v);
      }
      cand = keep;
    }
  }
  return cand;
}

}  // namespace

CheckReport check_corollary3(const LatticeModel& model, const CheckOptions& opt) {
  if (model.d() != 2) throw InvalidDimension("corollary 3 requires d = 2");
  CheckReport rep;
  rep.theorem = "corollary3";
  for (const auto& [ij, h] : summed_pairs(model))
    if (pair_asymmetry(h, model.space()) > 1e-12 * std::max(1.0, h.norm()))
      rep.notes.push_back("pair term on (" + std::to_string(ij.first) + "," + std::to_string(ij.second) +
                          ") is not swap-symmetric");

  CheckOptions inner = opt;
  inner.oracle = false;

  // Case 1: pure states built from joint Lindblad eigenvectors.
  std::vector<Matrix> ops;
  for (const auto& l : model.lindblads()) ops.push_back(l.op);
  std::vector<Vector> cands;
  if (auto joint = joint_eigenvectors_d2(ops)) {
    cands = *joint;
  } else {
    rep.notes.push_back("Lindblad operators impose no constraint; case 1 tries eigenvectors of H_0");
    const Matrix k0 = decompose(model).local[0];
    const Eigensystem es = eigen_decomposition(k0);
    for (int c = 0; c < 2; ++c) cands.push_back(es.vectors.col(c));
  }
  MeanFieldSolution mf;
  bool have_mf = false;
  try {
    mf = meanfield_steady_state(model, 0, opt.tol);
    have_mf = true;
    if (mf.state.rank == 1) cands.push_back(mf.state.image_basis.col(0));
  } catch (const NoPSDRepresentative& e) {
    rep.notes.push_back(std::string("mean-field solve failed: ") + e.what());
  }

  Verdict c1;
  c1.residual = std::numeric_limits<double>::infinity();
  for (const Vector& v : cands) {
    const Vector u = v / v.norm();
    const LocalState st = LocalState::from(u * u.adjoint(), opt.tol.rank);
    const CheckReport t1 = check_theorem1(model, st, inner);
    double worst = 0.0;
    for (const auto& [k, vd] : t1.verdicts) worst = std::max(worst, vd.residual);
    c1.residual = std::min(c1.residual, worst);
    if (t1.overall) {
      c1.pass = true;
      rep.witnesses.push_back(st.rho);
    }
  }
  if (cands.empty()) {
    c1.residual = 1.0;
    c1.note = "no joint eigenvector of the Lindblad operators";
  }

  // Case 2: regular mean-field fixed points under Lemma 2.
  Verdict c2;
  c2.residual = std::numeric_limits<double>::infinity();
  if (have_mf) {
    std::vector<Matrix> trial{mf.state.rho};
    if (mf.null_dim > 1) trial.insert(trial.end(), mf.family.begin(), mf.family.end());
    for (const Matrix& rho : trial) {
      const LocalState st = LocalState::from(rho, opt.tol.rank);
      if (!st.regular()) continue;
      const CheckReport l2 = check_lemma2(model, st, inner);
      double worst = 0.0;
      for (const auto& [k, vd] : l2.verdicts) worst = std::max(worst, vd.residual);
      c2.residual = std::min(c2.residual, worst);
      if (l2.overall) {
        c2.pass = true;
        rep.witnesses.push_back(st.rho);
        break;
      }
    }
    if (!std::isfinite(c2.residual)) {
      c2.residual = 1.0;
      c2.note = "mean-field fixed point is not regular";
    }
  } else {
    c2.residual = 1.0;
    c2.note = "no mean-field fixed point";
  }
  rep.add("case1", c1);
  rep.add("case2", c2);
  rep.overall = c1.pass || c2.pass;
  return rep;
}

// ---------------------------------------------------------------- sufficient conditions

namespace {

struct Split {
  double residual = 0.0;
  double scale = 0.0;
  std::vector<Matrix> local;  // 1-local remainder per site (traceless, Hermitian)
};

Matrix traceless(const Matrix& m) { return m - (m.trace() / double(m.rows())) * identity(m.rows()); }

// Least-squares fit of the decomposition blocks of H by
//   Σ_pairs (B_com pair monomials n_i^a n_j^b P_ij^z) + Σ_i f(n_i) + 1-local h_i,
// with h_i shared across sites when `uniform`. Every ≤2-body element of B_com
// decomposes over these pieces, so a vanishing residual is exactly membership.
Split bcom_split(const LatticeModel& model, const HamiltonianDecomposition& dec, bool uniform) {
  const LocalSpace& space = model.space();
  const int n = model.n(), d = model.d();
  const bool mono = space.superselection && space.has_number();
  const int kmax = mono ? space.n_max : 0;

  std::vector<Matrix> npow{identity(d)};
  for (int k = 1; k <= kmax; ++k) npow.push_back(npow.back() * space.number_operator());
  const Matrix swap = transposition_matrix(0, 1, 2, space);
  std::vector<PairPieces> gens;
  for (int a = 0; a <= kmax; ++a)
    for (int b = 0; b <= kmax; ++b)
      for (int z = 0; z < 2; ++z) {
        const Matrix g = kron(npow[a], npow[b]) * (z ? swap : identity(d * d));
        gens.push_back(split_pair(g, d));
      }

  std::vector<SitePair> pairs;
  for (const auto& [ij, h] : dec.pair) pairs.push_back(ij);
  const Eigen::Index np = static_cast<Eigen::Index>(pairs.size());
  const Eigen::Index ng = static_cast<Eigen::Index>(gens.size());
  const Eigen::Index d2 = d * d, d4 = d2 * d2;
  const Eigen::Index col_single = np * ng;
  const Eigen::Index col_h = col_single + n * kmax;
  const Eigen::Index cols = col_h + (uniform ? d2 : n * d2);
  const Eigen::Index row_site = np * d4;
  const Eigen::Index rows = row_site + n * d2;

  Matrix a = Matrix::Zero(rows, cols);
  Vector rhs = Vector::Zero(rows);
  for (Eigen::Index p = 0; p < np; ++p) {
    const auto [i, j] = pairs[p];
    rhs.segment(p * d4, d4) = vec(dec.pair.at(pairs[p]));
    for (Eigen::Index g = 0; g < ng; ++g) {
      a.block(p * d4, p * ng + g, d4, 1) = vec(gens[g].irreducible);
      a.block(row_site + i * d2, p * ng + g, d2, 1) += vec(gens[g].left);
      a.block(row_site + j * d2, p * ng + g, d2, 1) += vec(gens[g].right);
    }
  }
  for (int i = 0; i < n; ++i) {
    rhs.segment(row_site + i * d2, d2) = vec(dec.local[i]);
    for (int k = 1; k <= kmax; ++k) a.block(row_site + i * d2, col_single + i * kmax + (k - 1), d2, 1) = vec(traceless(npow[k]));
    for (Eigen::Index e = 0; e < d2; ++e) {
      Matrix unit = Matrix::Zero(d, d);
      unit(e % d, e / d) = 1.0;
      const Eigen::Index c = col_h + (uniform ? e : i * d2 + e);
      a.block(row_site + i * d2, c, d2, 1) = vec(traceless(unit));
    }
  }

  const Vector x = a.completeOrthogonalDecomposition().solve(rhs);
  Split out;
  out.residual = (a * x - rhs).norm();
  out.scale = rhs.norm();
  for (int i = 0; i < n; ++i) {
    const Eigen::Index c = col_h + (uniform ? 0 : i * d2);
    Matrix h = unvec(x.segment(c, d2), d);
    h = traceless(0.5 * (h + h.adjoint()));
    out.local.push_back(h);
  }
  return out;
}

Verdict lindblad_uniformity(const LatticeModel& model, const Tolerances& tol) {
  Verdict v;
  const auto ref = model.lindblads_at(0);
  std::set<std::string> labels;
  bool by_label = true;
  for (const auto* l : ref) {
    if (l->label.empty() || !labels.insert(l->label).second) by_label = false;
  }
  double scale = 0.0;
  for (const auto* l : ref) scale = std::max(scale, l->op.norm());
  for (int i = 1; i < model.n(); ++i) {
    const auto here = model.lindblads_at(i);
    if (here.size() != ref.size()) {
      v.residual = std::max(v.residual, 1.0);
      v.note = "site " + std::to_string(i) + " carries a different number of channels";
      continue;
    }
    for (size_t k = 0; k < ref.size(); ++k) {
      const LindbladTerm* match = here[k];
      if (by_label) {
        match = nullptr;
        for (const auto* l : here)
          if (l->label == ref[k]->label) match = l;
      }
      if (!match) {
        v.residual = std::max(v.residual, 1.0);
        v.note = "channel '" + ref[k]->label + "' missing on site " + std::to_string(i);
        continue;
      }
      v.residual = std::max(v.residual, (match->op - ref[k]->op).norm());
    }
  }
  v.pass = within(v.residual, scale, tol.structural);
  return v;
}

}  // namespace

CheckReport check_theorem5(const LatticeModel& model, const CheckOptions& opt) {
  CheckReport rep;
  rep.theorem = "theorem5";
  rep.add("lindblad_uniform", lindblad_uniformity(model, opt.tol));
  const HamiltonianDecomposition dec = decompose(model);
  const Split sp = bcom_split(model, dec, true);
  Verdict split;
  split.residual = sp.residual;
  split.pass = within(sp.residual, sp.scale, opt.tol.structural);
  split.note = "H − Σ h_i fitted against pair B_com monomials";
  rep.add("split", split);
  rep.overall = rep.verdicts[0].second.pass && split.pass;
  if (rep.overall) {
    const Matrix ell = local_generator(sp.local[0], model.lindblad_ops_at(0));
    rep.generator = ell;
    const MeanFieldSolution mf = fixed_point(ell, model.space(), opt.tol);
    rep.witnesses.push_back(mf.state.rho);
    if (mf.null_dim > 1) {
      rep.notes.push_back("ℓ has a " + std::to_string(mf.null_dim) + "-dimensional fixed-point set");
      for (const auto& f : mf.family) rep.witnesses.push_back(f);
    }
  }
  return rep;
}

CheckReport check_theorem5prime(const LatticeModel& model, const CheckOptions& opt) {
  CheckReport rep;
  rep.theorem = "theorem5prime";
  const LocalSpace& space = model.space();
  const int d = model.d();
  const HamiltonianDecomposition dec = decompose(model);
  const Split sp = bcom_split(model, dec, false);
  Verdict split;
  split.residual = sp.residual;
  split.pass = within(sp.residual, sp.scale, opt.tol.structural);
  rep.add("split", split);

  // Common fixed point of every ℓ_i on the number sector.
  const Matrix basis = sector_basis(space);
  std::vector<Matrix> ells;
  for (int i = 0; i < model.n(); ++i) ells.push_back(local_generator(sp.local[i], model.lindblad_ops_at(i)));
  Matrix compose = identity(basis.cols());
  for (const Matrix& ell : ells) compose = kernel_projector(basis.adjoint() * ell * basis, opt.tol.rank) * compose;
  const Matrix fix = kernel_projector(compose - identity(basis.cols()), opt.tol.rank);
  Verdict common;
  common.residual = 1.0;
  const Vector img = basis * (fix * (basis.adjoint() * vec(identity(d) / double(d))));
  const cplx tr = unvec(img, d).trace();
  if (std::abs(tr) > 1e-10) {
    Matrix rho = unvec(img, d) / tr;
    rho = 0.5 * (rho + rho.adjoint());
    double res = 0.0, scale = 0.0;
    for (const Matrix& ell : ells) {
      res = std::max(res, (ell * vec(rho)).norm());
      scale = std::max(scale, ell.norm());
    }
    const double mineig = hermitian_eigen(rho).values.minCoeff();
    common.residual = res;
    common.pass = within(res, scale, opt.tol.structural) && mineig > -1e-9;
    if (common.pass) rep.witnesses.push_back(rho);
    if (mineig <= -1e-9) common.note = "candidate is not positive semidefinite";
  } else {
    common.note = "no common fixed point with unit trace";
  }
  rep.add("common_fixed_point", common);
  rep.overall = split.pass && common.pass;
  return rep;
}

CheckReport check_theorem8(const LatticeModel& model, const CheckOptions& opt) {
  CheckReport rep;
  rep.theorem = "theorem8";
  const HamiltonianDecomposition dec = decompose(model);
  const BcomBasis b2 = bcom_basis(2, model.space(), opt.caps, opt.tol.rank);
  Verdict mem;
  for (const auto& [ij, h] : dec.pair) {
    const Membership m = bcom_membership(h, b2, opt.tol.structural);
    if (m.residual > mem.residual) {
      mem.residual = m.residual;
      mem.note = "worst pair (" + std::to_string(ij.first) + "," + std::to_string(ij.second) + ")";
    }
  }
  mem.pass = mem.residual < opt.tol.structural;
  rep.add("pair_bcom", mem);

  const Matrix basis = sector_basis(model.space());
  Verdict uni;
  const Matrix g0 = single_site_generator(model, dec, 0) * basis;
  for (int i = 1; i < model.n(); ++i)
    uni.residual = std::max(uni.residual, (single_site_generator(model, dec, i) * basis - g0).norm());
  uni.pass = within(uni.residual, g0.norm(), opt.tol.structural);
  if (basis.cols() < basis.rows()) uni.note = "compared on the number sector";
  rep.add("uniform_generator", uni);
  rep.overall = mem.pass && uni.pass;
  return rep;
}

double theorem5_split_residual_global(const LatticeModel& model, const Caps& caps) {
  const int n = model.n(), d = model.d();
  const BcomBasis b = bcom_basis(n, model.space(), caps);
  std::vector<Matrix> gens = b.generators;
  for (int e = 0; e < d * d; ++e) {
    Matrix unit = Matrix::Zero(d, d);
    unit(e % d, e / d) = 1.0;
    Matrix sum = Matrix::Zero(model.hilbert_dim(), model.hilbert_dim());
    for (int i = 0; i < n; ++i) sum += embed_local(unit, i, n, d);
    gens.push_back(sum);
  }
  return span_residual(global_hamiltonian(model), orthonormal_span(gens));
}

}  // namespace iid
