#include "djcg/soliton_rank0.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "djcg/errors.hpp"

namespace djcg {

static const cplx I(0.0, 1.0);

static Rank0SolitonSpec base_spec(const CriticalPoint& cp, const std::vector<int>& frozen_pairs, double phase) {
  if (cp.n_pairs < 1) throw Error(Code::InvalidInput, "rank-zero solitons need a focus-focus critical point");
  Rank0SolitonSpec sp;
  sp.cp = cp;
  sp.phase = phase;
  std::vector<bool> fr(cp.n_pairs, false);
  for (int k : frozen_pairs) {
    if (k < 0 || k >= cp.n_pairs) throw Error(Code::InvalidInput, "frozen pair index out of range");
    if (fr[k]) throw Error(Code::InvalidInput, "pair frozen twice");
    fr[k] = true;
  }
  sp.frozen_pairs = frozen_pairs;
  std::sort(sp.frozen_pairs.begin(), sp.frozen_pairs.end());
  for (int k = 0; k < cp.n_pairs; ++k)
    if (!fr[k]) {
      sp.active.push_back(2 * k);
      sp.active.push_back(2 * k + 1);
    }
  if (sp.active.empty()) throw Error(Code::InvalidInput, "every pair frozen: the trajectory is the critical point");
  int N = static_cast<int>(sp.active.size());
  int nroots = static_cast<int>(cp.roots.size());
  sp.n0 = nroots - N;
  sp.n_minus = N / 2;
  sp.n_plus = N / 2 - 1;
  return sp;
}

Rank0SolitonSpec make_rank0_spec(const CriticalPoint& cp, const std::vector<int>& frozen_pairs, const CVec& Xu,
                                 double phase) {
  Rank0SolitonSpec sp = base_spec(cp, frozen_pairs, phase);
  if (Xu.size() * 2 != sp.active.size())
    throw Error(Code::InvalidInput, "need one X0 value per unfrozen conjugate pair");
  for (cplx x : Xu) {
    if (std::abs(x) == 0.0 || !std::isfinite(std::abs(x))) throw Error(Code::InvalidInput, "X0 must be finite and nonzero");
    sp.X0.push_back(x);
    sp.X0.push_back(-1.0 / (4.0 * std::conj(x)));
  }
  return sp;
}

double rank0_reality_residual(const Rank0SolitonSpec& sp) {
  double m = 0;
  for (size_t k = 0; k + 1 < sp.X0.size(); k += 2) m = std::max(m, std::abs(std::conj(sp.X0[k]) * sp.X0[k + 1] + 0.25) / 0.25);
  return m;
}

Rank0SolitonSpec make_rank0_spec_explicit(const CriticalPoint& cp, const std::vector<int>& frozen_pairs,
                                          const CVec& X_all, double phase) {
  Rank0SolitonSpec sp = base_spec(cp, frozen_pairs, phase);
  if (X_all.size() != sp.active.size()) throw Error(Code::InvalidInput, "need one X0 value per unfrozen root");
  sp.X0 = X_all;
  if (rank0_reality_residual(sp) > 1e-10) throw Error(Code::RealityViolation, "conj(X_l) X_lbar != -1/4");
  return sp;
}

CVec evolve_X(const ModelParams& p, const Rank0SolitonSpec& sp, double t) {
  CVec X(sp.active.size());
  for (size_t k = 0; k < X.size(); ++k) {
    cplx E = sp.cp.roots[sp.active[k]];
    X[k] = sp.X0[k] * std::exp(-I * (2.0 * E + p.omega) * t);
  }
  return X;
}

Divisor solve_divisor(const ModelParams& p, const Rank0SolitonSpec& sp, double t) {
  CVec X = evolve_X(p, sp, t);
  int N = static_cast<int>(X.size()), nm = sp.n_minus, np = sp.n_plus;
  Eigen::MatrixXcd M(N, N);
  Eigen::VectorXcd rhs(N);
  for (int r = 0; r < N; ++r) {
    cplx E = sp.cp.roots[sp.active[r]];
    cplx pw = 1.0;
    for (int k = 0; k < nm; ++k, pw *= E) M(r, k) = pw;
    rhs(r) = -pw;  // -E^{n-}
    pw = 1.0;
    for (int k = 0; k <= np; ++k, pw *= E) M(r, nm + k) = -X[r] * pw;
    double rs = M.row(r).cwiseAbs().maxCoeff();
    rs = std::max(rs, std::abs(rhs(r)));
    M.row(r) /= rs;
    rhs(r) /= rs;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  double smin = svd.singularValues().minCoeff(), smax = svd.singularValues().maxCoeff();
  double cond = smin > 0 ? smax / smin : INFINITY;
  if (!(cond < 1e12)) throw Error(Code::SingularSystem, "divisor system ill-conditioned at t=" + std::to_string(t));
  Eigen::VectorXcd sol = M.fullPivLu().solve(rhs);
  Divisor d;
  d.cond = cond;
  CVec cm(nm + 1), cp(np + 1);
  for (int k = 0; k < nm; ++k) cm[k] = sol(k);
  cm[nm] = 1.0;
  d.bbar = sol(nm + np);
  if (std::abs(d.bbar) == 0.0) throw Error(Code::SingularSystem, "bbar vanished");
  for (int k = 0; k <= np; ++k) cp[k] = sol(nm + k) / d.bbar;
  d.Pminus = Poly(cm);
  d.Pplus = Poly(cp);
  return d;
}

static cplx det_of(const Eigen::MatrixXcd& m) { return m.rows() == 0 ? cplx(1.0) : m.fullPivLu().determinant(); }

cplx bbar_determinants(const ModelParams& p, const Rank0SolitonSpec& sp, double t) {
  CVec X = evolve_X(p, sp, t);
  int N = static_cast<int>(X.size()), nm = sp.n_minus, np = sp.n_plus;
  Eigen::MatrixXcd D0(N, N), Dn(N, N);
  for (int r = 0; r < N; ++r) {
    cplx E = sp.cp.roots[sp.active[r]];
    int c = 0;
    for (int k = 0; k <= nm; ++k) D0(r, c++) = std::pow(E, k);
    for (int k = 0; k <= np - 1; ++k) D0(r, c++) = X[r] * std::pow(E, k);
    c = 0;
    for (int k = 0; k <= nm - 1; ++k) Dn(r, c++) = std::pow(E, k);
    for (int k = 0; k <= np; ++k) Dn(r, c++) = X[r] * std::pow(E, k);
  }
  double sign = (np % 2 == 0) ? 1.0 : -1.0;
  return sign * det_of(D0) / det_of(Dn);
}

ThreeSpinDet three_spin_determinants(const ModelParams& p, const Rank0SolitonSpec& sp, double t) {
  if (sp.active.size() != 4) throw Error(Code::InvalidInput, "determinant form needs four unfrozen roots");
  CVec X = evolve_X(p, sp, t);
  Eigen::Matrix4cd M[5];
  for (int r = 0; r < 4; ++r) {
    cplx E = sp.cp.roots[sp.active[r]], x = X[r];
    M[0].row(r) << 1.0, E, E * E, x;
    M[1].row(r) << 1.0, E, E * E, E * x;
    M[2].row(r) << E, E * E, x, E * x;
    M[3].row(r) << 1.0, E * E, x, E * x;
    M[4].row(r) << 1.0, E, x, E * x;
  }
  cplx D[5];
  for (int i = 0; i < 5; ++i) D[i] = M[i].determinant();
  return {D[1] / D[0], D[3] / D[4], D[2] / D[4], -D[0] / D[4]};
}

static CVec frozen_roots(const Rank0SolitonSpec& sp) {
  CVec fr;
  std::vector<bool> act(sp.cp.roots.size(), false);
  for (int a : sp.active) act[a] = true;
  for (size_t i = 0; i < sp.cp.roots.size(); ++i)
    if (!act[i]) fr.push_back(sp.cp.roots[i]);
  return fr;
}

SeparatedConfig rank0_separated(const ModelParams& p, const Rank0SolitonSpec& sp, double t) {
  Divisor d = solve_divisor(p, sp, t);
  Poly full = Poly::from_roots(sp.cp.roots);
  Poly e = eps_poly(p);
  SeparatedConfig cfg;
  cfg.bbar = d.bbar * std::polar(1.0, -sp.phase);
  cfg.hvals = sp.cp.hcrit;
  auto add = [&](cplx l, double branch) {
    cfg.lambdas.push_back(l);
    cfg.mus.push_back(branch * 2.0 * full(l) / e(l));
  };
  for (cplx l : roots(d.Pminus)) add(l, -1.0);
  for (cplx l : roots(d.Pplus)) add(l, 1.0);
  for (cplx l : frozen_roots(sp)) add(l, 0.0);
  return cfg;
}

// Root-free form: S+ solves S+ P+ P0 = F (mod P-), P = 2F - 4 S+ P+ P0, and the
// spins follow from P, the divisor polynomial and S- = (P + 2F)/(4 P- P0).
static PhaseState reconstruct_from_divisor(const ModelParams& p, const Rank0SolitonSpec& sp, const Divisor& d) {
  int n = p.n(), nm = sp.n_minus;
  Poly F = Poly::from_roots(sp.cp.roots);
  Poly P0 = Poly::from_roots(frozen_roots(sp));
  Poly G = d.Pplus * P0;
  Eigen::MatrixXcd M(nm, nm);
  Eigen::VectorXcd rhs(nm);
  Poly Fr = divmod(F, d.Pminus).r;
  for (int k = 0; k < nm; ++k) {
    Poly col = divmod(Poly::monomial(k) * G, d.Pminus).r;
    for (int i = 0; i < nm; ++i) M(i, k) = col.coef(i);
    rhs(k) = Fr.coef(k);
  }
  Eigen::VectorXcd sv = M.fullPivLu().solve(rhs);
  CVec sc(nm);
  for (int k = 0; k < nm; ++k) sc[k] = sv(k);
  Poly Sp(sc);
  Poly P = 2.0 * F - 4.0 * (Sp * G);
  Poly Sm = divmod(P + 2.0 * F, 4.0 * (d.Pminus * P0)).q;
  Poly div = d.Pminus * G;

  PhaseState st;
  st.bbar = d.bbar * std::polar(1.0, -sp.phase);
  st.spins.resize(n);
  cplx sumz = 0.0;
  for (int j = 0; j < n; ++j) {
    double x = p.epsilons[j];
    cplx pe = 1.0;
    for (int k = 0; k < n; ++k)
      if (k != j) pe *= x - p.epsilons[k];
    st.spins[j].sz = P(x) / pe;
    st.spins[j].sp = 2.0 * st.bbar * div(x) / pe;
    st.spins[j].sm = 8.0 * Sm(x) * Sp(x) * P0(x) / (st.bbar * pe);
    sumz += st.spins[j].sz;
  }
  cplx bb = sp.cp.hcrit[n] - sumz;
  if (bb.real() < -1e-9 * p.scale()) throw Error(Code::NegativeBB, "H_{n+1} - sum sz is negative");
  st.b = bb / st.bbar;
  return st;
}

PhaseState reconstruct_rank0(const ModelParams& p, const Rank0SolitonSpec& sp, double t) {
  if (rank0_reality_residual(sp) > 1e-9) throw Error(Code::RealityViolation, "X0 violates the reality constraint");
  return reconstruct_from_divisor(p, sp, solve_divisor(p, sp, t));
}

cplx rank0_bbarb_formula(const ModelParams& p, const Rank0SolitonSpec& sp, double t) {
  Divisor d = solve_divisor(p, sp, t);
  Poly act = Poly::constant(1.0);
  for (int a : sp.active) act = act * Poly(CVec{-sp.cp.roots[a], 1.0});
  Poly dm = d.Pminus.deriv();
  cplx acc = 0.0;
  for (cplx l : roots(d.Pminus)) acc += act(l) / (dm(l) * d.Pplus(l));
  return 4.0 * acc;
}

cplx rank0_asymptotic_bbar(const ModelParams& p, const Rank0SolitonSpec& sp, double t) {
  CVec X = evolve_X(p, sp, t);
  cplx acc = 0.0;
  for (size_t i = 0; i < sp.active.size(); i += 2) {
    cplx Ei = sp.cp.roots[sp.active[i]];
    cplx num = 1.0, den = 1.0;
    for (size_t j = 0; j < sp.active.size(); ++j) {
      cplx Ej = sp.cp.roots[sp.active[j]];
      if (j % 2 == 1)
        num *= Ei - Ej;
      else if (j != i)
        den *= Ei - Ej;
    }
    acc += num / den / X[i];
  }
  return acc * std::polar(1.0, -sp.phase);
}

Trajectory sample_trajectory(const ModelParams& p, const Rank0SolitonSpec& sp, double t0, double t1, double dt) {
  if (!(t1 > t0) || !(dt > 0)) throw Error(Code::InvalidInput, "need t0 < t1 and dt > 0");
  Trajectory tr;
  int n = static_cast<int>(std::floor((t1 - t0) / dt + 1e-9));
  const CVec& h0 = sp.cp.hcrit;
  for (int k = 0; k <= n; ++k) {
    double t = t0 + k * dt;
    PhaseState st;
    CVec lam;
    try {
      Divisor d = solve_divisor(p, sp, t);
      st = reconstruct_from_divisor(p, sp, d);
      for (cplx l : roots(d.Pminus)) lam.push_back(l);
      for (cplx l : roots(d.Pplus)) lam.push_back(l);
      for (cplx l : frozen_roots(sp)) lam.push_back(l);
    } catch (const Error& e) {
      if (e.code() == Code::SingularSystem) {
        tr.gaps.push_back(t);
        continue;
      }
      throw;
    }
    tr.times.push_back(t);
    tr.states.push_back(st);
    tr.lambdas.push_back(lam);
    CVec h = eval_hamiltonians(p, st);
    double d = 0;
    for (size_t i = 0; i < h.size(); ++i) d = std::max(d, std::abs(h[i] - h0[i]) / std::max(1.0, std::abs(h0[i])));
    tr.h_drift.push_back(d);
    tr.hvals.push_back(h);
    tr.max_imag.push_back(reality_defect(st));
  }
  return tr;
}

}  // namespace djcg
