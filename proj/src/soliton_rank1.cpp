#include "djcg/soliton_rank1.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "djcg/errors.hpp"

namespace djcg {

static const cplx I(0.0, 1.0);

std::vector<std::array<int, 2>> conjugate_pairs(const DegenerateCurve& curve) {
  std::vector<std::array<int, 2>> pr;
  const CVec& d = curve.doubles;
  std::vector<bool> used(d.size(), false);
  for (size_t i = 0; i < d.size(); ++i) {
    if (used[i] || d[i].imag() <= 0) continue;
    int best = -1;
    double bd = 1e300;
    for (size_t j = 0; j < d.size(); ++j) {
      if (used[j] || j == i || d[j].imag() >= 0) continue;
      double v = std::abs(d[j] - std::conj(d[i]));
      if (v < bd) {
        bd = v;
        best = static_cast<int>(j);
      }
    }
    if (best < 0) throw Error(Code::Inconsistent, "double roots not closed under conjugation");
    used[i] = used[best] = true;
    pr.push_back({static_cast<int>(i), best});
  }
  return pr;
}

static Rank1SolitonSpec base_spec(const ModelParams& p, const DegenerateCurve& curve, const std::vector<int>& frozen_pairs,
                                  double phase) {
  if (curve.m != 0) throw Error(Code::InvalidM, "anomalous solitons live on m = 0 curves");
  double delta = curve.delta();
  if (!(delta < -1e-12 * p.scale() * p.scale())) throw Error(Code::InvalidInput, "p2 must have negative discriminant");
  Rank1SolitonSpec sp;
  sp.curve = curve;
  sp.phase = phase;
  sp.c = std::sqrt(-delta) / 4.0;
  double b1 = curve.pcoeffs[1], sd = std::sqrt(-delta);
  for (cplx E : curve.doubles) {
    cplx A = (b1 + 2.0 * E) / sd;
    cplx r = std::sqrt(A * A + 1.0);
    cplx B = A + r;
    if (std::abs(B) < 1.0) B = A - r;
    sp.A.push_back(A);
    sp.B.push_back(B);
  }
  auto pairs = conjugate_pairs(curve);
  // partners share the conjugate chart explicitly
  for (auto& pr : pairs) sp.B[pr[1]] = std::conj(sp.B[pr[0]]);
  for (cplx B : sp.B) {
    sp.Beta.push_back(-1.0 / B);
    sp.sq.push_back(0.5 * (B + 1.0 / B));
  }
  std::vector<bool> fz(curve.doubles.size(), false);
  for (size_t i = 0; i < curve.doubles.size(); ++i)
    if (curve.doubles[i].imag() == 0.0) fz[i] = true;
  for (int k : frozen_pairs) {
    if (k < 0 || k >= static_cast<int>(pairs.size())) throw Error(Code::InvalidInput, "frozen pair index out of range");
    fz[pairs[k][0]] = fz[pairs[k][1]] = true;
  }
  for (size_t i = 0; i < fz.size(); ++i)
    if (fz[i]) sp.frozen.push_back(static_cast<int>(i));
  for (auto& pr : pairs)
    if (!fz[pr[0]]) {
      sp.active.push_back(pr[0]);
      sp.active.push_back(pr[1]);
    }
  sp.n0 = static_cast<int>(sp.frozen.size());
  if ((p.n() - sp.n0) % 2 != 0) throw Error(Code::InvalidInput, "n - n0 must be even");
  return sp;
}

double rank1_reality_residual(const Rank1SolitonSpec& sp, const CVec& X) {
  int N = static_cast<int>(sp.active.size());
  double m = 0;
  for (int k = 0; k + 1 < N; k += 2) {
    cplx target = -std::pow(std::conj(sp.B[sp.active[k]]), 2 * N + 2);
    m = std::max(m, std::abs(std::conj(X[k]) * X[k + 1] - target) / std::abs(target));
  }
  return m;
}

Rank1SolitonSpec make_rank1_spec(const ModelParams& p, const DegenerateCurve& curve, const std::vector<int>& frozen_pairs,
                                 const CVec& Xu, double phase) {
  Rank1SolitonSpec sp = base_spec(p, curve, frozen_pairs, phase);
  int N = static_cast<int>(sp.active.size());
  if (static_cast<int>(Xu.size()) * 2 != N) throw Error(Code::InvalidInput, "need one X0 value per unfrozen pair");
  for (size_t k = 0; k < Xu.size(); ++k) {
    if (std::abs(Xu[k]) == 0.0) throw Error(Code::InvalidInput, "X0 must be nonzero");
    cplx Bl = sp.B[sp.active[2 * k]];
    sp.X0.push_back(Xu[k]);
    sp.X0.push_back(-std::pow(std::conj(Bl), 2 * N + 2) / std::conj(Xu[k]));
  }
  return sp;
}

Rank1SolitonSpec make_rank1_spec_explicit(const ModelParams& p, const DegenerateCurve& curve,
                                          const std::vector<int>& frozen_pairs, const CVec& X_all, double phase) {
  Rank1SolitonSpec sp = base_spec(p, curve, frozen_pairs, phase);
  if (X_all.size() != sp.active.size()) throw Error(Code::InvalidInput, "need one X0 value per unfrozen root");
  sp.X0 = X_all;
  if (rank1_reality_residual(sp, sp.X0) > 1e-9) throw Error(Code::RealityViolation, "rank-one reality constraint violated");
  return sp;
}

cplx lambda_of(const Rank1SolitonSpec& sp, cplx L) { return -0.5 * sp.curve.pcoeffs[1] + sp.c * (L - 1.0 / L); }

std::array<cplx, 2> uniformize(const Rank1SolitonSpec& sp, cplx lambda) {
  cplx w = (lambda + 0.5 * sp.curve.pcoeffs[1]) / sp.c;
  cplx r = std::sqrt(w * w + 4.0);
  return {0.5 * (w + r), 0.5 * (w - r)};
}

cplx q_of_Lambda(const Rank1SolitonSpec& sp, cplx L) {
  int n = static_cast<int>(sp.curve.doubles.size());
  cplx v = 2.0 * std::pow(sp.c, n + 1) * (L + 1.0 / L);
  for (cplx A : sp.A) v *= L - 1.0 / L - 2.0 * A;
  return v;
}

CVec evolve_X1(const Rank1SolitonSpec& sp, double t) {
  CVec X(sp.active.size());
  for (size_t k = 0; k < X.size(); ++k) X[k] = sp.X0[k] * std::exp(I * 4.0 * sp.c * sp.sq[sp.active[k]] * t);
  return X;
}

Rank1Divisor evolve_rank1(const Rank1SolitonSpec& sp, double t) {
  Rank1Divisor d;
  int N = static_cast<int>(sp.active.size());
  if (N == 0) {
    d.Pplus = Poly::constant(1.0);
    return d;
  }
  CVec X = evolve_X1(sp, t);
  Eigen::MatrixXcd M(N, N);
  Eigen::VectorXcd rhs(N);
  for (int r = 0; r < N; ++r) {
    cplx b = sp.B[sp.active[r]], be = sp.Beta[sp.active[r]];
    for (int k = 0; k < N; ++k) M(r, k) = std::pow(b, k) - X[r] * std::pow(be, k);
    rhs(r) = -(std::pow(b, N) - X[r] * std::pow(be, N));
    double rs = std::max(M.row(r).cwiseAbs().maxCoeff(), std::abs(rhs(r)));
    M.row(r) /= rs;
    rhs(r) /= rs;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  double smin = svd.singularValues().minCoeff(), smax = svd.singularValues().maxCoeff();
  d.cond = smin > 0 ? smax / smin : INFINITY;
  if (!(d.cond < 1e12)) throw Error(Code::SingularSystem, "rank-one divisor system ill-conditioned at t=" + std::to_string(t));
  Eigen::VectorXcd sol = M.fullPivLu().solve(rhs);
  CVec c(N + 1);
  for (int k = 0; k < N; ++k) c[k] = sol(k);
  c[N] = 1.0;
  d.Pplus = Poly(c);
  d.Lambdas = roots(d.Pplus);
  return d;
}

static Poly frozen_pencil(const Rank1SolitonSpec& sp) {
  // P0 P0^eta = prod over frozen doubles of (L - B)(L - B^eta)
  Poly r = Poly::constant(1.0);
  for (int i : sp.frozen) r = r * Poly(CVec{-1.0, -2.0 * sp.A[i], 1.0});
  return r;
}

SPair rank1_S(const Rank1SolitonSpec& sp, const Rank1Divisor& d) {
  int n = static_cast<int>(sp.curve.doubles.size()), N = static_cast<int>(sp.active.size());
  Poly F0 = frozen_pencil(sp);
  CVec Le;
  for (cplx L : d.Lambdas) Le.push_back(-1.0 / L);
  Poly Peta = Poly::from_roots(Le);
  double cn1 = std::pow(sp.c, n + 1);
  SPair out;
  // S+ : degree N, constant term fixed, N values at Lambda_k^eta
  {
    cplx s0 = 2.0 * cn1 / d.Pplus(0.0);
    Eigen::MatrixXcd M(N, N);
    Eigen::VectorXcd rhs(N);
    for (int k = 0; k < N; ++k) {
      cplx L = d.Lambdas[k], le = Le[k];
      cplx val = -std::pow(le, n + 1) * q_of_Lambda(sp, L) / (d.Pplus(le) * F0(le));
      for (int j = 1; j <= N; ++j) M(k, j - 1) = std::pow(le, j);
      rhs(k) = val - s0;
    }
    CVec c(N + 1);
    c[0] = s0;
    if (N > 0) {
      Eigen::VectorXcd x = M.fullPivLu().solve(rhs);
      for (int j = 1; j <= N; ++j) c[j] = x(j - 1);
    }
    out.Splus = Poly(c);
  }
  // S- : degree N+2, vanishing to second order at 0, top coefficient 2 c^{n+1}
  {
    Eigen::MatrixXcd M(N, N);
    Eigen::VectorXcd rhs(N);
    for (int k = 0; k < N; ++k) {
      cplx L = d.Lambdas[k];
      cplx val = std::pow(L, n + 1) * q_of_Lambda(sp, L) / (Peta(L) * F0(L));
      for (int j = 2; j <= N + 1; ++j) M(k, j - 2) = std::pow(L, j);
      rhs(k) = val - 2.0 * cn1 * std::pow(L, N + 2);
    }
    CVec c(N + 3, 0.0);
    c[N + 2] = 2.0 * cn1;
    if (N > 0) {
      Eigen::VectorXcd x = M.fullPivLu().solve(rhs);
      for (int j = 2; j <= N + 1; ++j) c[j] = x(j - 2);
    }
    out.Sminus = Poly(c);
  }
  return out;
}

SeparatedConfig rank1_separated(const ModelParams& p, const Rank1SolitonSpec& sp, const Rank1Divisor& d, cplx bbar) {
  Poly e = eps_poly(p);
  SeparatedConfig cfg;
  cfg.bbar = bbar;
  cfg.hvals = sp.curve.hvals;
  for (cplx L : d.Lambdas) {
    cplx l = lambda_of(sp, L);
    cfg.lambdas.push_back(l);
    cfg.mus.push_back(q_of_Lambda(sp, L) / e(l));
  }
  for (int i : sp.frozen) {
    cfg.lambdas.push_back(sp.curve.doubles[i]);
    cfg.mus.push_back(0.0);
  }
  return cfg;
}

static double sum_lambda_re(const ModelParams& p, const Rank1SolitonSpec& sp, double t) {
  Rank1Divisor d = evolve_rank1(sp, t);
  double s = 0;
  for (cplx L : d.Lambdas) s += lambda_of(sp, L).real();
  for (int i : sp.frozen) s += sp.curve.doubles[i].real();
  double se = 0;
  for (double x : p.epsilons) se += x;
  return p.omega - 2.0 * (s - se);
}

double rank1_phase(const ModelParams& p, const Rank1SolitonSpec& sp, double t) {
  if (t == 0.0) return 0.0;
  auto f = [&](double u) { return sum_lambda_re(p, sp, u); };
  if (sp.active.empty()) return f(0.0) * t;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, t, 15, 1e-13);
}

static double bbarb_of(const ModelParams& p, const Rank1SolitonSpec& sp, const Rank1Divisor& d) {
  // sz from P at the spin levels; bbar b = H_{n+1} - sum sz
  SeparatedConfig cfg = rank1_separated(p, sp, d, 1.0);
  Poly P = build_P(p, cfg);
  int n = p.n();
  cplx sumz = 0.0;
  for (int j = 0; j < n; ++j) {
    cplx pe = 1.0;
    for (int k = 0; k < n; ++k)
      if (k != j) pe *= p.epsilons[j] - p.epsilons[k];
    sumz += P(p.epsilons[j]) / pe;
  }
  return (sp.curve.hvals[n] - sumz).real();
}

static PhaseState reconstruct_with_phase(const ModelParams& p, const Rank1SolitonSpec& sp, const Rank1Divisor& d,
                                         double arg) {
  double bb = bbarb_of(p, sp, d);
  if (bb < -1e-9 * p.scale()) throw Error(Code::NegativeBB, "negative oscillator energy on rank-one stratum");
  cplx bbar = std::polar(std::sqrt(std::max(bb, 0.0)), arg - sp.phase);
  return from_separated(p, rank1_separated(p, sp, d, bbar), 0.0);
}

PhaseState reconstruct_rank1(const ModelParams& p, const Rank1SolitonSpec& sp, double t) {
  if (rank1_reality_residual(sp, sp.X0) > 1e-9) throw Error(Code::RealityViolation, "rank-one reality constraint violated");
  return reconstruct_with_phase(p, sp, evolve_rank1(sp, t), rank1_phase(p, sp, t));
}

double rank1_bbarb_compat(const Rank1SolitonSpec& sp, const Rank1Divisor& d) {
  cplx pr = 1.0;
  for (cplx L : d.Lambdas) pr *= L;
  return 4.0 * sp.c * sp.c / std::norm(pr);
}

cplx two_spin_P3(const Rank1SolitonSpec& sp, const Rank1Divisor& d, cplx lambda) {
  if (d.Lambdas.size() != 2) throw Error(Code::InvalidInput, "closed form needs the two-spin unfrozen stratum");
  cplx L1 = d.Lambdas[0], L2 = d.Lambdas[1];
  cplx S = L1 + L2, P = L1 * L2, Sb = std::conj(S), Pb = std::conj(P);
  cplx u = (lambda + 0.5 * sp.curve.pcoeffs[1]) / sp.c;
  cplx br = P * Pb * u * u * u + (Pb * S + P * Sb) * u * u + (S * Sb + 3.0 * P * Pb + P + Pb - 1.0) * u +
            2.0 * (Pb * S + P * Sb + S + Sb);
  return 2.0 * std::pow(sp.c, 3) / (P * Pb) * br;
}

std::array<double, 2> global_conjugation_residual(const Rank1SolitonSpec& sp, const Rank1Divisor& d) {
  if (d.Lambdas.size() != 2 || sp.active.size() != 2) throw Error(Code::InvalidInput, "two-spin unfrozen stratum only");
  cplx L1 = d.Lambdas[0], L2 = d.Lambdas[1];
  cplx S = L1 + L2, P = L1 * L2, Sb = std::conj(S), Pb = std::conj(P);
  cplx A = sp.A[sp.active[0]], Ab = sp.A[sp.active[1]];
  cplx r1 = S / P + Sb / Pb + 2.0 * (A + Ab);
  cplx r2 = (1.0 + 1.0 / P) * (1.0 + 1.0 / Pb) + (S / P) * (Sb / Pb) - 4.0 * A * Ab;
  return {std::abs(r1) / std::max(1.0, std::abs(A + Ab)), std::abs(r2) / std::max(1.0, std::abs(A * Ab))};
}

Trajectory sample_trajectory_rank1(const ModelParams& p, const Rank1SolitonSpec& sp, double t0, double t1, double dt) {
  if (!(t1 > t0) || !(dt > 0)) throw Error(Code::InvalidInput, "need t0 < t1 and dt > 0");
  if (rank1_reality_residual(sp, sp.X0) > 1e-9) throw Error(Code::RealityViolation, "rank-one reality constraint violated");
  int n = static_cast<int>(std::floor((t1 - t0) / dt + 1e-9));
  std::vector<double> ts;
  for (int k = 0; k <= n; ++k) ts.push_back(t0 + k * dt);
  // phase accumulated outward from t = 0 segment by segment
  std::vector<double> ph(ts.size());
  auto f = [&](double u) { return sum_lambda_re(p, sp, u); };
  auto seg = [&](double a, double b) {
    if (a == b) return 0.0;
    if (sp.active.empty()) return f(0.0) * (b - a);
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-13);
  };
  size_t i0 = 0;
  while (i0 + 1 < ts.size() && std::abs(ts[i0 + 1]) < std::abs(ts[i0])) ++i0;
  ph[i0] = seg(0.0, ts[i0]);
  for (size_t i = i0 + 1; i < ts.size(); ++i) ph[i] = ph[i - 1] + seg(ts[i - 1], ts[i]);
  for (size_t i = i0; i-- > 0;) ph[i] = ph[i + 1] + seg(ts[i + 1], ts[i]);

  Trajectory tr;
  const CVec& h0 = sp.curve.hvals;
  for (size_t i = 0; i < ts.size(); ++i) {
    PhaseState st;
    Rank1Divisor d;
    try {
      d = evolve_rank1(sp, ts[i]);
      st = reconstruct_with_phase(p, sp, d, ph[i]);
    } catch (const Error& e) {
      if (e.code() == Code::SingularSystem || e.code() == Code::NearDegenerateDivisor ||
          e.code() == Code::DivisionRemainder || e.code() == Code::OscillatorZero) {
        tr.gaps.push_back(ts[i]);
        continue;
      }
      throw;
    }
    tr.times.push_back(ts[i]);
    tr.states.push_back(st);
    CVec lam;
    for (cplx L : d.Lambdas) lam.push_back(lambda_of(sp, L));
    for (int k : sp.frozen) lam.push_back(sp.curve.doubles[k]);
    tr.lambdas.push_back(lam);
    tr.Lambdas.push_back(d.Lambdas);
    CVec h = eval_hamiltonians(p, st);
    double dd = 0;
    for (size_t k = 0; k < h.size(); ++k) dd = std::max(dd, std::abs(h[k] - h0[k]) / std::max(1.0, std::abs(h0[k])));
    tr.h_drift.push_back(dd);
    tr.hvals.push_back(h);
    tr.max_imag.push_back(reality_defect(st));
  }
  return tr;
}

}  // namespace djcg
