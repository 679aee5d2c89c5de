#include "djcg/sepvars.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "djcg/errors.hpp"

namespace djcg {

static const cplx I(0.0, 1.0);

static cplx prod_eps_except(const ModelParams& p, int j) {
  cplx r = 1.0;
  for (int k = 0; k < p.n(); ++k)
    if (k != j) r *= p.epsilons[j] - p.epsilons[k];
  return r;
}

static void check_divisor(const ModelParams& p, const CVec& lam) {
  double sc = p.scale();
  for (size_t i = 0; i < lam.size(); ++i) {
    for (size_t j = i + 1; j < lam.size(); ++j)
      if (std::abs(lam[i] - lam[j]) < 1e-8 * sc)
        throw Error(Code::NearDegenerateDivisor, "coincident separated variables");
    for (double e : p.epsilons)
      if (std::abs(lam[i] - e) < 1e-12 * sc) throw Error(Code::PoleAtSpinLevel, "separated variable at a spin level");
  }
}

SeparatedConfig to_separated(const ModelParams& p, const PhaseState& st) {
  if (std::abs(st.bbar) <= 1e-10 * p.scale())
    throw Error(Code::OscillatorZero, "separated variables undefined for bbar = 0");
  int n = p.n();
  Poly e = eps_poly(p);
  Poly num = (2.0 * st.bbar) * e;
  for (int j = 0; j < n; ++j) {
    CVec r;
    for (int k = 0; k < n; ++k)
      if (k != j) r.push_back(p.epsilons[k]);
    num = num + st.spins[j].sp * Poly::from_roots(r);
  }
  SeparatedConfig cfg;
  cfg.bbar = st.bbar;
  cfg.lambdas = roots(num);
  for (cplx l : cfg.lambdas) cfg.mus.push_back(eval_lax(p, st, l).A);
  cfg.hvals = eval_hamiltonians(p, st);
  return cfg;
}

Poly build_P(const ModelParams& p, const SeparatedConfig& cfg) {
  int n = p.n();
  if (static_cast<int>(cfg.lambdas.size()) != n || cfg.mus.size() != cfg.lambdas.size())
    throw Error(Code::InvalidInput, "need n separated variables and n mus");
  const CVec& lam = cfg.lambdas;
  double sc = p.scale();
  Poly e = eps_poly(p);
  Poly P = Poly(CVec{0.0, 2.0}) * e;
  for (int i = 0; i < n; ++i) {
    cplx den = 1.0;
    for (int k = 0; k < n; ++k)
      if (k != i) den *= lam[i] - lam[k];
    if (std::abs(den) < 1e-8 * std::pow(sc, n - 1) && n > 1)
      throw Error(Code::NearDegenerateDivisor, "Lagrange denominator too small");
    cplx w = (cfg.mus[i] - 2.0 * lam[i]) * e(lam[i]);
    P = P + w * lagrange_basis(lam, i);
  }
  return P;
}

double p_interpolation_residual(const ModelParams& p, const SeparatedConfig& cfg, const Poly& P) {
  Poly e = eps_poly(p);
  double m = 0;
  for (size_t i = 0; i < cfg.lambdas.size(); ++i) {
    cplx target = cfg.mus[i] * e(cfg.lambdas[i]);
    m = std::max(m, std::abs(P(cfg.lambdas[i]) - target) / std::max(1.0, std::abs(target)));
  }
  return m;
}

// H_1..H_n from Q(lambda_i) = P(lambda_i)^2 once H_{n+1} is known.
static CVec solve_hvals(const ModelParams& p, const SeparatedConfig& cfg, const Poly& P, cplx hn) {
  int n = p.n();
  CVec zero(n + 1, 0.0);
  zero[n] = hn;
  Poly q0 = spectral_from_hvals(p, zero).q;
  Eigen::MatrixXcd M(n, n);
  Eigen::VectorXcd rhs(n);
  std::vector<Poly> cols;
  for (int j = 0; j < n; ++j) {
    CVec unit(n + 1, 0.0);
    unit[j] = 1.0;
    cols.push_back(spectral_from_hvals(p, unit).q - spectral_from_hvals(p, CVec(n + 1, 0.0)).q);
  }
  for (int i = 0; i < n; ++i) {
    cplx l = cfg.lambdas[i];
    rhs(i) = P(l) * P(l) - q0(l);
    for (int j = 0; j < n; ++j) M(i, j) = cols[j](l);
  }
  Eigen::VectorXcd h = M.fullPivLu().solve(rhs);
  CVec out(n + 1);
  for (int j = 0; j < n; ++j) out[j] = h(j);
  out[n] = hn;
  return out;
}

PhaseState from_separated(const ModelParams& p, const SeparatedConfig& cfg, double phase, std::optional<cplx> hn) {
  int n = p.n();
  check_divisor(p, cfg.lambdas);
  if (std::abs(cfg.bbar) <= 1e-10 * p.scale()) throw Error(Code::OscillatorZero, "bbar = 0");
  Poly P = build_P(p, cfg);
  CVec hv;
  if (cfg.hvals)
    hv = *cfg.hvals;
  else if (hn)
    hv = solve_hvals(p, cfg, P, *hn);
  else
    throw Error(Code::InvalidInput, "from_separated needs hvals or H_{n+1}");
  Poly Q = spectral_from_hvals(p, hv).q;

  PhaseState st;
  st.bbar = cfg.bbar;
  st.spins.resize(n);
  cplx sumz = 0.0;
  for (int j = 0; j < n; ++j) {
    cplx x = p.epsilons[j];
    cplx pe = prod_eps_except(p, j);
    cplx sp = 2.0 * cfg.bbar / pe;
    for (cplx l : cfg.lambdas) sp *= x - l;
    st.spins[j].sp = sp;
    st.spins[j].sz = P(x) / pe;
    sumz += st.spins[j].sz;
  }
  cplx bb = hv[n] - sumz;
  if (bb.real() < -1e-9 * p.scale()) throw Error(Code::NegativeBB, "H_{n+1} - sum sz is negative");
  st.b = bb / cfg.bbar;

  DivMod dm = divmod(Q - P * P, Poly::from_roots(cfg.lambdas));
  double qn = Q.norm_inf();
  if (dm.r.norm_inf() > 1e-8 * qn) throw Error(Code::DivisionRemainder, "Q - P^2 not divisible by the divisor");
  for (int j = 0; j < n; ++j)
    st.spins[j].sm = dm.q(p.epsilons[j]) / (2.0 * cfg.bbar * prod_eps_except(p, j));
  return phase == 0.0 ? st : u1_rotate(st, phase);
}

CVec physical_flow_rhs(const ModelParams& p, const SeparatedConfig& cfg) {
  check_divisor(p, cfg.lambdas);
  Poly e = eps_poly(p);
  CVec d;
  for (size_t k = 0; k < cfg.lambdas.size(); ++k) {
    cplx l = cfg.lambdas[k];
    cplx den = 1.0;
    for (size_t m = 0; m < cfg.lambdas.size(); ++m)
      if (m != k) den *= l - cfg.lambdas[m];
    d.push_back(I * cfg.mus[k] * e(l) / den);
  }
  return d;
}

cplx u1_phase_rhs(const ModelParams& p, const SeparatedConfig& cfg) {
  cplx sl = 0.0;
  for (cplx l : cfg.lambdas) sl += l;
  double se = 0;
  for (double e : p.epsilons) se += e;
  return I * (p.omega - 2.0 * (sl - se));
}

PhaseState u1_rotate(const PhaseState& st, double theta) {
  cplx u = std::polar(1.0, theta);
  PhaseState r = st;
  r.b *= u;
  r.bbar /= u;
  for (auto& s : r.spins) {
    s.sm *= u;
    s.sp /= u;
  }
  return r;
}

}  // namespace djcg
