#include "djcg/model_core.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include "json.hpp"
#include <sstream>

#include "djcg/errors.hpp"

namespace djcg {

static const cplx I(0.0, 1.0);

double ModelParams::scale() const {
  double m = std::max(1.0, s);
  for (double e : epsilons) m = std::max(m, std::abs(e));
  return m;
}

void ModelParams::validate() const {
  if (epsilons.empty()) throw Error(Code::InvalidInput, "model needs at least one spin level");
  if (!(s > 0)) throw Error(Code::InvalidInput, "Casimir radius s must be positive");
  for (double e : epsilons)
    if (!std::isfinite(e)) throw Error(Code::InvalidInput, "non-finite spin level");
  double sc = scale();
  for (int i = 0; i < n(); ++i)
    for (int j = i + 1; j < n(); ++j)
      if (std::abs(epsilons[i] - epsilons[j]) <= 1e-10 * sc)
        throw Error(Code::InvalidInput, "spin levels must be pairwise distinct");
}

ModelParams params_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw Error(Code::InvalidInput, std::string("model JSON: ") + e.what());
  }
  ModelParams p;
  try {
    p.epsilons = j.at("epsilon").get<std::vector<double>>();
    if (j.contains("s")) p.s = j.at("s").get<double>();
    if (j.contains("omega")) p.omega = j.at("omega").get<double>();
  } catch (const std::exception& e) {
    throw Error(Code::InvalidInput, std::string("model JSON: ") + e.what());
  }
  p.validate();
  return p;
}

ModelParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Code::InvalidInput, "cannot open model file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return params_from_json(ss.str());
}

bool PhaseState::is_physical(double tol) const {
  auto close = [&](cplx a, cplx b) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(a)); };
  if (!close(bbar, std::conj(b))) return false;
  for (const auto& sp : spins) {
    if (!close(sp.sm, std::conj(sp.sp))) return false;
    if (std::abs(sp.sz.imag()) > tol * std::max(1.0, std::abs(sp.sz))) return false;
  }
  return true;
}

double PhaseState::casimir_residual(double s) const {
  double m = 0;
  for (const auto& sp : spins) m = std::max(m, std::abs(sp.sz * sp.sz + sp.sp * sp.sm - s * s));
  return m / (s * s);
}

CVec pack(const PhaseState& st) {
  CVec y;
  y.reserve(2 + 3 * st.spins.size());
  y.push_back(st.b);
  y.push_back(st.bbar);
  for (const auto& sp : st.spins) {
    y.push_back(sp.sz);
    y.push_back(sp.sp);
    y.push_back(sp.sm);
  }
  return y;
}

PhaseState unpack(const CVec& y) {
  PhaseState st;
  st.b = y[0];
  st.bbar = y[1];
  size_t n = (y.size() - 2) / 3;
  st.spins.resize(n);
  for (size_t j = 0; j < n; ++j) st.spins[j] = {y[2 + 3 * j], y[3 + 3 * j], y[4 + 3 * j]};
  return st;
}

PhaseState critical_state(const ModelParams& p, const std::vector<int>& signs) {
  if (static_cast<int>(signs.size()) != p.n()) throw Error(Code::InvalidInput, "sign vector length must equal n");
  PhaseState st{0.0, 0.0, {}};
  for (int e : signs) {
    if (e != 1 && e != -1) throw Error(Code::InvalidInput, "signs must be +1 or -1");
    st.spins.push_back({e * p.s, 0.0, 0.0});
  }
  return st;
}

CVec eval_hamiltonians(const ModelParams& p, const PhaseState& st) {
  int n = p.n();
  CVec h(n + 1, 0.0);
  cplx hn = st.bbar * st.b;
  for (int j = 0; j < n; ++j) {
    const Spin& a = st.spins[j];
    cplx v = 2.0 * p.epsilons[j] * a.sz + st.b * a.sp + st.bbar * a.sm;
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      const Spin& c = st.spins[k];
      cplx dot = a.sz * c.sz + 0.5 * (a.sm * c.sp + a.sp * c.sm);
      v += dot / (p.epsilons[j] - p.epsilons[k]);
    }
    h[j] = v;
    hn += a.sz;
  }
  h[n] = hn;
  return h;
}

cplx eval_physical_H(const ModelParams& p, const PhaseState& st) {
  CVec h = eval_hamiltonians(p, st);
  cplx e = p.omega * h.back();
  for (int j = 0; j < p.n(); ++j) e += h[j];
  return e;
}

Lax eval_lax(const ModelParams& p, const PhaseState& st, cplx lambda) {
  Lax l{2.0 * lambda, 2.0 * st.b, 2.0 * st.bbar};
  for (int j = 0; j < p.n(); ++j) {
    cplx d = lambda - p.epsilons[j];
    if (std::abs(d) <= 1e-12 * p.scale()) throw Error(Code::PoleAtSpinLevel, "lambda coincides with a spin level");
    l.A += st.spins[j].sz / d;
    l.B += st.spins[j].sm / d;
    l.C += st.spins[j].sp / d;
  }
  return l;
}

PhaseState eom_rhs(const ModelParams& p, const PhaseState& st) {
  PhaseState d;
  cplx sum_m = 0.0, sum_p = 0.0;
  for (const auto& sp : st.spins) {
    sum_m += sp.sm;
    sum_p += sp.sp;
  }
  d.b = -I * p.omega * st.b - I * sum_m;
  d.bbar = I * p.omega * st.bbar + I * sum_p;
  d.spins.resize(st.spins.size());
  for (int j = 0; j < p.n(); ++j) {
    const Spin& a = st.spins[j];
    double w = 2.0 * p.epsilons[j] + p.omega;
    d.spins[j].sz = I * (st.bbar * a.sm - st.b * a.sp);
    d.spins[j].sp = I * w * a.sp - 2.0 * I * st.bbar * a.sz;
    d.spins[j].sm = -I * w * a.sm + 2.0 * I * st.b * a.sz;
  }
  return d;
}

Poly eps_poly(const ModelParams& p) {
  CVec r(p.epsilons.begin(), p.epsilons.end());
  return Poly::from_roots(r);
}

static Poly eps_poly_without(const ModelParams& p, int j) {
  CVec r;
  for (int k = 0; k < p.n(); ++k)
    if (k != j) r.push_back(p.epsilons[k]);
  return Poly::from_roots(r);
}

SpectralPolynomial spectral_from_hvals(const ModelParams& p, const CVec& hvals) {
  int n = p.n();
  if (static_cast<int>(hvals.size()) != n + 1) throw Error(Code::InvalidInput, "hvals must have n+1 entries");
  Poly e = eps_poly(p);
  Poly e2 = e * e;
  Poly q = e2 * Poly(CVec{4.0 * hvals[n], 0.0, 4.0});
  for (int j = 0; j < n; ++j) {
    Poly r = eps_poly_without(p, j);
    Poly r2 = r * r;
    q = q + (2.0 * hvals[j]) * (Poly(CVec{-p.epsilons[j], 1.0}) * r2);
    q = q + cplx(p.s * p.s) * r2;
  }
  return {hvals, q};
}

CVec hvals_from_q(const ModelParams& p, const Poly& q) {
  int n = p.n();
  CVec h(n + 1);
  Poly e = eps_poly(p);
  DivMod dm = divmod(q, e * e);
  // quotient is 4 lambda^2 + 4 H_{n+1}
  h[n] = dm.q.coef(0) / 4.0;
  // R_j = q / prod_{k!=j}(l-eps_k)^2 has R_j(eps_j) = s^2 and R_j'(eps_j) = 2 H_j
  Poly dq = q.deriv();
  for (int j = 0; j < n; ++j) {
    Poly r2 = eps_poly_without(p, j) * eps_poly_without(p, j);
    cplx x = p.epsilons[j];
    cplx rv = r2(x), dr = r2.deriv()(x);
    h[j] = 0.5 * (dq(x) * rv - q(x) * dr) / (rv * rv);
  }
  return h;
}

cplx spectral_rational(const ModelParams& p, const CVec& hvals, cplx lambda) {
  int n = p.n();
  cplx v = 4.0 * lambda * lambda + 4.0 * hvals[n];
  for (int j = 0; j < n; ++j) {
    cplx d = lambda - p.epsilons[j];
    v += 2.0 * hvals[j] / d + p.s * p.s / (d * d);
  }
  return v;
}

}  // namespace djcg
