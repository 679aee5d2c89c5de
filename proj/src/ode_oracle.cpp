#include "djcg/ode_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "djcg/errors.hpp"

namespace djcg {

double reality_defect(const PhaseState& st) {
  double m = std::abs(st.bbar - std::conj(st.b));
  for (const auto& s : st.spins) {
    m = std::max(m, std::abs(s.sz.imag()));
    m = std::max(m, std::abs(s.sm - std::conj(s.sp)));
  }
  return m;
}

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Sys {
  const ModelParams& p;
  CVec operator()(const CVec& y) const { return pack(eom_rhs(p, unpack(y))); }
};

CVec axpy(const CVec& y, double h, std::initializer_list<std::pair<double, const CVec*>> terms) {
  CVec r = y;
  for (auto& [a, k] : terms)
    for (size_t i = 0; i < r.size(); ++i) r[i] += h * a * (*k)[i];
  return r;
}

// Max norm over real and imaginary parts taken as separate components.
double err_norm(const CVec& err, const CVec& y0, const CVec& y1, const IntegratorConfig& cfg) {
  double m = 0;
  for (size_t i = 0; i < err.size(); ++i) {
    double sr = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y0[i].real()), std::abs(y1[i].real()));
    double si = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y0[i].imag()), std::abs(y1[i].imag()));
    // use the modulus scale too so components near zero in one part are not over-weighted
    double sm = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    sr = std::max(sr, 0.5 * sm);
    si = std::max(si, 0.5 * sm);
    m = std::max({m, std::abs(err[i].real()) / sr, std::abs(err[i].imag()) / si});
  }
  return m;
}

CVec hermite(double t0, const CVec& y0, const CVec& f0, double t1, const CVec& y1, const CVec& f1, double t) {
  double h = t1 - t0, u = (t - t0) / h;
  double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u), h01 = u * u * (3 - 2 * u),
         h11 = u * u * (u - 1);
  CVec r(y0.size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
  return r;
}

}  // namespace

std::vector<PhaseState> integrate_to(const ModelParams& p, const PhaseState& st0, double t0,
                                     const std::vector<double>& ts, const IntegratorConfig& cfg,
                                     IntegrationStats* stats) {
  if (!(cfg.rel_tol > 0) || !(cfg.abs_tol > 0)) throw Error(Code::InvalidInput, "tolerances must be positive");
  std::vector<PhaseState> out(ts.size());
  if (ts.empty()) return out;
  double tend = t0;
  int dir = 0;
  for (double t : ts) {
    int d = t > t0 ? 1 : (t < t0 ? -1 : 0);
    if (d != 0) {
      if (dir != 0 && d != dir) throw Error(Code::InvalidInput, "integrate_to requires all targets on one side");
      dir = d;
    }
    if (std::abs(t - t0) > std::abs(tend - t0)) tend = t;
  }
  std::vector<size_t> order(ts.size());
  for (size_t i = 0; i < ts.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return std::abs(ts[a] - t0) < std::abs(ts[b] - t0); });

  Sys f{p};
  CVec y = pack(st0);
  CVec k1 = f(y);
  double t = t0;
  size_t next = 0;
  while (next < order.size() && ts[order[next]] == t0) out[order[next++]] = st0;
  double span = std::abs(tend - t0);
  double h = std::min(cfg.max_step, std::max(1e-6, 0.01 * span));
  const double hmin = 1e-14;
  long acc = 0, rej = 0;
  while (next < order.size()) {
    double remaining = cfg.hit_targets ? std::abs(ts[order[next]] - t) : std::abs(tend - t);
    double hstep = h;
    bool clipped = h > remaining;
    if (clipped) h = remaining;
    double hs = dir * h;
    CVec k2 = f(axpy(y, hs, {{a21, &k1}}));
    CVec k3 = f(axpy(y, hs, {{a31, &k1}, {a32, &k2}}));
    CVec k4 = f(axpy(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    CVec k5 = f(axpy(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    CVec k6 = f(axpy(y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    CVec y1 = axpy(y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    CVec k7 = f(y1);
    CVec err(y.size());
    for (size_t i = 0; i < y.size(); ++i)
      err[i] = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    // error per unit step for sub-unit steps, so drift per unit time tracks the tolerance
    double en = err_norm(err, y, y1, cfg) / std::min(1.0, h);
    if (!std::isfinite(en)) en = 1e10;
    if (en <= 1.0) {
      double tn = t + hs;
      while (next < order.size() && std::abs(ts[order[next]] - t0) <= std::abs(tn - t0) + 1e-15 * span) {
        double tq = ts[order[next]];
        out[order[next]] = unpack(std::abs(tq - tn) < 1e-15 * std::max(1.0, span) ? y1 : hermite(t, y, k1, tn, y1, k7, tq));
        ++next;
      }
      t = tn;
      y = y1;
      k1 = k7;
      ++acc;
      double fac = en == 0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(en, -0.25)));
      // a step shortened to land on a target does not shrink the controller's step
      h = std::min(cfg.max_step, clipped ? std::max(hstep, h * fac) : h * fac);
    } else {
      ++rej;
      h *= std::max(0.1, 0.9 * std::pow(en, -0.25));
      if (h < hmin) throw Error(Code::StepFailure, "step size underflow at t=" + std::to_string(t));
    }
  }
  if (stats) {
    stats->accepted += acc;
    stats->rejected += rej;
  }
  return out;
}

Trajectory integrate(const ModelParams& p, const PhaseState& st0, double t1, const IntegratorConfig& cfg, double dt) {
  Trajectory tr;
  if (dt <= 0) dt = std::min(cfg.max_step, std::abs(t1) / 100.0);
  int n = static_cast<int>(std::ceil(std::abs(t1) / dt - 1e-9));
  std::vector<double> ts;
  for (int k = 0; k <= n; ++k) ts.push_back(k == n ? t1 : std::copysign(k * dt, t1));
  auto sts = integrate_to(p, st0, 0.0, ts, cfg);
  CVec h0 = eval_hamiltonians(p, st0);
  for (size_t i = 0; i < ts.size(); ++i) {
    if (cfg.monitor_every > 1 && i % cfg.monitor_every != 0 && i + 1 != ts.size()) continue;
    tr.times.push_back(ts[i]);
    tr.states.push_back(sts[i]);
    CVec h = eval_hamiltonians(p, sts[i]);
    double d = 0;
    for (size_t k = 0; k < h.size(); ++k) d = std::max(d, std::abs(h[k] - h0[k]) / std::max(1.0, std::abs(h0[k])));
    tr.h_drift.push_back(d);
    tr.hvals.push_back(h);
    tr.max_imag.push_back(reality_defect(sts[i]));
  }
  return tr;
}

CompareReport compare(const Trajectory& an, const ModelParams& p, const IntegratorConfig& cfg, double anchor) {
  CompareReport rep;
  if (an.times.empty()) return rep;
  size_t ia = 0;
  if (std::isfinite(anchor)) {
    double best = 1e300;
    for (size_t i = 0; i < an.times.size(); ++i)
      if (std::abs(an.times[i] - anchor) < best) {
        best = std::abs(an.times[i] - anchor);
        ia = i;
      }
  }
  rep.anchor_time = an.times[ia];
  const PhaseState& s0 = an.states[ia];
  std::vector<double> fwd, bwd;
  std::vector<size_t> fi, bi;
  for (size_t i = 0; i < an.times.size(); ++i) {
    if (an.times[i] >= rep.anchor_time) {
      fwd.push_back(an.times[i]);
      fi.push_back(i);
    } else {
      bwd.push_back(an.times[i]);
      bi.push_back(i);
    }
  }
  IntegrationStats stats;
  auto sf = integrate_to(p, s0, rep.anchor_time, fwd, cfg, &stats);
  auto sb = integrate_to(p, s0, rep.anchor_time, bwd, cfg, &stats);
  rep.steps = stats.accepted;
  CVec h0 = eval_hamiltonians(p, s0);
  rep.h_dev.assign(h0.size(), 0.0);
  rep.field_dev.assign(pack(s0).size(), 0.0);
  auto acc = [&](size_t i, const PhaseState& num) {
    CVec a = pack(an.states[i]), b = pack(num);
    for (size_t k = 0; k < a.size(); ++k) {
      double d = std::abs(a[k] - b[k]);
      rep.field_dev[k] = std::max(rep.field_dev[k], d);
      if (d > rep.max_dev) {
        rep.max_dev = d;
        rep.worst_time = an.times[i];
      }
      rep.max_rel_dev = std::max(rep.max_rel_dev, d / std::max(1.0, std::abs(a[k])));
    }
    CVec h = eval_hamiltonians(p, num);
    for (size_t k = 0; k < h.size(); ++k) rep.h_dev[k] = std::max(rep.h_dev[k], std::abs(h[k] - h0[k]));
  };
  for (size_t j = 0; j < fi.size(); ++j) acc(fi[j], sf[j]);
  for (size_t j = 0; j < bi.size(); ++j) acc(bi[j], sb[j]);
  return rep;
}

}  // namespace djcg
