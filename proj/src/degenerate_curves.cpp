#include "djcg/degenerate_curves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "djcg/critical_points.hpp"
#include "djcg/errors.hpp"

namespace djcg {

DegenerateCurve build_rank0_curve(const ModelParams& p, const std::vector<int>& signs) {
  CriticalPoint cp = make_critical_point(p, signs);
  DegenerateCurve c;
  c.m = -1;
  c.pcoeffs = {1.0};
  c.doubles = cp.roots;
  c.alphas = signs;
  Poly r = Poly::from_roots(cp.roots);
  c.q = 4.0 * (r * r);
  c.hvals = hvals_from_q(p, c.q);
  return c;
}

static double sqrt_p(const std::vector<double>& pc, double x) {
  double v = 0;
  for (auto it = pc.rbegin(); it != pc.rend(); ++it) v = v * x + *it;
  return std::sqrt(std::max(v, 0.0));
}

ConsistencyReport check_consistency(const ModelParams& p, const DegenerateCurve& c, double tol) {
  if (c.m < 0) throw Error(Code::InvalidM, "consistency conditions need m >= 0; use build_rank0_curve");
  int n = p.n(), m = c.m;
  if (static_cast<int>(c.pcoeffs.size()) != 2 * m + 3 || static_cast<int>(c.doubles.size()) != n - m ||
      static_cast<int>(c.alphas.size()) != n)
    throw Error(Code::InvalidInput, "curve shape does not match m and n");
  ConsistencyReport rep;
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) {
    double r = sqrt_p(c.pcoeffs, p.epsilons[j]);
    if (r <= 0) throw Error(Code::Inconsistent, "p vanishes at a spin level");
    w[j] = c.alphas[j] / (2.0 * r);
  }
  auto record = [&](int idx, double res) {
    rep.residuals.push_back(res);
    rep.max_residual = std::max(rep.max_residual, res);
    if (res > tol && rep.ok) {
      rep.ok = false;
      rep.failed_index = idx;
    }
  };
  for (int k = 0; k <= m - 2; ++k) {
    double acc = 0, mag = 0;
    for (int j = 0; j < n; ++j) {
      acc += w[j] * std::pow(p.epsilons[j], k);
      mag += std::abs(w[j] * std::pow(p.epsilons[j], k));
    }
    record(1, std::abs(acc) / std::max(1.0, mag));
  }
  if (m >= 1) {
    double acc = 0;
    for (int j = 0; j < n; ++j) acc += p.s * w[j] * std::pow(p.epsilons[j], m - 1);
    record(2, std::abs(acc - 1.0));
  }
  {
    double acc = c.pcoeffs[2 * m + 1], mag = std::abs(acc);
    for (int j = 0; j < n; ++j) {
      double t = 2.0 * p.s * w[j] * std::pow(p.epsilons[j], m);
      acc += t;
      mag += std::abs(t);
    }
    record(3, std::abs(acc) / std::max(1.0, mag));
  }
  {
    Poly lhs = Poly::from_roots(c.doubles);
    Poly rhs = m == 0 ? eps_poly(p) : Poly::constant(0.0);
    for (int j = 0; j < n; ++j) {
      CVec others;
      for (int k = 0; k < n; ++k)
        if (k != j) others.push_back(p.epsilons[k]);
      rhs = rhs + cplx(p.s * w[j]) * Poly::from_roots(others);
    }
    Poly d = lhs - rhs;
    record(0, d.norm_inf() / std::max(1.0, lhs.norm_inf()));
  }
  if (!rep.ok) {
    std::ostringstream os;
    os << "consistency condition " << rep.failed_index << " violated (residual " << rep.max_residual << ")";
    throw Error(Code::Inconsistent, os.str());
  }
  return rep;
}

static double b0_of(const ModelParams& p, double x, double b1) {
  double e1 = p.epsilons[0];
  return p.s * p.s / (x * x) - e1 * e1 - b1 * e1;
}

double rank1_residual(const ModelParams& p, double x, double b1, const std::vector<int>& alphas) {
  double b0 = b0_of(p, x, b1);
  double f = b1 + x;
  for (int j = 1; j < p.n(); ++j) {
    double e = p.epsilons[j];
    double pv = e * e + b1 * e + b0;
    if (pv <= 0) return std::nan("");
    f += alphas[j] * p.s / std::sqrt(pv);
  }
  return f;
}

DegenerateCurve rank1_curve(const ModelParams& p, double x, double b1, const std::vector<int>& alphas) {
  int n = p.n();
  DegenerateCurve c;
  c.m = 0;
  c.x = x;
  c.alphas = alphas;
  double b0 = b0_of(p, x, b1);
  c.pcoeffs = {b0, b1, 1.0};
  Poly prodE = eps_poly(p);
  for (int j = 0; j < n; ++j) {
    double e = p.epsilons[j];
    double xj = j == 0 ? x : alphas[j] * p.s / std::sqrt(e * e + b1 * e + b0);
    CVec others;
    for (int k = 0; k < n; ++k)
      if (k != j) others.push_back(p.epsilons[k]);
    prodE = prodE + cplx(0.5 * xj) * Poly::from_roots(others);
  }
  c.doubles = roots(prodE);
  double thr = 1e-8 * p.scale();
  // real coefficients: conjugate partners made exact, pairs first (upper, lower), then reals
  CVec up, re;
  std::vector<bool> used(c.doubles.size(), false);
  for (size_t a = 0; a < c.doubles.size(); ++a) {
    cplx z = c.doubles[a];
    if (std::abs(z.imag()) < thr) {
      re.push_back(z.real());
      used[a] = true;
    }
  }
  for (size_t a = 0; a < c.doubles.size(); ++a) {
    if (used[a] || c.doubles[a].imag() < 0) continue;
    size_t best = a;
    double bd = 1e300;
    for (size_t b = 0; b < c.doubles.size(); ++b)
      if (!used[b] && c.doubles[b].imag() < 0 && std::abs(c.doubles[b] - std::conj(c.doubles[a])) < bd) {
        bd = std::abs(c.doubles[b] - std::conj(c.doubles[a]));
        best = b;
      }
    if (best == a) throw Error(Code::Inconsistent, "double roots not closed under conjugation");
    used[a] = used[best] = true;
    up.push_back(0.5 * (c.doubles[a] + std::conj(c.doubles[best])));
  }
  auto byre = [](cplx u, cplx v) { return u.real() < v.real(); };
  std::sort(up.begin(), up.end(), byre);
  std::sort(re.begin(), re.end(), byre);
  c.doubles.clear();
  for (cplx z : up) {
    c.doubles.push_back(z);
    c.doubles.push_back(std::conj(z));
  }
  for (cplx z : re) c.doubles.push_back(z);
  Poly r = Poly::from_roots(c.doubles);
  c.q = 4.0 * (Poly(CVec{b0, b1, 1.0}) * (r * r));
  c.hvals = hvals_from_q(p, c.q);
  for (auto& h : c.hvals) h = h.real();
  return c;
}

std::vector<DegenerateCurve> rank1_at(const ModelParams& p, double x, const std::optional<std::vector<int>>& fixed) {
  p.validate();
  int n = p.n();
  if (std::abs(x) < 1e-12) throw Error(Code::InvalidInput, "family parameter x must be nonzero");
  double e1 = p.epsilons[0];
  double c0 = -2.0 * e1, w = 2.0 * p.s / std::abs(x);
  std::vector<std::vector<int>> patterns;
  if (fixed) {
    if (static_cast<int>(fixed->size()) != n) throw Error(Code::InvalidInput, "alpha pattern length must equal n");
    if ((*fixed)[0] != (x > 0 ? 1 : -1)) return {};
    patterns.push_back(*fixed);
  } else {
    for (long mask = 0; mask < (1L << (n - 1)); ++mask) {
      std::vector<int> a(n);
      a[0] = x > 0 ? 1 : -1;
      for (int j = 1; j < n; ++j) a[j] = (mask >> (j - 1)) & 1 ? -1 : 1;
      patterns.push_back(a);
    }
  }
  std::vector<DegenerateCurve> out;
  const int N = 1600;
  for (const auto& a : patterns) {
    auto f = [&](double b1) { return rank1_residual(p, x, b1, a); };
    // Chebyshev-like spacing, dense near the ends where Delta -> 0
    double prev_b = 0, prev_f = std::nan("");
    for (int k = 1; k < N; ++k) {
      double b = c0 - w * std::cos(M_PI * k / N);
      double fb = f(b);
      if (std::isfinite(prev_f) && std::isfinite(fb) && ((prev_f < 0) != (fb < 0))) {
        double lo = prev_b, hi = b, flo = prev_f;
        for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, std::abs(lo)); ++it) {
          double mid = 0.5 * (lo + hi), fm = f(mid);
          if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        double root = 0.5 * (lo + hi);
        DegenerateCurve cv = rank1_curve(p, x, root, a);
        if (cv.delta() < -1e-12 * p.scale() * p.scale() && std::abs(f(root)) < 1e-8 * p.scale()) out.push_back(cv);
      }
      prev_b = b;
      prev_f = fb;
    }
  }
  return out;
}

std::vector<FamilyPoint> rank1_family(const ModelParams& p, const std::vector<double>& xs,
                                      const std::optional<std::vector<int>>& alphas) {
  std::vector<FamilyPoint> out;
  for (double x : xs) {
    if (std::abs(x) < 1e-3) continue;
    for (auto& c : rank1_at(p, x, alphas)) out.push_back({x, c});
  }
  return out;
}

std::vector<double> default_x_grid(const ModelParams& p, int count) {
  double R = 4.0 * p.scale();
  std::vector<double> xs;
  for (int k = 0; k < count; ++k) {
    double x = -R + 2.0 * R * (k + 0.5) / count;
    if (std::abs(x) >= 1e-3) xs.push_back(x);
  }
  return xs;
}

std::vector<double> s1_roots(const ModelParams& p, double x) {
  if (p.n() != 2) throw Error(Code::InvalidInput, "S1 constraint is the two-spin case");
  double e1 = p.epsilons[0], e2 = p.epsilons[1], s2 = p.s * p.s, d = e1 - e2;
  Poly cub(CVec{-s2 * x * x, 0.0, s2 + d * (x - e1 - e2) * x * x, d * x * x});
  std::vector<double> ys;
  for (cplx y : roots(cub))
    if (std::abs(y.imag()) < 1e-9 * std::max(1.0, std::abs(y)) && std::abs(y.real()) > 1e-12) ys.push_back(y.real());
  std::sort(ys.begin(), ys.end());
  return ys;
}

double s1_residual(const ModelParams& p, double x, double y) {
  double e1 = p.epsilons[0], e2 = p.epsilons[1], s2 = p.s * p.s;
  return s2 * (y * y - x * x) + (e1 - e2) * (x + y - e1 - e2) * x * x * y * y;
}

TwoSpinRank1 two_spin_rank1(const ModelParams& p, double x, double y) {
  double e1 = p.epsilons[0], e2 = p.epsilons[1], s2 = p.s * p.s, d = e1 - e2;
  TwoSpinRank1 r;
  r.x = x;
  r.y = y;
  r.a0 = -(e1 * y + e2 * x - 2 * e1 * e2) / 2;
  r.a1 = (y + x - 2 * e2 - 2 * e1) / 2;
  r.b1 = -(x + y);
  r.b0 = (e2 * y * y * y + e2 * x * y * y - e2 * e2 * y * y + s2) / (y * y);
  r.H1 = -0.5 * x * x * x - 0.5 * y * x * x + e1 * x * x + s2 / (d * x) * (y + 2 * e1 - 2 * e2);
  r.H2 = -0.5 * y * y * y - 0.5 * x * y * y + e2 * y * y - s2 / (d * y) * (x - 2 * e1 + 2 * e2);
  double u = x + y - e1 - e2;
  r.H3 = -0.75 * u * u - e2 * x - e1 * y + e1 * e2 + 0.25 * (e1 + e2) * (e1 + e2) + s2 / (2 * x * x) +
         s2 / (2 * y * y);
  return r;
}

std::pair<double, double> one_spin_boundary(const ModelParams& p, double x) {
  double e = p.epsilons[0], s2 = p.s * p.s;
  double h1 = -(x * x * x * x - 2 * e * x * x * x - 4 * s2) / (2 * x);
  double h2 = -(3 * x * x * x * x - 8 * e * x * x * x + 4 * e * e * x * x - 4 * s2) / (4 * x * x);
  return {h1, h2};
}

std::vector<int> parse_alphas(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "+" || tok == "+1" || tok == "1")
      out.push_back(1);
    else if (tok == "-" || tok == "-1")
      out.push_back(-1);
    else
      throw Error(Code::InvalidInput, "bad alpha token '" + tok + "'");
  }
  return out;
}

}  // namespace djcg
