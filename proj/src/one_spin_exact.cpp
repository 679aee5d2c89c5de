#include "djcg/one_spin_exact.hpp"

#include <cmath>

#include "djcg/critical_points.hpp"
#include "djcg/errors.hpp"

namespace djcg {

static void require_one_spin(const ModelParams& p) {
  p.validate();
  if (p.n() != 1) throw Error(Code::InvalidInput, "one-spin geometry needs n = 1");
}

std::array<double, 2> CubicData::to_xy(double u, double v) const {
  double e = eps, w = 4.0 * (-3.0 * u + 2.0 * H2 - e * e);
  return {(-6.0 * e * u + 10.0 * e * H2 - 3.0 * H1 - 2.0 * e * e * e) / w, -3.0 * v / w};
}

std::array<double, 2> CubicData::to_uv(double x, double y) const {
  double e = eps;
  double u = (10.0 * e * H2 - 3.0 * H1 - 2.0 * e * e * e - 4.0 * x * (2.0 * H2 - e * e)) / (6.0 * e - 12.0 * x);
  double w = 4.0 * (-3.0 * u + 2.0 * H2 - e * e);
  return {u, -w * y / 3.0};
}

CubicData real_slice_cubic(const ModelParams& p, double H1, double H2) {
  require_one_spin(p);
  double e = p.epsilons[0], s = p.s, e2 = e * e;
  CubicData c;
  c.eps = e;
  c.H1 = H1;
  c.H2 = H2;
  c.g2 = 4.0 / 3.0 * (H2 * H2 + 2.0 * e2 * H2 - 3.0 * e * H1 + e2 * e2 + 3.0 * s * s);
  c.g3 = (8.0 * H2 * H2 * H2 + 24.0 * e2 * H2 * H2 - 36.0 * e * H1 * H2 - 72.0 * s * s * H2 + 24.0 * e2 * e2 * H2 +
          27.0 * H1 * H1 - 36.0 * e2 * e * H1 + 36.0 * e2 * s * s + 8.0 * e2 * e2 * e2) /
         27.0;
  return c;
}

double real_slice_R(const ModelParams& p, double H1, double H2, double x, double y) {
  require_one_spin(p);
  double e = p.epsilons[0], c = 2.0 * x - e, D = H1 - 2.0 * e * H2;
  return D * D + 4.0 * D * c * (H2 - 2.0 * (x * x + y * y) + 2.0 * e * c) + 4.0 * (H2 * H2 - p.s * p.s) * c * c;
}

Admissible admissible_range(const ModelParams& p, double H1, double H2, double x, std::optional<double> y) {
  require_one_spin(p);
  double e = p.epsilons[0], sc = p.scale();
  double D = H1 - 2.0 * e * H2, c = 2.0 * x - e;
  Admissible a;
  if (std::abs(D) <= 1e-12 * sc * sc * sc) {
    if (!y) throw Error(Code::InvalidInput, "on H1 = 2 eps H2 the slice needs y as well as x");
    // (bb)^2 + (4X - 2 H2) bb + H2^2 - s^2 = 0 with X = |lambda - eps|^2, i.e. |s+|^2 = 4 bb X; the larger root.
    // On a critical fiber one root is bb = 0: the fixed point itself, which meets every lambda.
    double X = (x - e) * (x - e) + (*y) * (*y);
    double B = 4.0 * X - 2.0 * H2, C = H2 * H2 - p.s * p.s, disc = B * B - 4.0 * C;
    if (disc < 0) {
      a.bbarb = -0.5 * B;
      a.s1z = H2 - a.bbarb;
      return a;
    }
    a.bbarb = 0.5 * (-B + std::sqrt(disc));
  } else {
    if (std::abs(c) <= 1e-14 * sc) throw Error(Code::PoleAtHalfLine, "x = eps/2 is a pole of the oscillator energy");
    a.bbarb = -D / (2.0 * c);
  }
  a.s1z = H2 - a.bbarb;
  double tol = 1e-12 * sc;
  a.admissible = a.bbarb >= -tol && std::abs(a.s1z) <= p.s + tol;
  return a;
}

std::vector<SliceRow> sample_real_slice(const ModelParams& p, double H1, double H2, const std::vector<double>& xs) {
  require_one_spin(p);
  double e = p.epsilons[0], D = H1 - 2.0 * e * H2;
  std::vector<SliceRow> out;
  for (double x : xs) {
    SliceRow r{x, std::nullopt, std::nullopt, false};
    double c = 2.0 * x - e;
    if (std::abs(D * c) > 1e-300) {
      double r2 = (D * D + 4.0 * D * c * (H2 + 2.0 * e * c) + 4.0 * (H2 * H2 - p.s * p.s) * c * c) / (8.0 * D * c);
      double y2 = r2 - x * x;
      if (y2 >= 0) {
        r.yplus = std::sqrt(y2);
        r.yminus = -std::sqrt(y2);
      }
      try {
        r.admissible = r.yplus.has_value() && admissible_range(p, H1, H2, x).admissible;
      } catch (const Error&) {
        r.admissible = false;
      }
    }
    out.push_back(r);
  }
  return out;
}

Circle pencil_circle(const ModelParams& p, int e1, double alpha) {
  require_one_spin(p);
  if (e1 != 1 && e1 != -1) throw Error(Code::InvalidInput, "e1 must be +1 or -1");
  double e = p.epsilons[0], den = 1.0 - 2.0 * e * alpha;
  if (std::abs(den) <= 1e-12) throw Error(Code::DegenerateAlpha, "1 - 2 eps alpha vanishes");
  Circle c;
  c.center = e + alpha * p.s * e1 / den;
  // (E1 - la)(E2 - la) with E1 + E2 = eps, E1 E2 = s e1 / 2
  c.radius2 = 0.5 * p.s * e1 - c.center * e + c.center * c.center;
  return c;
}

Circle pencil_circle_theta(const ModelParams& p, double theta) {
  require_one_spin(p);
  double e = p.epsilons[0], s = p.s;
  double k = 2.0 * std::sin(theta) - 4.0 * e * std::cos(theta);
  if (std::abs(k) <= 1e-12) throw Error(Code::DegenerateAlpha, "direction is tangent to the critical line");
  // |w|^2 k - 4 s cos(theta) Re w - s sin(theta) = 0, w = lambda - eps
  double w0 = 2.0 * s * std::cos(theta) / k;
  Circle c;
  c.center = e + w0;
  c.radius2 = w0 * w0 + s * std::sin(theta) / k;
  return c;
}

cplx lambda_from_normal(const ModelParams& p, int e1, cplx C1, cplx C2) {
  require_one_spin(p);
  CriticalPoint cp = make_critical_point(p, {e1});
  NormalForm nf = normal_form(p, cp);
  cplx E1 = cp.roots[0], E2 = cp.roots[1], a1 = nf.aprime[0], a2 = nf.aprime[1];
  cplx den = a2 * C1 + a1 * C2;
  if (std::abs(den) == 0.0) throw Error(Code::InvalidInput, "normal coordinates map to infinity");
  return (E2 * a2 * C1 + E1 * a1 * C2) / den;
}

}  // namespace djcg
