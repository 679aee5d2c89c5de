#include <doctest.h>

#include <cmath>
#include <random>

#include "djcg/critical_points.hpp"
#include "djcg/degenerate_curves.hpp"
#include "djcg/errors.hpp"
#include "djcg/one_spin_exact.hpp"
#include "djcg/sepvars.hpp"
#include "support.hpp"

using namespace djcg;
using namespace djcg::testing;

namespace {

std::vector<double> grid(double a, double b, int n) {
  std::vector<double> xs;
  for (int i = 0; i < n; ++i) xs.push_back(a + (b - a) * i / (n - 1));
  return xs;
}

double cubic_scale(double u, double v) { return std::max({1.0, v * v, std::abs(4 * u * u * u)}); }

}  // namespace

TEST_CASE("physical states lie on their real slice") {
  ModelParams p = one_spin();
  std::mt19937_64 rng(21);
  int used = 0;
  for (int trial = 0; trial < 200; ++trial) {
    PhaseState st = random_state(p, rng, 1.2);
    auto h = vector_hamiltonians(p, st);
    SeparatedConfig cfg;
    try {
      cfg = to_separated(p, st);
    } catch (const Error&) {
      continue;
    }
    double x = cfg.lambdas[0].real(), y = cfg.lambdas[0].imag();
    double rs = std::max(1.0, std::pow(std::abs(cfg.lambdas[0]), 4));
    CHECK(std::abs(real_slice_R(p, h[0], h[1], x, y)) < 1e-9 * rs);
    CubicData cd = real_slice_cubic(p, h[0], h[1]);
    if (std::abs(2 * x - p.epsilons[0]) > 1e-3) {
      auto uv = cd.to_uv(x, y);
      CHECK(std::abs(cd.residual(uv[0], uv[1])) < 1e-9 * cubic_scale(uv[0], uv[1]));
      auto xy = cd.to_xy(uv[0], uv[1]);
      CHECK(std::abs(xy[0] - x) + std::abs(xy[1] - y) < 1e-9 * rs);
      Admissible a = admissible_range(p, h[0], h[1], x);
      CHECK(std::abs(a.bbarb - std::norm(st.b)) < 1e-8);
      CHECK(std::abs(a.s1z - st.spins[0].sz.real()) < 1e-8);
      CHECK(a.admissible);
      ++used;
    }
  }
  CHECK(used > 100);
}

TEST_CASE("near the unstable value: sampled slice satisfies the cubic") {
  ModelParams p = one_spin();
  double e = p.epsilons[0], s = p.s, r = 0.3;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 2 * M_PI);
  for (int k = 0; k < 5; ++k) {
    double th = u(rng);
    double H1 = 2 * s * e + r * std::sin(th), H2 = s + r * std::cos(th);
    CubicData cd = real_slice_cubic(p, H1, H2);
    double g2 = 4.0 / 3.0 * (H2 * H2 + 2 * e * e * H2 - 3 * e * H1 + e * e * e * e + 3 * s * s);
    CHECK(std::abs(cd.g2 - g2) < 1e-12 * std::max(1.0, std::abs(g2)));
    int pts = 0;
    for (auto& row : sample_real_slice(p, H1, H2, grid(-3, 3, 301))) {
      for (auto y : {row.yplus, row.yminus}) {
        if (!y) continue;
        CHECK(std::abs(real_slice_R(p, H1, H2, row.x, *y)) < 1e-9 * std::max(1.0, std::pow(row.x * row.x + *y * *y, 2)));
        auto uv = cd.to_uv(row.x, *y);
        CHECK(std::abs(cd.residual(uv[0], uv[1])) < 1e-9 * cubic_scale(uv[0], uv[1]));
        ++pts;
      }
    }
    CHECK(pts > 0);
  }
}

TEST_CASE("straight-line slice on H1 = 2 eps H2") {
  ModelParams p = one_spin();
  double e = p.epsilons[0];
  for (double H2 : {-0.3, 0.1, 0.8}) {
    for (double y : {-1.0, 0.0, 0.4, 2.0}) CHECK(std::abs(real_slice_R(p, 2 * e * H2, H2, e / 2, y)) < 1e-12);
    CHECK(std::abs(real_slice_R(p, 2 * e * H2, H2, e / 2 + 0.3, 0.2)) > 1e-6);
  }
}

TEST_CASE("critical cubic is singular") {
  ModelParams p = one_spin();
  double e = p.epsilons[0], s = p.s;
  CubicData cd = real_slice_cubic(p, 2 * e * s, s);
  CHECK(std::abs(cd.discriminant()) < 1e-10 * std::max(1.0, std::pow(cd.g2, 3)));
  CubicData gen = real_slice_cubic(p, 2 * e * s + 0.2, s - 0.1);
  CHECK(std::abs(gen.discriminant()) > 1e-6);
}

TEST_CASE("admissible range") {
  ModelParams p = one_spin();
  double e = p.epsilons[0], s = p.s;
  // pinched-torus segment
  for (double y : {0.0, 0.1, 0.2, 0.3, 0.5}) {
    Admissible a = admissible_range(p, 2 * e * s, s, e / 2, y);
    double bb = 2 * s - e * e - 4 * y * y;
    // off the segment only the fixed point b = 0 remains
    CHECK(std::abs(a.bbarb - std::max(bb, 0.0)) < 1e-12);
    CHECK(a.admissible);
  }
  // rank-one boundary points
  for (int eb : {1, -1}) {
    double disc = e * e - 2 * eb * s;
    if (disc < 0) continue;
    for (double xb : {e + std::sqrt(disc), e - std::sqrt(disc)}) {
      auto [h1, h2] = one_spin_boundary(p, xb);
      Admissible a = admissible_range(p, h1, h2, e - xb / 2, 0.0);
      CHECK(std::abs(a.bbarb) < 1e-12);
      CHECK(std::abs(a.s1z - eb * s) < 1e-12);
    }
  }
  Admissible g = admissible_range(p, 0.3, 0.2, 0.9);
  CHECK(std::abs(g.bbarb + g.s1z - 0.2) < 1e-14);
  CHECK_THROWS_AS(admissible_range(p, 0.3, 0.2, e / 2), Error);
  try {
    admissible_range(p, 0.3, 0.2, e / 2);
  } catch (const Error& err) {
    CHECK(err.code() == Code::PoleAtHalfLine);
  }
}

TEST_CASE("circle pencils") {
  ModelParams p = one_spin();
  double e = p.epsilons[0], s = p.s;
  CriticalPoint cu = make_critical_point(p, {1}), cs = make_critical_point(p, {-1});
  cplx E = cu.roots[0];
  for (double a : {-2.0, -0.4, 0.0, 0.3, 1.7, 25.0}) {
    Circle c = pencil_circle(p, 1, a);
    double tol = 1e-9 * std::max(1.0, std::abs(c.radius2));
    CHECK(c.contains(E, tol));
    CHECK(c.contains(std::conj(E), tol));
    double th = std::atan2(1.0, a);
    Circle ct = pencil_circle_theta(p, th);
    CHECK(std::abs(ct.center - c.center) < 1e-9 * std::max(1.0, std::abs(c.center)));
    CHECK(std::abs(ct.radius2 - c.radius2) < 1e-9 * std::max(1.0, std::abs(c.radius2)));
    // the stable family has the Bethe roots as limit points
    Circle st = pencil_circle(p, -1, a);
    double lam = st.center;
    double lhs = st.radius2, rhs = ((cs.roots[0] - lam) * (cs.roots[1] - lam)).real();
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(rhs)));
  }
  Circle c0 = pencil_circle(p, 1, 0.0);
  CHECK(std::abs(c0.center - e) < 1e-15);
  CHECK_THROWS_AS(pencil_circle(p, 1, 1.0 / (2 * e)), Error);
  (void)s;
}

TEST_CASE("slice factorizes near the critical value") {
  ModelParams p = one_spin();
  double e = p.epsilons[0], s = p.s;
  for (double th : {0.4, 1.3, 2.2}) {
    Circle c = pencil_circle_theta(p, th);
    if (c.radius2 <= 0) continue;
    auto worst = [&](double r) {
      double H1 = 2 * s * e + r * std::sin(th), H2 = s + r * std::cos(th), m = 0;
      for (int k = 0; k < 16; ++k) {
        double phi = 2 * M_PI * (k + 0.5) / 16;
        double x = c.center + std::sqrt(c.radius2) * std::cos(phi), y = std::sqrt(c.radius2) * std::sin(phi);
        m = std::max(m, std::abs(real_slice_R(p, H1, H2, x, y)));
      }
      return m;
    };
    double r1 = worst(1e-3), r2 = worst(5e-4);
    CHECK(r1 / r2 > 3.5);
    CHECK(r1 / r2 < 4.5);
  }
}

TEST_CASE("normal coordinates: only the ratio matters") {
  ModelParams p = one_spin();
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0, 1);
  for (int k = 0; k < 20; ++k) {
    cplx C1(g(rng), g(rng)), C2(g(rng), g(rng)), w(g(rng), g(rng));
    cplx a = lambda_from_normal(p, 1, C1, C2), b = lambda_from_normal(p, 1, w * C1, w * C2);
    CHECK(std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(a)));
  }
}
