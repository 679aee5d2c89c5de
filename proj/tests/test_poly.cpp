#include <doctest.h>

#include <algorithm>
#include <random>

#include "djcg/poly.hpp"

using namespace djcg;

TEST_CASE("horner and coefficient access") {
  Poly p(CVec{1.0, -3.0, 2.0});  // 2x^2 - 3x + 1
  CHECK(std::abs(p(2.0) - 3.0) < 1e-15);
  CHECK(p.degree() == 2);
  CHECK(p.lead() == cplx(2.0));
  CHECK(p.coef(5) == cplx(0.0));
  Poly d = p.deriv();
  CHECK(std::abs(d(1.0) - 1.0) < 1e-15);
}

TEST_CASE("roots of from_roots recover the input") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    CVec r;
    int deg = 1 + trial % 7;
    for (int k = 0; k < deg; ++k) r.push_back(cplx(u(rng), u(rng)));
    Poly p = Poly::from_roots(r, cplx(3.0, -1.0));
    CVec z = roots(p);
    REQUIRE(z.size() == r.size());
    for (cplx a : r) {
      double best = 1e9;
      for (cplx b : z) best = std::min(best, std::abs(a - b));
      CHECK(best < 1e-9);
    }
  }
}

TEST_CASE("divmod satisfies num = q*den + r with deg r < deg den") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 30; ++trial) {
    CVec a(9), b(4);
    for (auto& c : a) c = cplx(u(rng), u(rng));
    for (auto& c : b) c = cplx(u(rng), u(rng));
    Poly num(a), den(b);
    DivMod dm = divmod(num, den);
    CHECK(dm.r.degree() < den.degree());
    Poly back = dm.q * den + dm.r;
    for (int k = 0; k <= num.degree(); ++k) CHECK(std::abs(back.coef(k) - num.coef(k)) < 1e-12);
  }
}

TEST_CASE("exact division leaves no remainder") {
  Poly f = Poly::from_roots({1.0, 2.0, cplx(0, 1)});
  Poly g = Poly::from_roots({1.0, cplx(0, 1)});
  DivMod dm = divmod(f, g);
  CHECK(dm.r.norm_inf() < 1e-14);
  CHECK(std::abs(dm.q(2.0)) < 1e-14);
}

TEST_CASE("interpolation reproduces nodes and low-degree polynomials") {
  CVec nodes{cplx(0.1, 0.2), -1.0, cplx(2, -1), 0.7};
  Poly target(CVec{0.5, cplx(0, 1), -2.0, 0.25});
  CVec vals;
  for (cplx x : nodes) vals.push_back(target(x));
  Poly p = interpolate(nodes, vals);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(p.coef(k) - target.coef(k)) < 1e-12);
  for (size_t i = 0; i < nodes.size(); ++i) {
    Poly L = lagrange_basis(nodes, static_cast<int>(i));
    for (size_t j = 0; j < nodes.size(); ++j) CHECK(std::abs(L(nodes[j]) - (i == j ? 1.0 : 0.0)) < 1e-12);
  }
}

TEST_CASE("trim drops negligible top coefficients") {
  Poly p(CVec{1.0, 2.0, 1e-20});
  p.trim();
  CHECK(p.degree() == 1);
}
