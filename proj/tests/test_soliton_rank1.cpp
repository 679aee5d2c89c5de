#include <doctest.h>

#include <cmath>
#include <random>

#include "djcg/errors.hpp"
#include "djcg/soliton_rank1.hpp"
#include "support.hpp"

using namespace djcg;
using namespace djcg::testing;

namespace {

// First curve at x whose doubles are one conjugate pair.
DegenerateCurve complex_curve(const ModelParams& p, double x) {
  for (auto& c : rank1_at(p, x)) {
    int nc = 0;
    for (cplx z : c.doubles) nc += z.imag() != 0.0;
    if (nc == 2) return c;
  }
  FAIL("no curve with complex doubles at x = " << x);
  return {};
}

DegenerateCurve real_curve(const ModelParams& p, double x) {
  for (auto& c : rank1_at(p, x)) {
    bool real = true;
    for (cplx z : c.doubles) real &= z.imag() == 0.0;
    if (real) return c;
  }
  FAIL("no curve with real doubles at x = " << x);
  return {};
}

double recover_y(const ModelParams& p, const DegenerateCurve& c) {
  double e1 = p.epsilons[0], e2 = p.epsilons[1];
  double a0 = (c.doubles[0] * c.doubles[1]).real();
  return (2 * e1 * e2 - 2 * a0 - e2 * c.x) / e1;
}

double set_dev(const CVec& a, const CVec& b) {
  double d = 0;
  for (cplx z : a) {
    double m = 1e300;
    for (cplx w : b) m = std::min(m, std::abs(z - w));
    d = std::max(d, m);
  }
  return d;
}

}  // namespace

TEST_CASE("uniformization and the hyperelliptic involution") {
  ModelParams p = two_spins();
  Rank1SolitonSpec sp = make_rank1_spec(p, complex_curve(p, 0.37), {}, {cplx(1.0, 0.3)});
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0, 1);
  for (int k = 0; k < 10; ++k) {
    cplx L(g(rng), g(rng));
    cplx lam = lambda_of(sp, L);
    cplx q = q_of_Lambda(sp, L);
    CHECK(std::abs(q * q - sp.curve.q(lam)) < 1e-9 * std::max(1.0, std::abs(q * q)));
    CHECK(std::abs(q_of_Lambda(sp, -1.0 / L) + q) < 1e-9 * std::max(1.0, std::abs(q)));
    CHECK(std::abs(lambda_of(sp, -1.0 / L) - lam) < 1e-12 * std::max(1.0, std::abs(lam)));
    auto pre = uniformize(sp, lam);
    CHECK(std::abs(lambda_of(sp, pre[0]) - lam) < 1e-10 * std::max(1.0, std::abs(lam)));
    CHECK(std::abs(pre[0] * pre[1] + 1.0) < 1e-10);
  }
  auto c = uniformize(sp, -0.5 * sp.curve.pcoeffs[1]);
  CHECK(std::abs(std::abs(c[0]) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(c[1]) - 1.0) < 1e-12);
  for (size_t i = 0; i < sp.B.size(); ++i) {
    CHECK(std::abs(sp.B[i]) >= 1.0 - 1e-12);
    CHECK(std::abs(sp.B[i] * sp.Beta[i] + 1.0) < 1e-14);
    // B and its partner map to the double root
    CHECK(std::abs(lambda_of(sp, sp.B[i]) - sp.curve.doubles[i]) < 1e-10);
    CHECK(std::abs(lambda_of(sp, sp.Beta[i]) - sp.curve.doubles[i]) < 1e-10);
  }
}

TEST_CASE("spec validation") {
  ModelParams p = two_spins();
  DegenerateCurve c = complex_curve(p, 0.37);
  CHECK_THROWS_AS(make_rank1_spec(p, c, {}, {}), Error);
  CHECK_THROWS_AS(make_rank1_spec(p, c, {3}, {}), Error);
  Rank1SolitonSpec sp = make_rank1_spec(p, c, {}, {cplx(0.7, -0.2)});
  CHECK(rank1_reality_residual(sp, sp.X0) < 1e-13);
  CVec bad = sp.X0;
  bad[1] *= cplx(1.0, 0.01);
  try {
    make_rank1_spec_explicit(p, c, {}, bad);
    FAIL("accepted a bad constant");
  } catch (const Error& e) {
    CHECK(e.code() == Code::RealityViolation);
  }
  DegenerateCurve r0 = build_rank0_curve(p, {-1, 1});
  try {
    make_rank1_spec(p, r0, {}, {});
    FAIL("accepted a rank-zero curve");
  } catch (const Error& e) {
    CHECK(e.code() == Code::InvalidM);
  }
  // real doubles are always frozen, so nothing else to supply
  Rank1SolitonSpec g = make_rank1_spec(p, real_curve(p, 0.8029), {}, {});
  CHECK(g.active.empty());
  CHECK(g.n0 == 2);
}

TEST_CASE("reality constraint is time invariant") {
  ModelParams p = two_spins();
  Rank1SolitonSpec sp = make_rank1_spec(p, complex_curve(p, 1.16), {}, {cplx(-0.4, 1.1)});
  for (double t : {-7.0, -2.0, 0.0, 0.4, 3.3, 9.0}) {
    CVec X = evolve_X1(sp, t);
    CHECK(rank1_reality_residual(sp, X) < 1e-9);
  }
}

TEST_CASE("unfrozen stratum: divisor identities") {
  ModelParams p = two_spins();
  for (double x : {0.37, 1.16}) {
    Rank1SolitonSpec sp = make_rank1_spec(p, complex_curve(p, x), {}, {cplx(1.0, 0.3)});
    for (double t : {-3.0, -0.5, 0.0, 1.3, 4.0}) {
      Rank1Divisor d = evolve_rank1(sp, t);
      CHECK(d.Pplus.degree() == 2);
      CHECK(std::abs(d.Pplus.lead() - 1.0) < 1e-14);
      CVec X = evolve_X1(sp, t);
      for (size_t k = 0; k < sp.active.size(); ++k) {
        int i = sp.active[k];
        cplx lhs = d.Pplus(sp.B[i]), rhs = X[k] * d.Pplus(sp.Beta[i]);
        double mag = std::max({1.0, std::abs(lhs), std::pow(std::abs(sp.B[i]), 2)});
        CHECK(std::abs(lhs - rhs) < 1e-9 * mag * std::max(1.0, std::abs(X[k])));
      }
      auto gc = global_conjugation_residual(sp, d);
      CHECK(gc[0] < 1e-8);
      CHECK(gc[1] < 1e-8);

      SPair S = rank1_S(sp, d);
      CHECK(std::abs(S.Sminus.coef(0)) + std::abs(S.Sminus.coef(1)) < 1e-12);
      Poly shifted(CVec(S.Sminus.c.begin() + 2, S.Sminus.c.end()));
      CVec zp = roots(S.Splus), zm = roots(shifted);
      for (auto& z : zm) z = -1.0 / z;
      CHECK(set_dev(zp, zm) < 1e-8);
      CHECK(set_dev(zm, zp) < 1e-8);

      PhaseState st = reconstruct_rank1(p, sp, t);
      CHECK(reality_defect(st) < 1e-9 * p.scale());
      double bb = (st.bbar * st.b).real();
      CHECK(std::abs((st.bbar * st.b).imag()) < 1e-9);
      CHECK(bb > -1e-9);
      CHECK(std::abs(bb - rank1_bbarb_compat(sp, d)) < 1e-9 * std::max(1.0, bb));
      auto h = vector_hamiltonians(p, st);
      for (int k = 0; k <= p.n(); ++k) CHECK(std::abs(h[k] - sp.curve.hvals[k].real()) < 1e-8 * p.scale());

      SeparatedConfig cfg = rank1_separated(p, sp, d, st.bbar);
      Poly P = build_P(p, cfg);
      for (double l : {0.3, -1.0, 2.0}) CHECK(std::abs(P(l) - two_spin_P3(sp, d, l)) < 1e-9 * std::max(1.0, std::abs(P(l))));
    }
  }
}

TEST_CASE("frozen stratum: uniform rotation") {
  ModelParams p = two_spins();
  double e1 = p.epsilons[0], e2 = p.epsilons[1];
  for (auto [x, green] : {std::pair{0.8029, true}, std::pair{0.37, false}}) {
    DegenerateCurve c = green ? real_curve(p, x) : complex_curve(p, x);
    Rank1SolitonSpec sp = green ? make_rank1_spec(p, c, {}, {}) : make_rank1_spec(p, c, {0}, {});
    double y = recover_y(p, c);
    double s1 = 0.5 * x * (2 * e1 - x - y), s2 = 0.5 * y * (2 * e2 - x - y);
    Trajectory tr = sample_trajectory_rank1(p, sp, -4.0, 4.0, 0.5);
    REQUIRE(!tr.states.empty());
    for (auto& st : tr.states) {
      CHECK(std::abs(st.spins[0].sz - s1) < 1e-9);
      CHECK(std::abs(st.spins[1].sz - s2) < 1e-9);
      CHECK(std::abs(st.bbar * st.b - (c.hvals[2] - s1 - s2)) < 1e-9);
    }
    if (green) {
      // a green circle is a genuine physical orbit
      for (auto& st : tr.states) CHECK(st.is_physical(1e-9));
      IntegratorConfig cfg;
      CHECK(compare(tr, p, cfg, 0.0).max_dev < 1e-8);
    }
  }
}

TEST_CASE("unfrozen stratum: agreement with direct integration") {
  ModelParams p = two_spins();
  Rank1SolitonSpec sp = make_rank1_spec(p, complex_curve(p, 0.37), {}, {cplx(1.0, 0.3)});
  Trajectory tr = sample_trajectory_rank1(p, sp, -6.0, 6.0, 0.25);
  CHECK(tr.gaps.empty());
  for (size_t k = 0; k < tr.times.size(); ++k) {
    CHECK(tr.h_drift[k] < 1e-8);
    CHECK(tr.max_imag[k] < 1e-9 * p.scale());
    CHECK(tr.Lambdas[k].size() == 2);
  }
  IntegratorConfig cfg;
  CHECK(compare(tr, p, cfg, 0.0).max_dev < 1e-6);
}

TEST_CASE("unfrozen stratum: asymptotes to the frozen circle") {
  ModelParams p = two_spins();
  DegenerateCurve c = complex_curve(p, 0.37);
  // |X| = |B|^3 puts the pulse centre near t = 0
  double bmag = std::abs(make_rank1_spec(p, c, {}, {1.0}).B[0]);
  Rank1SolitonSpec sp = make_rank1_spec(p, c, {}, {std::pow(bmag, 3)});
  for (double sgn : {1.0, -1.0}) {
    double prev = 1e300;
    for (double T : {12.0, 24.0, 36.0, 48.0}) {
      Rank1Divisor d = evolve_rank1(sp, sgn * T);
      CVec lam;
      for (cplx L : d.Lambdas) lam.push_back(lambda_of(sp, L));
      double dev = set_dev(lam, c.doubles);
      CHECK(dev < prev);
      prev = dev;
    }
    CHECK(prev < 1e-3);
  }
}
