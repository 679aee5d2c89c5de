#include <doctest.h>

#include <random>

#include "djcg/critical_points.hpp"
#include "djcg/errors.hpp"
#include "djcg/sepvars.hpp"
#include "djcg/soliton_rank0.hpp"
#include "djcg/soliton_rank1.hpp"
#include "support.hpp"

using namespace djcg;
using namespace djcg::testing;

TEST_CASE("one spin: lambda from s+ = 2 bbar (eps - lambda)") {
  ModelParams p = one_spin();
  std::mt19937_64 rng(2);
  PhaseState st = random_state(p, rng);
  SeparatedConfig cfg = to_separated(p, st);
  REQUIRE(cfg.lambdas.size() == 1);
  cplx lam = p.epsilons[0] - st.spins[0].sp / (2.0 * st.bbar);
  CHECK(std::abs(cfg.lambdas[0] - lam) < 1e-12);
  Poly P = build_P(p, cfg);
  cplx sz = (p.epsilons[0] - cfg.lambdas[0]) * (2.0 * cfg.lambdas[0] - cfg.mus[0]);
  CHECK(std::abs(sz - st.spins[0].sz) < 1e-12);
  CHECK(std::abs(P(p.epsilons[0]) - sz) < 1e-12);
}

TEST_CASE("complexified n=2: C vanishes at the separated variables") {
  ModelParams p = two_spins();
  std::mt19937_64 rng(4);
  PhaseState st = random_state(p, rng);
  st.bbar *= cplx(0.8, 0.5);
  st.spins[0].sp *= cplx(1.1, 0.3);
  SeparatedConfig cfg = to_separated(p, st);
  for (cplx l : cfg.lambdas) CHECK(std::abs(eval_lax(p, st, l).C) < 1e-10);
}

TEST_CASE("oscillator at rest has no separated chart") {
  ModelParams p = two_spins();
  std::mt19937_64 rng(6);
  PhaseState st = random_state(p, rng);
  st.b = st.bbar = 0.0;
  CHECK_THROWS_AS(to_separated(p, st), Error);
  try {
    to_separated(p, st);
  } catch (const Error& e) {
    CHECK(e.code() == Code::OscillatorZero);
  }
}

TEST_CASE("build_P: leading terms and node interpolation") {
  ModelParams p = three_spins();
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    SeparatedConfig cfg = to_separated(p, random_state(p, rng));
    Poly P = build_P(p, cfg);
    CHECK(P.degree() == p.n() + 1);
    CHECK(std::abs(P.lead() - 2.0) < 1e-12);
    CHECK(std::abs(P.coef(p.n()) - (-2.0 * (-3.0 - 2.7 + 0.5))) < 1e-10);
    CHECK(p_interpolation_residual(p, cfg, P) < 1e-10);
  }
  SeparatedConfig bad{{0.3, 0.3, 1.0}, {1.0, 2.0, 3.0}, 1.0, std::nullopt};
  CHECK_THROWS_AS(build_P(p, bad), Error);
}

TEST_CASE("fully degenerate torus with + branch: P = 2 prod(lambda - E)") {
  ModelParams p = two_spins();
  CriticalPoint cp = make_critical_point(p, {1, 1});
  Poly F = Poly::from_roots(cp.roots, 2.0), e = eps_poly(p);
  SeparatedConfig cfg;
  cfg.bbar = 1.0;
  for (cplx l : {cplx(0.3, 0.1), cplx(-0.4, 0.9)}) {
    cfg.lambdas.push_back(l);
    cfg.mus.push_back(F(l) / e(l));
  }
  Poly P = build_P(p, cfg);
  for (int k = 0; k <= 3; ++k) CHECK(std::abs(P.coef(k) - F.coef(k)) < 1e-12);
}

TEST_CASE("separated flows") {
  ModelParams p = one_spin();
  CriticalPoint cp = make_critical_point(p, {1});
  cplx E = cp.roots[0], Eb = cp.roots[1];
  cplx l(-0.35, 0.2);
  SeparatedConfig cfg{{l}, {-2.0 * (l - E) * (l - Eb) / (l - p.epsilons[0])}, 1.0, std::nullopt};
  CVec d = physical_flow_rhs(p, cfg);
  // minus branch on the unstable one-spin fiber
  CHECK(std::abs(d[0] - cplx(0, -2) * (l - E) * (l - Eb)) < 1e-13);

  SeparatedConfig frozen{{E}, {0.0}, 1.0, std::nullopt};
  CHECK(std::abs(physical_flow_rhs(p, frozen)[0]) == 0.0);

  ModelParams q = two_spins();
  q.omega = 0.3;
  double se = -1.2 - 1.735;
  SeparatedConfig still{{cplx(0.1, 0.4), se + q.omega / 2 - cplx(0.1, 0.4)}, {1.0, 1.0}, 1.0, std::nullopt};
  CHECK(std::abs(u1_phase_rhs(q, still)) < 1e-14);
}

TEST_CASE("phase rhs is the logarithmic derivative of bbar") {
  ModelParams p = three_spins();
  p.omega = 0.7;
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    PhaseState st = random_state(p, rng);
    cplx r = eom_rhs(p, st).bbar / st.bbar;
    CHECK(std::abs(u1_phase_rhs(p, to_separated(p, st)) - r) < 1e-10 * std::max(1.0, std::abs(r)));
  }
}

TEST_CASE("from_separated error paths") {
  ModelParams p = two_spins();
  std::mt19937_64 rng(12);
  PhaseState st = random_state(p, rng);
  SeparatedConfig cfg = to_separated(p, st);
  SeparatedConfig neg = cfg;
  (*neg.hvals)[2] -= 50.0;
  try {
    from_separated(p, neg);
    FAIL("negative oscillator energy accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Code::NegativeBB);
  }
  SeparatedConfig off = cfg;
  off.mus[0] += 0.1;
  try {
    from_separated(p, off);
    FAIL("inconsistent mu accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Code::DivisionRemainder);
  }
}

TEST_CASE("H_{n+1} alone suffices for reconstruction") {
  ModelParams p = three_spins();
  std::mt19937_64 rng(14);
  PhaseState st = random_state(p, rng);
  SeparatedConfig cfg = to_separated(p, st);
  cplx hn = (*cfg.hvals)[3];
  cfg.hvals.reset();
  PhaseState back = from_separated(p, cfg, 0.0, hn);
  CHECK(state_dev(back, st) < 1e-9 * p.scale());
}

TEST_CASE("u1 rotation acts on the phase only") {
  ModelParams p = two_spins();
  std::mt19937_64 rng(16);
  PhaseState st = random_state(p, rng);
  PhaseState r = u1_rotate(st, 0.8);
  CVec h0 = eval_hamiltonians(p, st), h1 = eval_hamiltonians(p, r);
  for (size_t k = 0; k < h0.size(); ++k) CHECK(std::abs(h0[k] - h1[k]) < 1e-13);
  SeparatedConfig a = to_separated(p, st), b = to_separated(p, r);
  for (size_t k = 0; k < a.lambdas.size(); ++k) {
    double best = 1e9;
    for (cplx z : b.lambdas) best = std::min(best, std::abs(z - a.lambdas[k]));
    CHECK(best < 1e-10);
  }
}

TEST_CASE("frozen root: a real double root of Q pins a separated variable") {
  ModelParams p = two_spins();
  auto curves = rank1_at(p, 0.8029);
  bool tested = false;
  for (auto& c : curves) {
    if (!conjugate_pairs(c).empty()) continue;
    Rank1SolitonSpec sp = make_rank1_spec(p, c, {}, {});
    PhaseState st = reconstruct_rank1(p, sp, 0.0);
    if (std::norm(st.b) <= 1e-6) continue;
    SeparatedConfig cfg = to_separated(p, st);
    for (cplx E : c.doubles) {
      double best = 1e9;
      for (cplx l : cfg.lambdas) best = std::min(best, std::abs(l - E));
      CHECK(best < 1e-6);
    }
    tested = true;
  }
  CHECK(tested);
}

// Randomized property suites (also summarized by the acceptance binary).
TEST_CASE("property: roundtrip, Casimir restoration, interpolation, division remainder") {
  std::mt19937_64 rng(2024);
  for (auto p : {one_spin(), two_spins(), three_spins()}) {
    for (int trial = 0; trial < 200; ++trial) {
      PhaseState st = random_state(p, rng);
      if (std::abs(st.bbar) < 1e-3) continue;
      SeparatedConfig cfg = to_separated(p, st);
      Poly P = build_P(p, cfg);
      CHECK(p_interpolation_residual(p, cfg, P) < 1e-10);

      SpectralPolynomial sq = spectral_from_hvals(p, *cfg.hvals);
      Poly den = Poly::from_roots(cfg.lambdas);
      DivMod dm = divmod(sq.q - P * P, den);
      CHECK(dm.r.norm_inf() < 1e-8 * sq.q.norm_inf());

      PhaseState back = from_separated(p, cfg);
      double phase = std::arg(st.bbar) - std::arg(back.bbar);
      back = u1_rotate(back, -phase);
      CHECK(state_dev(back, st) < 1e-9 * p.scale());
      CHECK(back.casimir_residual(p.s) < 1e-9);
    }
  }
}
