#include <doctest.h>

#include <cmath>
#include <random>

#include "djcg/critical_points.hpp"
#include "djcg/errors.hpp"
#include "djcg/ode_oracle.hpp"
#include "djcg/soliton_rank0.hpp"
#include "support.hpp"

using namespace djcg;
using namespace djcg::testing;

TEST_CASE("fixed point stays put") {
  for (auto p : {one_spin(), two_spins(), three_spins()}) {
    for (auto& cp : enumerate_critical_points(p)) {
      PhaseState st = critical_state(p, cp.signs);
      auto out = integrate_to(p, st, 0.0, {3.0, 1.0}, IntegratorConfig{});
      auto back = integrate_to(p, st, 0.0, {-2.0}, IntegratorConfig{});
      out.push_back(back[0]);
      for (auto& s : out) CHECK(state_dev(s, st) < 1e-14);
    }
  }
}

TEST_CASE("generic two-spin state: conserved quantities over t = 20") {
  ModelParams p = two_spins();
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 3; ++trial) {
    PhaseState st = random_state(p, rng, 1.0);
    auto h0 = vector_hamiltonians(p, st);
    Trajectory tr = integrate(p, st, 20.0, IntegratorConfig{}, 1.0);
    REQUIRE(tr.states.size() == 21);
    for (auto& s : tr.states) {
      auto h = vector_hamiltonians(p, s);
      for (size_t k = 0; k < h.size(); ++k) CHECK(std::abs(h[k] - h0[k]) < 1e-8 * std::max(1.0, std::abs(h0[k])));
      CHECK(s.casimir_residual(p.s) < 20 * 1e-10);
      CHECK(reality_defect(s) < 1e-9);
    }
    CHECK(tr.h_drift.back() < 1e-8);
  }
}

TEST_CASE("Casimir drift per unit time") {
  ModelParams p = three_spins();
  std::mt19937_64 rng(2);
  PhaseState st = random_state(p, rng, 0.8);
  double T = 10.0;
  auto out = integrate_to(p, st, 0.0, {T}, IntegratorConfig{});
  double worst = 0;
  for (auto& sp : out[0].spins) worst = std::max(worst, std::abs(sp.sz * sp.sz + sp.sp * sp.sm - p.s * p.s));
  CHECK(worst / T < 1e-10 * p.s * p.s);
}

TEST_CASE("error shrinks with the tolerance at the pair's rate") {
  // small oscillation about the stable one-spin point
  ModelParams p = one_spin();
  CriticalPoint cp = make_critical_point(p, {-1});
  CVec B(2, 0.0), C(2, 0.0);
  B[0] = 0.05;
  C[0] = 0.05;
  PhaseState st = normal_reconstruct(p, cp, B, C);
  IntegratorConfig ref;
  ref.rel_tol = 1e-13;
  ref.abs_tol = 1e-15;
  ref.max_step = 10.0;
  PhaseState truth = integrate_to(p, st, 0.0, {10.0}, ref)[0];
  std::vector<double> errs;
  for (double tol : {1e-6, 1e-7, 1e-8}) {
    IntegratorConfig c;
    c.rel_tol = tol;
    c.abs_tol = tol * 1e-2;
    c.max_step = 10.0;
    errs.push_back(state_dev(integrate_to(p, st, 0.0, {10.0}, c)[0], truth));
  }
  for (size_t k = 0; k + 1 < errs.size(); ++k) {
    double ratio = errs[k] / errs[k + 1];
    // tolerance proportionality: a decade of tol is worth roughly a decade of error
    CHECK(ratio > 3.0);
    CHECK(ratio < 40.0);
  }
}

TEST_CASE("linearized normal modes over a short time") {
  ModelParams p = two_spins();
  CriticalPoint cp = make_critical_point(p, {-1, -1});
  REQUIRE(cp.classification == Stability::Elliptic);
  double xi = 1e-4;
  CVec B0(3), C0(3);
  for (int i = 0; i < 3; ++i) {
    B0[i] = xi * cplx(0.3 + 0.2 * i, -0.1 * i);
    C0[i] = std::conj(B0[i]);
  }
  PhaseState st = normal_reconstruct(p, cp, B0, C0);
  CHECK(st.is_physical(1e-12));
  std::vector<double> ts = {0.5, 1.0, 2.0};
  auto out = integrate_to(p, st, 0.0, ts, IntegratorConfig{});
  for (size_t k = 0; k < ts.size(); ++k) {
    CVec B(3), C(3);
    for (int i = 0; i < 3; ++i) {
      cplx w = cplx(0, 1) * (p.omega + 2.0 * cp.roots[i]) * ts[k];
      C[i] = C0[i] * std::exp(w);
      B[i] = B0[i] * std::exp(-w);
    }
    CHECK(state_dev(out[k], normal_reconstruct(p, cp, B, C)) < 1e-6);
  }
}

TEST_CASE("cross-check against the one-spin soliton") {
  ModelParams p = one_spin();
  CriticalPoint cp = make_critical_point(p, {1});
  Rank0SolitonSpec sp = make_rank0_spec(cp, {}, {0.5});
  Trajectory tr = sample_trajectory(p, sp, -10.0, 10.0, 0.5);
  CompareReport rep = compare(tr, p, IntegratorConfig{}, 0.0);
  CHECK(rep.max_dev < 1e-6);
  CHECK(std::abs(rep.anchor_time) < 1e-12);
}

TEST_CASE("negative control: a corrupted sample is flagged") {
  ModelParams p = two_spins();
  CriticalPoint cp = make_critical_point(p, {-1, 1});
  Rank0SolitonSpec sp = make_rank0_spec(cp, {}, {0.5});
  Trajectory tr = sample_trajectory(p, sp, -4.0, 4.0, 0.5);
  CompareReport clean = compare(tr, p, IntegratorConfig{}, 0.0);
  CHECK(clean.max_dev < 1e-6);
  size_t k = tr.times.size() - 3;
  tr.states[k].b += 1e-3;
  CompareReport bad = compare(tr, p, IntegratorConfig{}, 0.0);
  CHECK(bad.max_dev > 5e-4);
  CHECK(bad.worst_time == doctest::Approx(tr.times[k]));
}

TEST_CASE("integrator input checks") {
  ModelParams p = one_spin();
  PhaseState st = critical_state(p, {1});
  IntegratorConfig bad;
  bad.rel_tol = -1.0;
  CHECK_THROWS_AS(integrate(p, st, 1.0, bad), Error);
}
