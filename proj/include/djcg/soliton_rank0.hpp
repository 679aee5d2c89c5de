#pragma once

#include <vector>

#include "djcg/critical_points.hpp"
#include "djcg/ode_oracle.hpp"
#include "djcg/sepvars.hpp"

namespace djcg {

struct Rank0SolitonSpec {
  CriticalPoint cp;
  std::vector<int> frozen_pairs;  // pair indices into cp (pair k = roots 2k, 2k+1)
  std::vector<int> active;        // indices into cp.roots of unfrozen roots
  CVec X0;                        // aligned with active
  int n0 = 0, n_minus = 0, n_plus = 0;
  double phase = 0;               // global U(1) angle at t = 0
};

// X_upper holds X_l(0) for the upper root of every unfrozen pair, in pair order;
// partners are filled from the reality constraint.
Rank0SolitonSpec make_rank0_spec(const CriticalPoint& cp, const std::vector<int>& frozen_pairs,
                                 const CVec& X_upper, double phase = 0.0);
// Every active constant given explicitly (upper, partner per pair); the reality
// constraint is checked rather than imposed.
Rank0SolitonSpec make_rank0_spec_explicit(const CriticalPoint& cp, const std::vector<int>& frozen_pairs,
                                          const CVec& X_all, double phase = 0.0);

double rank0_reality_residual(const Rank0SolitonSpec& spec);

CVec evolve_X(const ModelParams& p, const Rank0SolitonSpec& spec, double t);

struct Divisor {
  Poly Pminus, Pplus;  // monic
  cplx bbar;
  double cond = 0;     // condition estimate after row equilibration
};
Divisor solve_divisor(const ModelParams& p, const Rank0SolitonSpec& spec, double t);

// bbar = (-1)^{n+} D_0 / D_{n+1} from the two determinants of size N.
cplx bbar_determinants(const ModelParams& p, const Rank0SolitonSpec& spec, double t);

// n = 3, n0 = 0: (lambda_0, sigma_1, sigma_2, bbar) from the four-by-four determinants.
struct ThreeSpinDet {
  cplx lambda0, sigma1, sigma2, bbar;
};
ThreeSpinDet three_spin_determinants(const ModelParams& p, const Rank0SolitonSpec& spec, double t);

// Separated data on the rank-zero fiber at time t (lambdas with their branch mus).
SeparatedConfig rank0_separated(const ModelParams& p, const Rank0SolitonSpec& spec, double t);

PhaseState reconstruct_rank0(const ModelParams& p, const Rank0SolitonSpec& spec, double t);

// bbar b through the lambda^- residue sum.
cplx rank0_bbarb_formula(const ModelParams& p, const Rank0SolitonSpec& spec, double t);

// Asymptotic normal-mode prediction for bbar(t), t -> +infinity.
cplx rank0_asymptotic_bbar(const ModelParams& p, const Rank0SolitonSpec& spec, double t);

Trajectory sample_trajectory(const ModelParams& p, const Rank0SolitonSpec& spec, double t0, double t1, double dt);

}  // namespace djcg
