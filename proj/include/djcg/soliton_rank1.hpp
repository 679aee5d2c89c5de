#pragma once

#include <array>
#include <vector>

#include "djcg/degenerate_curves.hpp"
#include "djcg/ode_oracle.hpp"
#include "djcg/sepvars.hpp"

namespace djcg {

struct Rank1SolitonSpec {
  DegenerateCurve curve;
  std::vector<int> frozen;  // indices into curve.doubles (conjugation closed, all real doubles)
  std::vector<int> active;  // unfrozen doubles: upper root then its conjugate, per pair
  CVec A, B, Beta, sq;      // per double: A_i, B_i (|B|>=1), B_i^eta = -1/B_i, (B - B^eta)/2
  CVec X0;                  // aligned with active
  double c = 0;             // sqrt|Delta| / 4
  int n0 = 0;
  double phase = 0;         // arg of bbar at t = 0 is -phase
};

// Pairs of complex doubles (upper index, lower index) in curve order.
std::vector<std::array<int, 2>> conjugate_pairs(const DegenerateCurve& curve);

Rank1SolitonSpec make_rank1_spec(const ModelParams& p, const DegenerateCurve& curve,
                                 const std::vector<int>& frozen_pairs, const CVec& X_upper, double phase = 0.0);
Rank1SolitonSpec make_rank1_spec_explicit(const ModelParams& p, const DegenerateCurve& curve,
                                          const std::vector<int>& frozen_pairs, const CVec& X_all,
                                          double phase = 0.0);
double rank1_reality_residual(const Rank1SolitonSpec& spec, const CVec& X);

// lambda(Lambda) and its two preimages.
cplx lambda_of(const Rank1SolitonSpec& spec, cplx Lam);
std::array<cplx, 2> uniformize(const Rank1SolitonSpec& spec, cplx lambda);
// 2 c^{n+1} (L + 1/L) prod (L - 1/L - 2 A_i)
cplx q_of_Lambda(const Rank1SolitonSpec& spec, cplx Lam);

CVec evolve_X1(const Rank1SolitonSpec& spec, double t);

struct Rank1Divisor {
  Poly Pplus;  // monic, degree n - n0, in Lambda
  CVec Lambdas;
  double cond = 0;
};
Rank1Divisor evolve_rank1(const Rank1SolitonSpec& spec, double t);

// S+ (degree N) and S- (degree N+2) from their interpolation data.
struct SPair {
  Poly Splus, Sminus;
};
SPair rank1_S(const Rank1SolitonSpec& spec, const Rank1Divisor& d);

SeparatedConfig rank1_separated(const ModelParams& p, const Rank1SolitonSpec& spec, const Rank1Divisor& d,
                                cplx bbar);

// arg bbar(t) + phase, integrated from the divisor motion.
double rank1_phase(const ModelParams& p, const Rank1SolitonSpec& spec, double t);

PhaseState reconstruct_rank1(const ModelParams& p, const Rank1SolitonSpec& spec, double t);

// |Delta|/4 / (prod Lambda prod conj Lambda)
double rank1_bbarb_compat(const Rank1SolitonSpec& spec, const Rank1Divisor& d);

// Two-spin closed form of P_3 at lambda for the unfrozen stratum.
cplx two_spin_P3(const Rank1SolitonSpec& spec, const Rank1Divisor& d, cplx lambda);
// Residuals of the two conjugation relations on (S, P) = (L1+L2, L1 L2).
std::array<double, 2> global_conjugation_residual(const Rank1SolitonSpec& spec, const Rank1Divisor& d);

Trajectory sample_trajectory_rank1(const ModelParams& p, const Rank1SolitonSpec& spec, double t0, double t1,
                                   double dt);

}  // namespace djcg
