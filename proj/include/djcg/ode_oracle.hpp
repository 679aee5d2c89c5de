#pragma once

#include <string>
#include <vector>

#include "djcg/model_core.hpp"

namespace djcg {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.1;
  int monitor_every = 1;
  // Land steps exactly on requested times; otherwise interpolate by cubic Hermite.
  bool hit_targets = true;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<PhaseState> states;
  std::vector<CVec> lambdas;      // separated variables per sample (may be empty)
  std::vector<CVec> Lambdas;      // uniformizing coordinates, rank-one only
  std::vector<double> max_imag;   // max |Im| of fields that must be real / conjugate
  std::vector<double> h_drift;    // max_k |H_k(t) - H_k(ref)| / max(1,|H_k|)
  std::vector<CVec> hvals;
  std::vector<double> gaps;       // times skipped (ill-conditioned chart)
};

double reality_defect(const PhaseState& st);

struct IntegrationStats {
  long accepted = 0, rejected = 0;
};

// Integrate from st0 at time t0 and report states at the requested times (any order
// relative to t0 on one side). Dense output by cubic Hermite between accepted steps.
std::vector<PhaseState> integrate_to(const ModelParams& p, const PhaseState& st0, double t0,
                                     const std::vector<double>& ts, const IntegratorConfig& cfg,
                                     IntegrationStats* stats = nullptr);

// Trajectory on [0, t1] sampled every dt (or at accepted steps if dt <= 0).
Trajectory integrate(const ModelParams& p, const PhaseState& st0, double t1, const IntegratorConfig& cfg,
                     double dt = 0.0);

struct CompareReport {
  double max_dev = 0;       // sup over samples and fields, absolute
  double max_rel_dev = 0;   // same, divided by max(1,|field|)
  std::vector<double> field_dev;  // per packed component
  std::vector<double> h_dev;      // per conserved quantity, numerical trajectory
  double worst_time = 0;
  double anchor_time = 0;
  long steps = 0;
};

// Seed the oracle from the analytic sample nearest `anchor` (default: first sample)
// and integrate outwards in both directions.
CompareReport compare(const Trajectory& analytic, const ModelParams& p, const IntegratorConfig& cfg,
                      double anchor = std::nan(""));

}  // namespace djcg
