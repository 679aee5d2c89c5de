#pragma once

#include <optional>

#include "djcg/model_core.hpp"

namespace djcg {

struct SeparatedConfig {
  CVec lambdas;
  CVec mus;
  cplx bbar;
  std::optional<CVec> hvals;
};

SeparatedConfig to_separated(const ModelParams& p, const PhaseState& st);

// P_{n+1}(lambda) = A(lambda) prod(lambda - eps), fixed by its values at the lambda_k.
Poly build_P(const ModelParams& p, const SeparatedConfig& cfg);

// Needs cfg.hvals, or hn (the value of H_{n+1}) from which H_1..H_n are solved.
PhaseState from_separated(const ModelParams& p, const SeparatedConfig& cfg, double phase = 0.0,
                          std::optional<cplx> hn = std::nullopt);

CVec physical_flow_rhs(const ModelParams& p, const SeparatedConfig& cfg);
cplx u1_phase_rhs(const ModelParams& p, const SeparatedConfig& cfg);

// max over nodes of |P(lambda_k) - mu_k prod(lambda_k - eps)|, relative
double p_interpolation_residual(const ModelParams& p, const SeparatedConfig& cfg, const Poly& P);

// Rotation generated by H_{n+1}.
PhaseState u1_rotate(const PhaseState& st, double theta);

}  // namespace djcg
