#pragma once

#include <string>
#include <vector>

#include "djcg/model_core.hpp"

namespace djcg {

enum class Stability { Elliptic, FocusFocus };
const char* stability_name(Stability s);

struct CriticalPoint {
  std::vector<int> signs;
  CVec roots;  // conjugate pairs first (Im>0 then partner), then real roots ascending
  int n_real = 0;
  int n_pairs = 0;
  Stability classification = Stability::Elliptic;
  CVec hcrit;
  bool borderline = false;  // some |Im E| sits within a decade of the real threshold
};

struct NormalForm {
  CVec aprime;
  CVec freqs;
  double hcp = 0;
};

// a(lambda) = 2 lambda + sum s e_j/(lambda - eps_j)
cplx bethe_a(const ModelParams& p, const std::vector<int>& signs, cplx lambda);
// 2 lambda prod(lambda-eps) + sum s e_j prod_{k!=j}(lambda-eps_k)
Poly bethe_poly(const ModelParams& p, const std::vector<int>& signs);

CVec solve_bethe(const ModelParams& p, const std::vector<int>& signs);
CriticalPoint make_critical_point(const ModelParams& p, const std::vector<int>& signs);
std::vector<CriticalPoint> enumerate_critical_points(const ModelParams& p);

NormalForm normal_form(const ModelParams& p, const CriticalPoint& cp);
PhaseState normal_reconstruct(const ModelParams& p, const CriticalPoint& cp, const CVec& Bcoef,
                              const CVec& Ccoef);

// Eigenvalues of the central-difference Jacobian of eom_rhs at st (complex-holomorphic
// in the packed variables, dimension 3n+2).
CVec jacobian_eigenvalues(const ModelParams& p, const PhaseState& st, double h = 1e-6);

std::vector<int> parse_signs(const std::string& text);

}  // namespace djcg
