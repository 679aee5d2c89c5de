#pragma once

#include <optional>
#include <string>
#include <vector>

#include "djcg/model_core.hpp"

namespace djcg {

struct DegenerateCurve {
  int m = -1;
  std::vector<double> pcoeffs;  // monic p_{2m+2}, ascending
  CVec doubles;                 // n-m double roots
  std::vector<int> alphas;      // per spin, +-1
  CVec hvals;
  Poly q;
  double x = 0;  // family parameter (m = 0): x = alpha_1 s / sqrt(p2(eps_1))

  // m = 0 only: b1^2 - 4 b0
  double delta() const { return pcoeffs[1] * pcoeffs[1] - 4.0 * pcoeffs[0]; }
};

DegenerateCurve build_rank0_curve(const ModelParams& p, const std::vector<int>& signs);

struct ConsistencyReport {
  bool ok = true;
  int failed_index = -1;  // 1: vanishing sums, 2: normalisation, 3: b_{2m+1} relation, 0: Lagrange form
  double max_residual = 0;
  std::vector<double> residuals;
};

// Throws Inconsistent when a condition fails and InvalidM when m < 0.
ConsistencyReport check_consistency(const ModelParams& p, const DegenerateCurve& c, double tol = 1e-9);

// f(b1) = b1 + sum_j alpha_j s / sqrt(p2(eps_j)) along the family; zero on a valid curve.
double rank1_residual(const ModelParams& p, double x, double b1, const std::vector<int>& alphas);

// Curve from (x, b1, alphas) once the compatibility relation holds.
DegenerateCurve rank1_curve(const ModelParams& p, double x, double b1, const std::vector<int>& alphas);

// All m = 0 curves at the given x; alpha_1 = sign(x) and the other alphas free unless fixed.
std::vector<DegenerateCurve> rank1_at(const ModelParams& p, double x,
                                      const std::optional<std::vector<int>>& alphas = std::nullopt);

struct FamilyPoint {
  double x;
  DegenerateCurve curve;
};
std::vector<FamilyPoint> rank1_family(const ModelParams& p, const std::vector<double>& xs,
                                      const std::optional<std::vector<int>>& alphas = std::nullopt);

std::vector<double> default_x_grid(const ModelParams& p, int count = 400);

// Two-spin closed forms.
struct TwoSpinRank1 {
  double x, y;
  double a0, a1, b0, b1;
  double H1, H2, H3;
};
// Real roots y of the S1 constraint at fixed x.
std::vector<double> s1_roots(const ModelParams& p, double x);
double s1_residual(const ModelParams& p, double x, double y);
TwoSpinRank1 two_spin_rank1(const ModelParams& p, double x, double y);

// One-spin boundary: (H1, H2) of the rank-one curve at parameter x.
std::pair<double, double> one_spin_boundary(const ModelParams& p, double x);

std::vector<int> parse_alphas(const std::string& text);

}  // namespace djcg
