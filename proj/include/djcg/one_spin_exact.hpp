#pragma once

#include <array>
#include <optional>
#include <vector>

#include "djcg/model_core.hpp"

namespace djcg {

// Weierstrass form v^2 = 4u^3 - g2 u - g3 of the one-spin real slice.
struct CubicData {
  double g2 = 0, g3 = 0;
  double eps = 0, H1 = 0, H2 = 0;

  // (u, v) -> (x, y) with lambda_1 = x + i y, and back.
  std::array<double, 2> to_xy(double u, double v) const;
  std::array<double, 2> to_uv(double x, double y) const;
  double residual(double u, double v) const { return v * v - (4 * u * u * u - g2 * u - g3); }
  double discriminant() const { return g2 * g2 * g2 - 27 * g3 * g3; }
};

CubicData real_slice_cubic(const ModelParams& p, double H1, double H2);

// Reality relation R(x, y) of the one-spin slice.
double real_slice_R(const ModelParams& p, double H1, double H2, double x, double y);

struct Admissible {
  double bbarb = 0;
  double s1z = 0;
  bool admissible = false;
};
// On the line H1 = 2 eps H2 the oscillator energy is not fixed by x alone; pass y there.
Admissible admissible_range(const ModelParams& p, double H1, double H2, double x,
                            std::optional<double> y = std::nullopt);

struct SliceRow {
  double x;
  std::optional<double> yplus, yminus;
  bool admissible;
};
// y^2 from R at each x (R is linear in x^2 + y^2); rows with y^2 < 0 keep empty y.
std::vector<SliceRow> sample_real_slice(const ModelParams& p, double H1, double H2, const std::vector<double>& xs);

struct Circle {
  double center = 0;   // on the real axis
  double radius2 = 0;  // may be negative for virtual circles of a pencil
  bool contains(cplx z, double tol) const { return std::abs(std::norm(z - center) - radius2) <= tol; }
};
Circle pencil_circle(const ModelParams& p, int e1, double alpha);
// Unstable pencil written with a direction angle theta of the approach to the critical value.
Circle pencil_circle_theta(const ModelParams& p, double theta);

// lambda_1 from normal coordinates at the critical point with sign e1.
cplx lambda_from_normal(const ModelParams& p, int e1, cplx C1, cplx C2);

}  // namespace djcg
