#pragma once

#include <string>
#include <vector>

#include "djcg/poly.hpp"

namespace djcg {

struct ModelParams {
  std::vector<double> epsilons;
  double s = 0.5;
  double omega = 0.0;

  int n() const { return static_cast<int>(epsilons.size()); }
  // max(1, max|eps_j|, s); every tolerance in the library is relative to this.
  double scale() const;
  // Throws InvalidInput on n<1, s<=0 or coincident levels.
  void validate() const;
};

ModelParams params_from_json(const std::string& text);
ModelParams load_params(const std::string& path);

// sz is stored complex so that complexified states share the same type.
struct Spin {
  cplx sz, sp, sm;
};

struct PhaseState {
  cplx b, bbar;
  std::vector<Spin> spins;

  bool is_physical(double tol = 1e-10) const;
  // max_j |sz^2 + s+ s- - s^2| / s^2
  double casimir_residual(double s) const;
};

// Flat layout used by the integrator: b, bbar, then (sz, s+, s-) per spin.
CVec pack(const PhaseState& st);
PhaseState unpack(const CVec& y);

// Static configuration b = bbar = 0, s^pm = 0, sz_j = e_j s.
PhaseState critical_state(const ModelParams& p, const std::vector<int>& signs);

// (H_1..H_n, H_{n+1}).
CVec eval_hamiltonians(const ModelParams& p, const PhaseState& st);
cplx eval_physical_H(const ModelParams& p, const PhaseState& st);

struct Lax {
  cplx A, B, C;
};
Lax eval_lax(const ModelParams& p, const PhaseState& st, cplx lambda);

PhaseState eom_rhs(const ModelParams& p, const PhaseState& st);

struct SpectralPolynomial {
  CVec hvals;  // H_1..H_{n+1}
  Poly q;      // Q_{2n+2}, ascending; leading coefficient 4
};

SpectralPolynomial spectral_from_hvals(const ModelParams& p, const CVec& hvals);
// Inverse map: reads H_1..H_{n+1} off a Q of the admissible shape.
CVec hvals_from_q(const ModelParams& p, const Poly& q);
// prod_j (lambda - eps_j)
Poly eps_poly(const ModelParams& p);
// Q(lambda)/prod(lambda-eps)^2 evaluated through the partial-fraction form.
cplx spectral_rational(const ModelParams& p, const CVec& hvals, cplx lambda);

}  // namespace djcg
