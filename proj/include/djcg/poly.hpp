#pragma once

#include <complex>
#include <vector>

namespace djcg {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

// Dense polynomial, coefficients in ascending powers: c[k] multiplies x^k.
struct Poly {
  CVec c;

  Poly() = default;
  explicit Poly(CVec coeffs) : c(std::move(coeffs)) {}
  static Poly constant(cplx a) { return Poly(CVec{a}); }
  static Poly monomial(int k, cplx a = 1.0);
  static Poly from_roots(const CVec& roots, cplx lead = 1.0);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  cplx lead() const { return c.empty() ? cplx(0) : c.back(); }
  cplx operator()(cplx x) const;
  cplx coef(int k) const { return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : cplx(0); }

  Poly deriv() const;
  Poly& trim(double rel = 1e-12);
  double norm_inf() const;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(cplx k, const Poly& a);

// Quotient and remainder; the divisor's top coefficient must be nonzero.
struct DivMod {
  Poly q, r;
};
DivMod divmod(const Poly& num, const Poly& den);

// Roots via companion-matrix eigenvalues, then Newton polishing on p itself.
CVec roots(const Poly& p);

// Newton polish of z on f with derivative df; returns the polished point.
template <class F, class DF>
cplx newton_polish(cplx z, F f, DF df, int iters = 8) {
  for (int it = 0; it < iters; ++it) {
    cplx d = df(z);
    if (d == cplx(0)) break;
    cplx step = f(z) / d;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    z -= step;
    if (std::abs(step) <= 1e-17 * (1.0 + std::abs(z))) break;
  }
  return z;
}

// Lagrange basis polynomial L_i over nodes (L_i(x_j) = delta_ij).
Poly lagrange_basis(const CVec& nodes, int i);
// Interpolant of degree < nodes.size() through (nodes, vals).
Poly interpolate(const CVec& nodes, const CVec& vals);

}  // namespace djcg
