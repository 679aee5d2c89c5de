#include "djcg/poly.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace djcg {

Poly Poly::monomial(int k, cplx a) {
  CVec c(k + 1, 0.0);
  c[k] = a;
  return Poly(c);
}

Poly Poly::from_roots(const CVec& rts, cplx lead) {
  CVec c{lead};
  for (cplx r : rts) {
    CVec n(c.size() + 1, 0.0);
    for (size_t k = 0; k < c.size(); ++k) {
      n[k + 1] += c[k];
      n[k] -= r * c[k];
    }
    c.swap(n);
  }
  return Poly(c);
}

cplx Poly::operator()(cplx x) const {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::deriv() const {
  if (c.size() <= 1) return Poly::constant(0.0);
  CVec d(c.size() - 1);
  for (size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
  return Poly(d);
}

double Poly::norm_inf() const {
  double m = 0;
  for (cplx a : c) m = std::max(m, std::abs(a));
  return m;
}

Poly& Poly::trim(double rel) {
  double tol = rel * norm_inf();
  while (c.size() > 1 && std::abs(c.back()) <= tol) c.pop_back();
  return *this;
}

Poly operator+(const Poly& a, const Poly& b) {
  CVec c(std::max(a.c.size(), b.c.size()), 0.0);
  for (size_t k = 0; k < a.c.size(); ++k) c[k] += a.c[k];
  for (size_t k = 0; k < b.c.size(); ++k) c[k] += b.c[k];
  return Poly(c);
}

Poly operator-(const Poly& a, const Poly& b) { return a + cplx(-1.0) * b; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.c.empty() || b.c.empty()) return Poly::constant(0.0);
  CVec c(a.c.size() + b.c.size() - 1, 0.0);
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
  return Poly(c);
}

Poly operator*(cplx k, const Poly& a) {
  Poly r = a;
  for (auto& x : r.c) x *= k;
  return r;
}

DivMod divmod(const Poly& num, const Poly& den) {
  int dn = num.degree(), dd = den.degree();
  if (dn < dd) return {Poly::constant(0.0), num};
  CVec r = num.c;
  CVec q(dn - dd + 1, 0.0);
  cplx lead = den.c.back();
  for (int k = dn - dd; k >= 0; --k) {
    cplx f = r[k + dd] / lead;
    q[k] = f;
    for (int j = 0; j <= dd; ++j) r[k + j] -= f * den.c[j];
  }
  r.resize(std::max(dd, 1));
  if (dd == 0) r.assign(1, 0.0);
  return {Poly(q), Poly(r)};
}

CVec roots(const Poly& p0) {
  Poly p = p0;
  p.trim(1e-14);
  int n = p.degree();
  if (n < 1) return {};
  if (n == 1) return {-p.c[0] / p.c[1]};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -p.c[i] / p.c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  CVec out(n);
  Poly dp = p.deriv();
  for (int i = 0; i < n; ++i)
    out[i] = newton_polish(es.eigenvalues()(i), [&](cplx z) { return p(z); },
                           [&](cplx z) { return dp(z); });
  return out;
}

Poly lagrange_basis(const CVec& nodes, int i) {
  CVec others;
  cplx den = 1.0;
  for (size_t j = 0; j < nodes.size(); ++j) {
    if (static_cast<int>(j) == i) continue;
    others.push_back(nodes[j]);
    den *= nodes[i] - nodes[j];
  }
  return (1.0 / den) * Poly::from_roots(others);
}

Poly interpolate(const CVec& nodes, const CVec& vals) {
  Poly acc = Poly::constant(0.0);
  for (size_t i = 0; i < nodes.size(); ++i)
    acc = acc + vals[i] * lagrange_basis(nodes, static_cast<int>(i));
  return acc;
}

}  // namespace djcg
