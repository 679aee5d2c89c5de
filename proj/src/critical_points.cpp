#include "djcg/critical_points.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "djcg/errors.hpp"

namespace djcg {

const char* stability_name(Stability s) { return s == Stability::Elliptic ? "elliptic" : "focus-focus"; }

cplx bethe_a(const ModelParams& p, const std::vector<int>& signs, cplx lambda) {
  cplx a = 2.0 * lambda;
  for (int j = 0; j < p.n(); ++j) a += p.s * signs[j] / (lambda - p.epsilons[j]);
  return a;
}

static cplx bethe_da(const ModelParams& p, const std::vector<int>& signs, cplx lambda) {
  cplx d = 2.0;
  for (int j = 0; j < p.n(); ++j) {
    cplx u = lambda - p.epsilons[j];
    d -= p.s * signs[j] / (u * u);
  }
  return d;
}

Poly bethe_poly(const ModelParams& p, const std::vector<int>& signs) {
  Poly e = eps_poly(p);
  Poly q = Poly(CVec{0.0, 2.0}) * e;
  for (int j = 0; j < p.n(); ++j) {
    CVec r;
    for (int k = 0; k < p.n(); ++k)
      if (k != j) r.push_back(p.epsilons[k]);
    q = q + cplx(p.s * signs[j]) * Poly::from_roots(r);
  }
  return q;
}

CVec solve_bethe(const ModelParams& p, const std::vector<int>& signs) {
  p.validate();
  if (static_cast<int>(signs.size()) != p.n()) throw Error(Code::InvalidInput, "sign vector length must equal n");
  double sc = p.scale();
  CVec raw = roots(bethe_poly(p, signs));
  for (auto& z : raw)
    z = newton_polish(z, [&](cplx x) { return bethe_a(p, signs, x); },
                      [&](cplx x) { return bethe_da(p, signs, x); });
  for (size_t i = 0; i < raw.size(); ++i)
    for (size_t j = i + 1; j < raw.size(); ++j)
      if (std::abs(raw[i] - raw[j]) < 1e-8 * sc) throw Error(Code::DegenerateBethe, "multiple classical Bethe root");

  const double thr = 1e-8 * sc;
  std::vector<double> reals;
  CVec upper, lower;
  for (cplx z : raw) {
    if (std::abs(z.imag()) < thr)
      reals.push_back(z.real());
    else if (z.imag() > 0)
      upper.push_back(z);
    else
      lower.push_back(z);
  }
  if (upper.size() != lower.size()) throw Error(Code::DegenerateBethe, "unpaired complex Bethe root");
  std::vector<std::pair<cplx, cplx>> pairs;
  std::vector<bool> used(lower.size(), false);
  for (cplx u : upper) {
    int best = -1;
    double bd = 1e300, second = 1e300;
    for (size_t k = 0; k < lower.size(); ++k) {
      if (used[k]) continue;
      double d = std::abs(u - std::conj(lower[k]));
      if (d < bd) {
        second = bd;
        bd = d;
        best = static_cast<int>(k);
      } else if (d < second) {
        second = d;
      }
    }
    if (best < 0) throw Error(Code::DegenerateBethe, "conjugate pairing failed");
    if (second - bd < 1e-8 * sc && second < 1e300) throw Error(Code::DegenerateBethe, "ambiguous conjugate pairing");
    used[best] = true;
    cplx m = 0.5 * (u + std::conj(lower[best]));
    pairs.push_back({m, std::conj(m)});
  }
  std::sort(pairs.begin(), pairs.end(), [](auto& a, auto& b) {
    return a.first.real() != b.first.real() ? a.first.real() < b.first.real() : a.first.imag() < b.first.imag();
  });
  std::sort(reals.begin(), reals.end());
  CVec out;
  for (auto& pr : pairs) {
    out.push_back(pr.first);
    out.push_back(pr.second);
  }
  for (double r : reals) out.push_back(r);
  return out;
}

CriticalPoint make_critical_point(const ModelParams& p, const std::vector<int>& signs) {
  CriticalPoint cp;
  cp.signs = signs;
  cp.roots = solve_bethe(p, signs);
  double thr = 1e-8 * p.scale();
  for (cplx z : cp.roots) {
    if (z.imag() == 0.0)
      ++cp.n_real;
    else if (z.imag() > 0)
      ++cp.n_pairs;
    if (z.imag() != 0.0 && std::abs(z.imag()) < 10 * thr) cp.borderline = true;
  }
  cp.classification = cp.n_pairs == 0 ? Stability::Elliptic : Stability::FocusFocus;
  cp.hcrit = eval_hamiltonians(p, critical_state(p, signs));
  return cp;
}

std::vector<CriticalPoint> enumerate_critical_points(const ModelParams& p) {
  p.validate();
  int n = p.n();
  if (n > 20) throw Error(Code::InvalidInput, "enumeration limited to n <= 20");
  std::vector<CriticalPoint> out;
  // bit j of mask set means e_j = -1; mask 0 is all up
  for (long mask = 0; mask < (1L << n); ++mask) {
    std::vector<int> sg(n);
    for (int j = 0; j < n; ++j) sg[j] = (mask >> j) & 1 ? -1 : 1;
    out.push_back(make_critical_point(p, sg));
  }
  return out;
}

NormalForm normal_form(const ModelParams& p, const CriticalPoint& cp) {
  NormalForm nf;
  int m = static_cast<int>(cp.roots.size());
  double sc = p.scale();
  for (int i = 0; i < m; ++i) {
    cplx E = cp.roots[i];
    cplx ap = bethe_da(p, cp.signs, E);
    cplx prod = 2.0;
    for (int j = 0; j < m; ++j)
      if (j != i) prod *= E - cp.roots[j];
    for (double e : p.epsilons) prod /= E - e;
    if (std::abs(ap) <= 1e-8 * sc) throw Error(Code::DegenerateBethe, "a'(E) vanishes");
    if (std::abs(ap - prod) > 1e-9 * std::abs(ap))
      throw Error(Code::Inconsistent, "a'(E) sum and product forms disagree");
    nf.aprime.push_back(ap);
    nf.freqs.push_back(p.omega + 2.0 * E);
  }
  nf.hcp = eval_physical_H(p, critical_state(p, cp.signs)).real();
  return nf;
}

PhaseState normal_reconstruct(const ModelParams& p, const CriticalPoint& cp, const CVec& Bc, const CVec& Cc) {
  size_t m = cp.roots.size();
  if (Bc.size() != m || Cc.size() != m) throw Error(Code::InvalidInput, "need n+1 normal coordinates");
  NormalForm nf = normal_form(p, cp);
  PhaseState st{0.0, 0.0, {}};
  for (size_t i = 0; i < m; ++i) {
    st.b += Bc[i] / nf.aprime[i];
    st.bbar += Cc[i] / nf.aprime[i];
  }
  for (int j = 0; j < p.n(); ++j) {
    double se = p.s * cp.signs[j];
    cplx sm = 0.0, sp = 0.0;
    for (size_t i = 0; i < m; ++i) {
      cplx w = nf.aprime[i] * (p.epsilons[j] - cp.roots[i]);
      sm += Bc[i] / w;
      sp += Cc[i] / w;
    }
    sm *= se;
    sp *= se;
    cplx sz = se - (cp.signs[j] / (2.0 * p.s)) * sp * sm;
    st.spins.push_back({sz, sp, sm});
  }
  return st;
}

CVec jacobian_eigenvalues(const ModelParams& p, const PhaseState& st, double h) {
  CVec y = pack(st);
  int d = static_cast<int>(y.size());
  Eigen::MatrixXcd J(d, d);
  for (int k = 0; k < d; ++k) {
    CVec yp = y, ym = y;
    yp[k] += h;
    ym[k] -= h;
    CVec fp = pack(eom_rhs(p, unpack(yp))), fm = pack(eom_rhs(p, unpack(ym)));
    for (int i = 0; i < d; ++i) J(i, k) = (fp[i] - fm[i]) / (2.0 * h);
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(J, false);
  CVec ev(d);
  for (int i = 0; i < d; ++i) ev[i] = es.eigenvalues()(i);
  return ev;
}

std::vector<int> parse_signs(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok == "+" || tok == "+1" || tok == "1" || tok == "up")
      out.push_back(1);
    else if (tok == "-" || tok == "-1" || tok == "down")
      out.push_back(-1);
    else
      throw Error(Code::InvalidInput, "bad sign token '" + tok + "'");
  }
  if (out.empty()) throw Error(Code::InvalidInput, "empty sign list");
  return out;
}

}  // namespace djcg
