#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "djcg/model_core.hpp"

namespace djcg::testing {

inline ModelParams one_spin() { return ModelParams{{-0.707}, 0.5, 0.0}; }
inline ModelParams two_spins() { return ModelParams{{-1.2, -1.735}, 0.5, 0.0}; }
inline ModelParams three_spins() { return ModelParams{{-3.0, -2.7, 0.5}, 0.5, 0.0}; }

// Physical state: spins of length s in random directions, oscillator of modest amplitude.
inline PhaseState random_state(const ModelParams& p, std::mt19937_64& rng, double bmax = 1.0) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PhaseState st;
  double r = bmax * std::sqrt(u(rng)), ph = 2 * M_PI * u(rng);
  st.b = std::polar(r, ph);
  st.bbar = std::conj(st.b);
  for (int j = 0; j < p.n(); ++j) {
    std::array<double, 3> v{g(rng), g(rng), g(rng)};
    double nv = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    for (auto& c : v) c *= p.s / nv;
    cplx sp(v[0], v[1]);
    st.spins.push_back(Spin{v[2], sp, std::conj(sp)});
  }
  return st;
}

inline double state_dev(const PhaseState& a, const PhaseState& b) {
  double d = std::max(std::abs(a.b - b.b), std::abs(a.bbar - b.bbar));
  for (size_t j = 0; j < a.spins.size(); ++j) {
    d = std::max(d, std::abs(a.spins[j].sz - b.spins[j].sz));
    d = std::max(d, std::abs(a.spins[j].sp - b.spins[j].sp));
    d = std::max(d, std::abs(a.spins[j].sm - b.spins[j].sm));
  }
  return d;
}

// Hamiltonians from real spin vectors, written out independently of the library.
inline std::vector<double> vector_hamiltonians(const ModelParams& p, const PhaseState& st) {
  int n = p.n();
  std::vector<double> h(n + 1, 0.0);
  h[n] = std::norm(st.b);
  for (int j = 0; j < n; ++j) {
    double xj = st.spins[j].sp.real(), yj = st.spins[j].sp.imag(), zj = st.spins[j].sz.real();
    double v = 2 * p.epsilons[j] * zj + 2 * (st.b * st.spins[j].sp).real();
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      double xk = st.spins[k].sp.real(), yk = st.spins[k].sp.imag(), zk = st.spins[k].sz.real();
      v += (xj * xk + yj * yk + zj * zk) / (p.epsilons[j] - p.epsilons[k]);
    }
    h[j] = v;
    h[n] += zj;
  }
  return h;
}

}  // namespace djcg::testing
