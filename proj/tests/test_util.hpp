#pragma once

#include <cmath>
#include <random>

#include "vreg/field.hpp"

namespace vreg::testing {

// Band-limited random field: a handful of low-frequency trigonometric
// modes with seeded amplitudes. Smooth enough that discretization-order
// checks behave.
inline ScalarField random_smooth_field(const Grid3& g, std::uint32_t seed,
                                       int kmax = 3, int nmodes = 8) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> ki(-kmax, kmax);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, two_pi);
  ScalarField f(g);
  for (int m = 0; m < nmodes; ++m) {
    const double a = amp(rng);
    const double k1 = ki(rng), k2 = ki(rng), k3 = ki(rng);
    const double p1 = phase(rng), p2 = phase(rng), p3 = phase(rng);
    for (int i = 0; i < g.n1; ++i) {
      const double x1 = i * double(g.h(0));
      for (int j = 0; j < g.n2; ++j) {
        const double x2 = j * double(g.h(1));
        for (int k = 0; k < g.n3; ++k) {
          const double x3 = k * double(g.h(2));
          f.at(i, j, k) += Real(a * std::cos(k1 * x1 + p1) *
                                std::cos(k2 * x2 + p2) *
                                std::cos(k3 * x3 + p3));
        }
      }
    }
  }
  return f;
}

inline VectorField random_smooth_vfield(const Grid3& g, std::uint32_t seed,
                                        int kmax = 3, int nmodes = 8) {
  VectorField v(g);
  v.c1 = random_smooth_field(g, seed, kmax, nmodes);
  v.c2 = random_smooth_field(g, seed + 101, kmax, nmodes);
  v.c3 = random_smooth_field(g, seed + 202, kmax, nmodes);
  return v;
}

inline ScalarField white_noise_field(const Grid3& g, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ScalarField f(g);
  for (auto& x : f.v) x = Real(u(rng));
  return f;
}

inline Real max_abs_diff(const ScalarField& a, const ScalarField& b) {
  Real m = 0;
  for (size_t i = 0; i < a.v.size(); ++i)
    m = std::max(m, std::abs(a.v[i] - b.v[i]));
  return m;
}

inline Real max_abs_diff(const VectorField& a, const VectorField& b) {
  return std::max({max_abs_diff(a.c1, b.c1), max_abs_diff(a.c2, b.c2),
                   max_abs_diff(a.c3, b.c3)});
}

}  // namespace vreg::testing
