#include "vreg/syn.hpp"

#include <cmath>

#include "vreg/transport.hpp"

namespace vreg {

ScalarField syn_template(const Grid3& g) {
  ScalarField f(g);
  for (int i = 0; i < g.n1; ++i) {
    const Real x1 = Real(i) * g.h(0);
    for (int j = 0; j < g.n2; ++j) {
      const Real x2 = Real(j) * g.h(1);
      for (int k = 0; k < g.n3; ++k) {
        const Real x3 = Real(k) * g.h(2);
        const Real s1 = std::sin(x1), s2 = std::sin(x2), s3 = std::sin(x3);
        f.at(i, j, k) = (s1 * s1 + s2 * s2 + s3 * s3) / Real(3);
      }
    }
  }
  return f;
}

VectorField syn_velocity(const Grid3& g) {
  // component c built from the pair (i,k): sin(x_i) cos(x_k) sin(x_k),
  // pairs (3,2), (1,3), (2,1); each component is independent of its own
  // coordinate, so the field is divergence free.
  VectorField v(g);
  for (int i = 0; i < g.n1; ++i) {
    const Real x1 = Real(i) * g.h(0);
    for (int j = 0; j < g.n2; ++j) {
      const Real x2 = Real(j) * g.h(1);
      for (int k = 0; k < g.n3; ++k) {
        const Real x3 = Real(k) * g.h(2);
        const index_t t = g.index(i, j, k);
        v.c1.v[size_t(t)] = std::sin(x3) * std::cos(x2) * std::sin(x2);
        v.c2.v[size_t(t)] = std::sin(x1) * std::cos(x3) * std::sin(x3);
        v.c3.v[size_t(t)] = std::sin(x2) * std::cos(x1) * std::sin(x1);
      }
    }
  }
  return v;
}

ScalarField syn_reference(const Grid3& g, int degree) {
  TimeSeries m = solve_state(syn_velocity(g), syn_template(g), degree);
  return m.back();
}

}  // namespace vreg
