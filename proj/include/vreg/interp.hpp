#pragma once

#include <cmath>
#include <vector>

#include "vreg/counters.hpp"
#include "vreg/field.hpp"

namespace vreg {

// Off-grid evaluation points in radians; coordinates are wrapped into
// [0, 2*pi) per axis. Stored interleaved (x1,x2,x3) per point.
struct QueryPoints {
  Grid3 grid;
  std::vector<Real> xyz;

  QueryPoints() = default;
  explicit QueryPoints(const Grid3& g, index_t m = 0)
      : grid(g), xyz(size_t(3 * m), Real(0)) {}

  index_t count() const { return index_t(xyz.size()) / 3; }
  Real* point(index_t p) { return xyz.data() + 3 * p; }
  const Real* point(index_t p) const { return xyz.data() + 3 * p; }
};

// Tensor-product Lagrange stencil of one query point: wrapped global node
// indices and weights per axis. degree 1 uses entries [0,1], degree 3 all.
struct InterpStencil {
  int idx1[4];
  int idx2[4];
  int idx3[4];
  Real w1[4];
  Real w2[4];
  Real w3[4];
};

// Queries within snap_tol grid units of a node collapse onto it, so
// evaluation at a grid point returns the stored value exactly.
inline constexpr double interp_snap_tol = 1e-12;

void make_stencil(const Grid3& g, Real x1, Real x2, Real x3, int degree,
                  InterpStencil& s);

// Evaluation core shared by the serial and distributed paths. fetch(a,b,c)
// must return f at (idx1[a], idx2[b], idx3[c]); the accumulation order is
// fixed so both paths produce bitwise-identical values.
template <class Fetch>
inline Real eval_stencil(const InterpStencil& s, int degree, Fetch&& fetch) {
  const int nn = degree + 1;
  Real acc1 = 0;
  for (int a = 0; a < nn; ++a) {
    Real acc2 = 0;
    for (int b = 0; b < nn; ++b) {
      Real acc3 = 0;
      for (int c = 0; c < nn; ++c) acc3 += s.w3[c] * fetch(a, b, c);
      acc2 += s.w2[b] * acc3;
    }
    acc1 += s.w1[a] * acc2;
  }
  return acc1;
}

void interpolate_core(const ScalarField& f, const Real* xyz, index_t m,
                      int degree, Real* out);

std::vector<Real> interpolate(const ScalarField& f, const QueryPoints& q,
                              int degree);

// Exact transpose of interpolate: acc[node] += sum_p weight(p,node) * z[p].
void scatter_transpose_add(ScalarField& acc, const Real* xyz, const Real* z,
                           index_t m, int degree);

struct InterpOps {
  KernelCounters* counters = nullptr;
  KernelTimers* timers = nullptr;

  std::vector<Real> evaluate(const ScalarField& f, const QueryPoints& q,
                             int degree) const;
  void scatter_add(ScalarField& acc, const QueryPoints& q, const Real* z,
                   int degree) const;
};

}  // namespace vreg
