#pragma once

#include <cmath>
#include <vector>

#include "vreg/grid.hpp"

namespace vreg {

// Real-valued volume on a Grid3, row-major with x3 innermost.
struct ScalarField {
  Grid3 grid;
  std::vector<Real> v;

  ScalarField() = default;
  explicit ScalarField(const Grid3& g) : grid(g), v(size_t(g.points()), Real(0)) {}

  Real& at(int i, int j, int k) { return v[size_t(grid.index(i, j, k))]; }
  Real at(int i, int j, int k) const { return v[size_t(grid.index(i, j, k))]; }
  index_t size() const { return index_t(v.size()); }
  Real* data() { return v.data(); }
  const Real* data() const { return v.data(); }
};

struct VectorField {
  ScalarField c1, c2, c3;

  VectorField() = default;
  explicit VectorField(const Grid3& g) : c1(g), c2(g), c3(g) {}

  const Grid3& grid() const { return c1.grid; }
  ScalarField& comp(int a) { return a == 0 ? c1 : (a == 1 ? c2 : c3); }
  const ScalarField& comp(int a) const {
    return a == 0 ? c1 : (a == 1 ? c2 : c3);
  }
};

// One scalar field per time step, nt+1 slices.
struct TimeSeries {
  Grid3 grid;
  std::vector<ScalarField> slices;

  TimeSeries() = default;
  explicit TimeSeries(const Grid3& g) : grid(g) {
    slices.assign(size_t(g.nt) + 1, ScalarField(g));
  }

  ScalarField& operator[](int t) { return slices[size_t(t)]; }
  const ScalarField& operator[](int t) const { return slices[size_t(t)]; }
  int steps() const { return int(slices.size()) - 1; }
  ScalarField& front() { return slices.front(); }
  ScalarField& back() { return slices.back(); }
  const ScalarField& back() const { return slices.back(); }
};

inline void check_same_grid(const ScalarField& a, const ScalarField& b) {
  if (!a.grid.same_space(b.grid))
    throw dimension_error("field grid mismatch");
}

inline void check_same_grid(const VectorField& a, const VectorField& b) {
  check_same_grid(a.c1, b.c1);
}

// ---- pointwise arithmetic ----

inline void fill(ScalarField& f, Real value) {
  for (auto& x : f.v) x = value;
}

inline void fill(VectorField& f, Real value) {
  fill(f.c1, value);
  fill(f.c2, value);
  fill(f.c3, value);
}

// y += a*x
inline void axpy(Real a, const ScalarField& x, ScalarField& y) {
  check_same_grid(x, y);
  const index_t n = x.size();
  for (index_t t = 0; t < n; ++t) y.v[size_t(t)] += a * x.v[size_t(t)];
}

inline void axpy(Real a, const VectorField& x, VectorField& y) {
  axpy(a, x.c1, y.c1);
  axpy(a, x.c2, y.c2);
  axpy(a, x.c3, y.c3);
}

inline void scale(ScalarField& f, Real a) {
  for (auto& x : f.v) x *= a;
}

inline void scale(VectorField& f, Real a) {
  scale(f.c1, a);
  scale(f.c2, a);
  scale(f.c3, a);
}

// out = a - b
inline void sub(const ScalarField& a, const ScalarField& b, ScalarField& out) {
  check_same_grid(a, b);
  out = a;
  axpy(Real(-1), b, out);
}

// out = a.*b (pointwise)
inline void hadamard(const ScalarField& a, const ScalarField& b,
                     ScalarField& out) {
  check_same_grid(a, b);
  if (!out.grid.same_space(a.grid)) out = ScalarField(a.grid);
  const index_t n = a.size();
  for (index_t t = 0; t < n; ++t)
    out.v[size_t(t)] = a.v[size_t(t)] * b.v[size_t(t)];
}

// out = v . w (pointwise dot of two vector fields)
inline void pointwise_dot(const VectorField& v, const VectorField& w,
                          ScalarField& out) {
  check_same_grid(v, w);
  if (!out.grid.same_space(v.grid())) out = ScalarField(v.grid());
  const index_t n = v.c1.size();
  for (index_t t = 0; t < n; ++t)
    out.v[size_t(t)] = v.c1.v[size_t(t)] * w.c1.v[size_t(t)] +
                       v.c2.v[size_t(t)] * w.c2.v[size_t(t)] +
                       v.c3.v[size_t(t)] * w.c3.v[size_t(t)];
}

// out += a * s .* w  (scalar field times vector field, accumulated)
inline void axpy_scaled_vector(Real a, const ScalarField& s,
                               const VectorField& w, VectorField& out) {
  check_same_grid(s, w.c1);
  check_same_grid(w, out);
  const index_t n = s.size();
  for (int c = 0; c < 3; ++c) {
    const Real* ws = w.comp(c).data();
    Real* os = out.comp(c).data();
    const Real* ss = s.data();
    for (index_t t = 0; t < n; ++t) os[size_t(t)] += a * ss[size_t(t)] * ws[size_t(t)];
  }
}

// ---- reductions ----
//
// All reductions fold per-x1-plane partial sums in plane order. The parallel
// runtime reproduces exactly this association (each worker owns whole planes
// and the fold order is global plane index), which keeps scalars bitwise
// independent of the worker count.

inline Real plane_folded_sum(const Grid3& g,
                             const std::vector<Real>& partial_per_plane) {
  Real total = 0;
  for (int i = 0; i < g.n1; ++i) total += partial_per_plane[size_t(i)];
  return total;
}

// L2 grid quadrature: sum(a*b) * h1*h2*h3 (rectangle rule).
inline Real inner(const ScalarField& a, const ScalarField& b) {
  check_same_grid(a, b);
  const Grid3& g = a.grid;
  const index_t plane = index_t(g.n2) * g.n3;
  Real total = 0;
  for (int i = 0; i < g.n1; ++i) {
    Real s = 0;
    const Real* pa = a.data() + i * plane;
    const Real* pb = b.data() + i * plane;
    for (index_t t = 0; t < plane; ++t) s += pa[size_t(t)] * pb[size_t(t)];
    total += s;
  }
  return total * g.cell_volume();
}

inline Real inner(const VectorField& a, const VectorField& b) {
  return inner(a.c1, b.c1) + inner(a.c2, b.c2) + inner(a.c3, b.c3);
}

inline Real norm2(const ScalarField& f) { return std::sqrt(inner(f, f)); }
inline Real norm2(const VectorField& f) { return std::sqrt(inner(f, f)); }

inline Real max_abs(const ScalarField& f) {
  Real m = 0;
  for (Real x : f.v) m = std::max(m, std::abs(x));
  return m;
}

inline Real max_abs(const VectorField& f) {
  return std::max({max_abs(f.c1), max_abs(f.c2), max_abs(f.c3)});
}

// Min/max over values, used for intensity normalization.
inline void min_max(const ScalarField& f, Real& lo, Real& hi) {
  lo = f.v.empty() ? Real(0) : f.v[0];
  hi = lo;
  for (Real x : f.v) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
}

// Rescale intensities to [0,1]; constant images map to 0.
inline void normalize_intensity(ScalarField& f) {
  Real lo, hi;
  min_max(f, lo, hi);
  const Real span = hi - lo;
  if (span <= Real(0)) {
    fill(f, Real(0));
    return;
  }
  for (auto& x : f.v) x = (x - lo) / span;
}

}  // namespace vreg
