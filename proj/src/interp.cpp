#include "vreg/interp.hpp"

namespace vreg {

namespace {

// Fractional position along one axis: wrapped base node and offset s in
// [0,1), snapped onto nodes within interp_snap_tol.
inline void axis_split(Real x, Real h, int n, int& base, Real& s) {
  Real u = x / h;
  u -= std::floor(u / Real(n)) * Real(n);  // wrap into [0, n)
  if (u < Real(0)) u = 0;
  if (u >= Real(n)) u -= Real(n);
  Real fl = std::floor(u);
  s = u - fl;
  base = int(fl);
  if (s < Real(interp_snap_tol)) {
    s = 0;
  } else if (s > Real(1) - Real(interp_snap_tol)) {
    s = 0;
    if (++base == n) base = 0;
  }
  if (base >= n) base -= n;
}

inline void cubic_weights(Real s, Real* w) {
  // Lagrange basis on offsets {-1, 0, 1, 2}
  const Real sm = s - 1;
  const Real sp = s + 1;
  const Real s2 = s - 2;
  w[0] = -s * sm * s2 / Real(6);
  w[1] = sp * sm * s2 / Real(2);
  w[2] = -sp * s * s2 / Real(2);
  w[3] = sp * s * sm / Real(6);
}

}  // namespace

void make_stencil(const Grid3& g, Real x1, Real x2, Real x3, int degree,
                  InterpStencil& s) {
  if (degree != 1 && degree != 3)
    throw parameter_error("interpolation degree must be 1 or 3");
  if (std::isnan(x1) || std::isnan(x2) || std::isnan(x3))
    throw input_error("NaN query coordinate");
  const Real xs[3] = {x1, x2, x3};
  int* idx[3] = {s.idx1, s.idx2, s.idx3};
  Real* w[3] = {s.w1, s.w2, s.w3};
  for (int a = 0; a < 3; ++a) {
    const int n = g.n(a);
    int base;
    Real frac;
    axis_split(xs[a], g.h(a), n, base, frac);
    if (degree == 1) {
      idx[a][0] = base;
      idx[a][1] = base + 1 == n ? 0 : base + 1;
      w[a][0] = Real(1) - frac;
      w[a][1] = frac;
    } else {
      for (int o = -1; o <= 2; ++o) {
        int t = base + o;
        if (t < 0) t += n;
        if (t >= n) t -= n;
        idx[a][o + 1] = t;
      }
      cubic_weights(frac, w[a]);
    }
  }
}

void interpolate_core(const ScalarField& f, const Real* xyz, index_t m,
                      int degree, Real* out) {
  const Grid3& g = f.grid;
  const Real* data = f.data();
  const index_t n2 = g.n2, n3 = g.n3;
  InterpStencil s;
  for (index_t p = 0; p < m; ++p) {
    make_stencil(g, xyz[3 * p], xyz[3 * p + 1], xyz[3 * p + 2], degree, s);
    out[p] = eval_stencil(s, degree, [&](int a, int b, int c) {
      return data[(index_t(s.idx1[a]) * n2 + s.idx2[b]) * n3 + s.idx3[c]];
    });
  }
}

std::vector<Real> interpolate(const ScalarField& f, const QueryPoints& q,
                              int degree) {
  if (!f.grid.same_space(q.grid)) throw dimension_error("query grid mismatch");
  std::vector<Real> out(size_t(q.count()));
  interpolate_core(f, q.xyz.data(), q.count(), degree, out.data());
  return out;
}

void scatter_transpose_add(ScalarField& acc, const Real* xyz, const Real* z,
                           index_t m, int degree) {
  const Grid3& g = acc.grid;
  Real* data = acc.data();
  const index_t n2 = g.n2, n3 = g.n3;
  const int nn = degree + 1;
  InterpStencil s;
  for (index_t p = 0; p < m; ++p) {
    make_stencil(g, xyz[3 * p], xyz[3 * p + 1], xyz[3 * p + 2], degree, s);
    const Real zp = z[p];
    for (int a = 0; a < nn; ++a)
      for (int b = 0; b < nn; ++b)
        for (int c = 0; c < nn; ++c)
          data[(index_t(s.idx1[a]) * n2 + s.idx2[b]) * n3 + s.idx3[c]] +=
              s.w1[a] * s.w2[b] * s.w3[c] * zp;
  }
}

std::vector<Real> InterpOps::evaluate(const ScalarField& f,
                                      const QueryPoints& q, int degree) const {
  if (counters) counters->ip_eval++;
  ScopedTimer t(timers ? &timers->sl : nullptr);
  return interpolate(f, q, degree);
}

void InterpOps::scatter_add(ScalarField& acc, const QueryPoints& q,
                            const Real* z, int degree) const {
  if (!acc.grid.same_space(q.grid)) throw dimension_error("query grid mismatch");
  if (counters) counters->ip_scatter++;
  ScopedTimer t(timers ? &timers->sl : nullptr);
  scatter_transpose_add(acc, q.xyz.data(), z, q.count(), degree);
}

}  // namespace vreg
