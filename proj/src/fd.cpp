#include "vreg/fd.hpp"

#include <cstring>

namespace vreg {

std::vector<double> central_difference_weights(int half_width, int deriv) {
  // Fornberg's recursion for finite-difference weights at z = 0 on the
  // nodes x_j = -hw..hw. Returns the row for the requested derivative.
  const int n = 2 * half_width;  // highest node index
  const int m = deriv;
  std::vector<double> x(size_t(n) + 1);
  for (int i = 0; i <= n; ++i) x[size_t(i)] = double(i - half_width);

  std::vector<std::vector<double>> c(size_t(n) + 1,
                                     std::vector<double>(size_t(m) + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0];
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[size_t(i)];
    for (int j = 0; j <= i - 1; ++j) {
      const double c3 = x[size_t(i)] - x[size_t(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[size_t(i)][size_t(k)] =
              c1 * (k * c[size_t(i) - 1][size_t(k) - 1] -
                    c5 * c[size_t(i) - 1][size_t(k)]) /
              c2;
        c[size_t(i)][0] = -c1 * c5 * c[size_t(i) - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[size_t(j)][size_t(k)] =
            (c4 * c[size_t(j)][size_t(k)] - k * c[size_t(j)][size_t(k) - 1]) /
            c3;
      c[size_t(j)][0] = c4 * c[size_t(j)][0] / c3;
    }
    c1 = c2;
  }

  std::vector<double> out(size_t(n) + 1);
  for (int i = 0; i <= n; ++i) out[size_t(i)] = c[size_t(i)][size_t(m)];
  return out;
}

const std::array<Real, 9>& fd8_weights() {
  static const std::array<Real, 9> w = [] {
    auto d = central_difference_weights(fd_half_width, 1);
    std::array<Real, 9> a{};
    for (int i = 0; i < 9; ++i) a[size_t(i)] = Real(d[size_t(i)]);
    return a;
  }();
  return w;
}

// The stencil is applied in paired antisymmetric form
// sum_j c_j (f_{+j} - f_{-j}), which makes derivatives of constants exactly
// zero and the operator exactly skew-adjoint.
void fd_axis1_padded(const Real* padded, int w, int n2, int n3, Real hinv,
                     Real* out) {
  const auto& c = fd8_weights();
  const index_t plane = index_t(n2) * n3;
  for (int i = 0; i < w; ++i) {
    const Real* base = padded + index_t(i + 4) * plane;  // centered on node i
    Real* o = out + index_t(i) * plane;
    for (index_t t = 0; t < plane; ++t) {
      Real acc = 0;
      for (int j = 1; j <= 4; ++j)
        acc += c[size_t(4 + j)] *
               (base[index_t(j) * plane + t] - base[-index_t(j) * plane + t]);
      o[t] = acc * hinv;
    }
  }
}

void fd_axis_inplane(const Real* data, int w, int n2, int n3, int axis,
                     Real hinv, Real* out) {
  const auto& c = fd8_weights();
  const index_t plane = index_t(n2) * n3;
  if (axis == 1) {
    for (int i = 0; i < w; ++i) {
      const Real* p = data + index_t(i) * plane;
      Real* o = out + index_t(i) * plane;
      const Real* rows[9];
      for (int j = 0; j < n2; ++j) {
        for (int s = 0; s < 9; ++s)
          rows[s] = p + index_t((j + s - 4 + n2) % n2) * n3;
        Real* orow = o + index_t(j) * n3;
        for (int k = 0; k < n3; ++k) {
          Real acc = 0;
          for (int s = 0; s < 9; ++s) acc += c[size_t(s)] * rows[s][k];
          orow[k] = acc * hinv;
        }
      }
    }
  } else {
    for (int i = 0; i < w; ++i) {
      for (int j = 0; j < n2; ++j) {
        const Real* row = data + index_t(i) * plane + index_t(j) * n3;
        Real* orow = out + index_t(i) * plane + index_t(j) * n3;
        for (int k = 0; k < 4; ++k) {
          Real acc = 0;
          for (int s = 0; s < 9; ++s)
            acc += c[size_t(s)] * row[(k + s - 4 + n3) % n3];
          orow[k] = acc * hinv;
        }
        for (int k = 4; k < n3 - 4; ++k) {
          Real acc = 0;
          for (int s = 0; s < 9; ++s) acc += c[size_t(s)] * row[k + s - 4];
          orow[k] = acc * hinv;
        }
        for (int k = std::max(4, n3 - 4); k < n3; ++k) {
          Real acc = 0;
          for (int s = 0; s < 9; ++s)
            acc += c[size_t(s)] * row[(k + s - 4 + n3) % n3];
          orow[k] = acc * hinv;
        }
      }
    }
  }
}

namespace {

void check_fd_grid(const Grid3& g) {
  if (g.n1 < 9 || g.n2 < 9 || g.n3 < 9)
    throw dimension_error("fd kernels need grid sizes >= 9");
}

// Wrap-pad along x1 and differentiate; shared layout with the ghost path.
void axis1_with_wrap(const ScalarField& f, Real hinv, Real* out) {
  const Grid3& g = f.grid;
  const index_t plane = index_t(g.n2) * g.n3;
  std::vector<Real> padded(size_t((g.n1 + 8) * plane));
  std::memcpy(padded.data(), f.data() + (g.n1 - 4) * plane,
              sizeof(Real) * size_t(4 * plane));
  std::memcpy(padded.data() + 4 * plane, f.data(),
              sizeof(Real) * size_t(g.n1 * plane));
  std::memcpy(padded.data() + (g.n1 + 4) * plane, f.data(),
              sizeof(Real) * size_t(4 * plane));
  fd_axis1_padded(padded.data(), g.n1, g.n2, g.n3, hinv, out);
}

}  // namespace

VectorField FdOps::gradient(const ScalarField& f) const {
  check_fd_grid(f.grid);
  if (counters) counters->fd_gradient++;
  ScopedTimer t(timers ? &timers->fd : nullptr);
  const Grid3& g = f.grid;
  VectorField out(g);
  axis1_with_wrap(f, Real(1) / g.h(0), out.c1.data());
  fd_axis_inplane(f.data(), g.n1, g.n2, g.n3, 1, Real(1) / g.h(1),
                  out.c2.data());
  fd_axis_inplane(f.data(), g.n1, g.n2, g.n3, 2, Real(1) / g.h(2),
                  out.c3.data());
  return out;
}

ScalarField FdOps::divergence(const VectorField& v) const {
  check_fd_grid(v.grid());
  if (counters) counters->fd_divergence++;
  ScopedTimer t(timers ? &timers->fd : nullptr);
  const Grid3& g = v.grid();
  ScalarField out(g);
  std::vector<Real> tmp(size_t(g.points()));
  axis1_with_wrap(v.c1, Real(1) / g.h(0), out.data());
  fd_axis_inplane(v.c2.data(), g.n1, g.n2, g.n3, 1, Real(1) / g.h(1),
                  tmp.data());
  for (index_t t2 = 0; t2 < g.points(); ++t2) out.v[size_t(t2)] += tmp[size_t(t2)];
  fd_axis_inplane(v.c3.data(), g.n1, g.n2, g.n3, 2, Real(1) / g.h(2),
                  tmp.data());
  for (index_t t2 = 0; t2 < g.points(); ++t2) out.v[size_t(t2)] += tmp[size_t(t2)];
  return out;
}

VectorField fd_gradient(const ScalarField& f) { return FdOps{}.gradient(f); }
ScalarField fd_divergence(const VectorField& v) { return FdOps{}.divergence(v); }

}  // namespace vreg
