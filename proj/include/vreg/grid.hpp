#pragma once

#include <numbers>

#include "vreg/types.hpp"

namespace vreg {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Periodic grid on [0, 2*pi)^3 with nt time steps on [0, 1].
// Point (i,j,k) sits at (i*h1, j*h2, k*h3); index = (i*n2 + j)*n3 + k.
struct Grid3 {
  int n1 = 0;
  int n2 = 0;
  int n3 = 0;
  int nt = 1;

  static Grid3 make(int n1, int n2, int n3, int nt = 1) {
    if (n1 < 8 || n2 < 8 || n3 < 8)
      throw dimension_error("grid sizes must be >= 8");
    if (n1 % 2 || n2 % 2 || n3 % 2)
      throw dimension_error("grid sizes must be even");
    if (nt < 1) throw parameter_error("nt must be >= 1");
    return Grid3{n1, n2, n3, nt};
  }

  static Grid3 cube(int n, int nt = 1) { return make(n, n, n, nt); }

  int n(int axis) const { return axis == 0 ? n1 : (axis == 1 ? n2 : n3); }
  Real h(int axis) const { return Real(two_pi) / Real(n(axis)); }
  Real dt() const { return Real(1) / Real(nt); }
  index_t points() const {
    return index_t(n1) * index_t(n2) * index_t(n3);
  }
  Real cell_volume() const { return h(0) * h(1) * h(2); }

  index_t index(int i, int j, int k) const {
    return (index_t(i) * n2 + j) * n3 + k;
  }
  void unindex(index_t idx, int& i, int& j, int& k) const {
    k = int(idx % n3);
    idx /= n3;
    j = int(idx % n2);
    i = int(idx / n2);
  }

  // Internal half-resolution grid (two-level preconditioner); exempt from
  // the n >= 8 floor that applies to solver grids.
  Grid3 coarse() const {
    if (n1 % 2 || n2 % 2 || n3 % 2)
      throw dimension_error("grid not refinable");
    if (n1 < 8 || n2 < 8 || n3 < 8)
      throw dimension_error("grid too small to restrict");
    return Grid3{n1 / 2, n2 / 2, n3 / 2, nt};
  }

  bool same_space(const Grid3& o) const {
    return n1 == o.n1 && n2 == o.n2 && n3 == o.n3;
  }
  bool operator==(const Grid3& o) const {
    return same_space(o) && nt == o.nt;
  }
};

}  // namespace vreg
