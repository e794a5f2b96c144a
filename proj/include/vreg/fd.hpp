#pragma once

#include <array>
#include <vector>

#include "vreg/counters.hpp"
#include "vreg/field.hpp"

namespace vreg {

inline constexpr int fd_half_width = 4;  // 8th-order central stencil

// First-derivative weights on integer offsets [-hw, hw] about 0, computed
// from the order conditions (Fornberg recursion) rather than transcribed.
std::vector<double> central_difference_weights(int half_width, int deriv);

// The 9-point stencil used everywhere, scaled for unit spacing.
const std::array<Real, 9>& fd8_weights();

// Axis-1 derivative on a padded block: `padded` holds (w + 8) planes of
// n2*n3 values, the first and last four being wrap/neighbor planes.
// Serial and distributed paths share this kernel, so results match bitwise.
void fd_axis1_padded(const Real* padded, int w, int n2, int n3, Real hinv,
                     Real* out);

// Axis-2/axis-3 derivative on w whole planes (periodic within the plane).
void fd_axis_inplane(const Real* data, int w, int n2, int n3, int axis,
                     Real hinv, Real* out);

struct FdOps {
  KernelCounters* counters = nullptr;
  KernelTimers* timers = nullptr;

  VectorField gradient(const ScalarField& f) const;
  ScalarField divergence(const VectorField& v) const;
};

VectorField fd_gradient(const ScalarField& f);
ScalarField fd_divergence(const VectorField& v);

}  // namespace vreg
