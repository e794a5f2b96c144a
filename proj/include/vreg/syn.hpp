#pragma once

#include "vreg/field.hpp"

namespace vreg {

// Synthetic registration pair: template sum_i sin^2(x_i)/3 and a
// divergence-free trigonometric velocity whose forward transport of the
// template defines the reference image.
ScalarField syn_template(const Grid3& g);
VectorField syn_velocity(const Grid3& g);
ScalarField syn_reference(const Grid3& g, int degree = 3);

}  // namespace vreg
