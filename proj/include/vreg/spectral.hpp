#pragma once

#include "vreg/counters.hpp"
#include "vreg/fft.hpp"

namespace vreg {

// Diagonal spectral operators over a plan cache. `coarse` only routes the
// transform counts into the coarse bucket (used by the two-level
// preconditioner); the math is grid-agnostic.
struct SpectralOps {
  FftPlanCache* plans = nullptr;
  KernelCounters* counters = nullptr;
  KernelTimers* timers = nullptr;
  bool coarse = false;

  SpectralField forward(const ScalarField& f) const;
  ScalarField inverse(const SpectralField& F) const;

  // beta * A, where A is the vector Laplacian with symbol |k|^2 for k != 0.
  // The zero mode gets eigenvalue 1 when unit_zero_mode is set (SPD
  // convention used by the preconditioners) and 0 otherwise (the true
  // H1-seminorm operator used by objective, gradient and Hessian).
  VectorField apply_regop(const VectorField& v, Real beta,
                          bool unit_zero_mode = true) const;
  VectorField apply_inv_regop(const VectorField& w, Real beta) const;

  // sum_i <grad v_i, grad v_i> evaluated spectrally (zero mode not
  // penalized). Deterministic fold: component-major, then k2 rows.
  Real h1_seminorm(const VectorField& v) const;

  // v - grad(lap^{-1} div v); zero mode untouched.
  VectorField leray_project(const VectorField& v) const;

  ScalarField restrict_field(const ScalarField& fine) const;
  ScalarField prolong_field(const ScalarField& coarse_f,
                            const Grid3& fine_grid) const;
  ScalarField high_pass(const ScalarField& f) const;

  VectorField restrict_field(const VectorField& fine) const;
  VectorField prolong_field(const VectorField& coarse_v,
                            const Grid3& fine_grid) const;
  VectorField high_pass(const VectorField& v) const;
};

// Spectral-domain truncation/padding cores, shared with the distributed
// transform path. Operate on unnormalized coefficient arrays.
void restrict_spectrum(const SpectralField& fine, SpectralField& coarse);
void prolong_spectrum(const SpectralField& coarse, SpectralField& fine);
void high_pass_spectrum(SpectralField& F);

// Grid inner product evaluated from half-space spectra (Parseval).
Real spectral_inner(const SpectralField& a, const SpectralField& b);

// Convenience entry points on a thread-local plan cache (no counting).
SpectralField fft_forward(const ScalarField& f);
ScalarField fft_inverse(const SpectralField& F);
VectorField apply_regop(const VectorField& v, Real beta,
                        bool unit_zero_mode = true);
VectorField apply_inv_regop(const VectorField& w, Real beta);
VectorField leray_project(const VectorField& v);
ScalarField restrict_field(const ScalarField& fine);
ScalarField prolong_field(const ScalarField& coarse_f, const Grid3& fine);
ScalarField high_pass(const ScalarField& f);
Real h1_seminorm(const VectorField& v);

}  // namespace vreg
