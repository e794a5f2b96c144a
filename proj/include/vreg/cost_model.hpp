#pragma once

#include "vreg/optim.hpp"

namespace vreg {

// Kernel-call counts predicted from a report's iteration records: the
// total-cost expansion n_GN (n_CG (2 c_PDE + c_H + c_PC) + 2 c_PDE) written
// out at per-kernel granularity for this solver's exact loop structure.
struct CostPrediction {
  std::uint64_t sl_state = 0;
  std::uint64_t sl_adjoint = 0;
  std::uint64_t sl_inc_state = 0;
  std::uint64_t sl_inc_adjoint = 0;
  std::uint64_t characteristics = 0;
  std::uint64_t ip_eval = 0;
  std::uint64_t ip_scatter = 0;
  std::uint64_t fd_gradient = 0;
  std::uint64_t fd_divergence = 0;
  std::uint64_t fft_fine = 0;    // forward + inverse scalar transforms
  std::uint64_t fft_coarse = 0;

  bool matches(const KernelCounters& c) const;
};

CostPrediction estimate_cost(const SolverReport& rep,
                             const RegistrationConfig& cfg);

// Memory model: (74 + nt) N mu0 / p for the solver fields plus the
// interpolation ghost-layer buffers 30 d N2 N3 mu0. Runtime API overhead is
// excluded.
double estimate_memory(const Grid3& g, int nt, int p, int mu0, int degree);

}  // namespace vreg
