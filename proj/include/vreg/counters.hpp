#pragma once

#include <chrono>
#include <cstdint>

namespace vreg {

// Logical kernel-call counters. Counts are per logical operation (a
// distributed FFT over p workers is one call), so a run's counters are
// independent of the worker count.
struct KernelCounters {
  std::uint64_t fft_forward = 0;
  std::uint64_t fft_inverse = 0;
  std::uint64_t fft_forward_coarse = 0;
  std::uint64_t fft_inverse_coarse = 0;

  std::uint64_t fd_gradient = 0;
  std::uint64_t fd_divergence = 0;

  std::uint64_t ip_eval = 0;     // scalar-field interpolation batches
  std::uint64_t ip_scatter = 0;  // transpose-interpolation sweeps

  std::uint64_t characteristics = 0;
  std::uint64_t characteristics_identity = 0;  // zero-velocity builds

  std::uint64_t sl_state = 0;
  std::uint64_t sl_adjoint = 0;
  std::uint64_t sl_inc_state = 0;
  std::uint64_t sl_inc_adjoint = 0;

  std::uint64_t pc_inva_apply = 0;
  std::uint64_t pc_h0_apply = 0;
  std::uint64_t pc_h0_inner_iters = 0;
  std::uint64_t pc_h0_inner_solves = 0;
  std::uint64_t pc_refresh = 0;

  // grid points touched by H0 inner-CG matvecs, split by grid level
  std::uint64_t h0_inner_work_fine = 0;
  std::uint64_t h0_inner_work_coarse = 0;

  std::uint64_t fft(bool coarse) const {
    return coarse ? fft_forward_coarse + fft_inverse_coarse
                  : fft_forward + fft_inverse;
  }
};

// Bytes moved through the mailbox, per communication category
// (accumulated per worker; serial runs stay at zero).
struct CommCounters {
  std::uint64_t ghost_fd_bytes = 0;
  std::uint64_t ghost_interp_bytes = 0;
  std::uint64_t scatter_points_bytes = 0;
  std::uint64_t interp_values_bytes = 0;
  std::uint64_t fft_transpose_bytes = 0;
  std::uint64_t spectral_gather_bytes = 0;
  std::uint64_t reduce_bytes = 0;
  std::uint64_t p2p_messages = 0;
  std::uint64_t alltoall_collectives = 0;
};

struct PhaseTimers {
  double pc = 0;
  double obj = 0;
  double grad = 0;
  double hess = 0;
  double total = 0;
};

struct KernelTimers {
  double fft = 0;
  double fd = 0;
  double sl = 0;  // interpolation + characteristics (semi-Lagrangian work)
  double ghost_comm = 0;
  double interp_comm = 0;
  double scatter_comm = 0;
  double scatter_buffer = 0;
  double transpose_comm = 0;
};

class ScopedTimer {
 public:
  explicit ScopedTimer(double* acc)
      : acc_(acc), start_(std::chrono::steady_clock::now()) {}
  ~ScopedTimer() {
    if (acc_) {
      auto end = std::chrono::steady_clock::now();
      *acc_ += std::chrono::duration<double>(end - start_).count();
    }
  }
  ScopedTimer(const ScopedTimer&) = delete;
  ScopedTimer& operator=(const ScopedTimer&) = delete;

 private:
  double* acc_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace vreg
