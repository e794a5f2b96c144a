#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vreg/counters.hpp"
#include "vreg/grid.hpp"

namespace vreg {

struct GnIterRecord {
  Real objective = 0;
  Real mismatch = 0;
  Real g_norm = 0;
  Real g_rel = 0;
  Real eps_k = 0;
  Real alpha = 0;
  int pcg_iters = 0;
  int line_search_trials = 0;
  Real beta_pc = 0;  // 0 when the spectral preconditioner is active
  std::uint64_t h0_inner_iters = 0;
  std::vector<Real> pcg_relres;
};

struct LevelRecord {
  Real beta = 0;
  std::string pc_name;
  bool pc_switched_from_config = false;  // InvA forced by the beta threshold
  int gn_iters = 0;
  int pcg_total = 0;
  Real initial_mismatch = 0;
  Real final_mismatch = 0;
  Real final_g_rel = 0;
  Real final_objective = 0;
  bool converged = false;
  bool line_search_failed = false;
  bool inner_capped = false;
  std::uint64_t refresh_count = 0;
  std::uint64_t pc_inva_apps = 0;
  std::uint64_t pc_h0_apps = 0;
  std::uint64_t h0_inner_total = 0;
  int line_search_states = 0;  // objective evaluations spent in line search
  std::vector<GnIterRecord> iters;

  double h0_inner_avg() const {
    return pc_h0_apps ? double(h0_inner_total) / double(pc_h0_apps) : 0.0;
  }
};

struct SolverReport {
  Grid3 grid;
  int p = 1;
  int nt = 1;
  std::vector<LevelRecord> levels;
  KernelCounters counters;
  CommCounters comm;
  PhaseTimers phases;
  KernelTimers kernels;
  Real initial_mismatch = 0;
  Real final_mismatch = 0;
  Real mism_rel = 0;  // ||m(.,1) - m1|| / ||m0 - m1||, our convention
  Real final_g_rel = 0;
  bool flagged = false;
  std::uint64_t memory_estimate_bytes = 0;

  int total_gn() const {
    int s = 0;
    for (const auto& l : levels) s += l.gn_iters;
    return s;
  }
  int total_pcg() const {
    int s = 0;
    for (const auto& l : levels) s += l.pcg_total;
    return s;
  }
};

// Deterministic structured-text rendering (no timings; see render_timings).
std::string render_report(const SolverReport& rep);
// Wall-clock section, kept separate so serial reruns stay bit-identical.
std::string render_timings(const SolverReport& rep);
// Per-iteration PCG residual histories as CSV.
std::string render_residuals_csv(const SolverReport& rep);

}  // namespace vreg
