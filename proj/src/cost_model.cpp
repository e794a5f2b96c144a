#include "vreg/cost_model.hpp"

namespace vreg {

bool CostPrediction::matches(const KernelCounters& c) const {
  return sl_state == c.sl_state && sl_adjoint == c.sl_adjoint &&
         sl_inc_state == c.sl_inc_state && sl_inc_adjoint == c.sl_inc_adjoint &&
         characteristics == c.characteristics && ip_eval == c.ip_eval &&
         ip_scatter == c.ip_scatter && fd_gradient == c.fd_gradient &&
         fd_divergence == c.fd_divergence && fft_fine == c.fft(false) &&
         fft_coarse == c.fft(true);
}

CostPrediction estimate_cost(const SolverReport& rep,
                             const RegistrationConfig& cfg) {
  CostPrediction p;
  const std::uint64_t nt = std::uint64_t(rep.nt);
  const bool transpose = cfg.hessian_adjoint == HessianAdjoint::Transpose;
  const bool cache = cfg.cache_state_gradient;
  const bool gamma = cfg.gamma_div > 0;
  const bool leray = cfg.project_divfree;

  for (const auto& lev : rep.levels) {
    std::uint64_t accepted = 0;
    for (const auto& it : lev.iters)
      if (it.alpha > 0) ++accepted;
    const std::uint64_t attempted = std::uint64_t(lev.iters.size());
    const std::uint64_t O = 1 + std::uint64_t(lev.line_search_states);
    const std::uint64_t G = 1 + accepted;
    const std::uint64_t P = std::uint64_t(lev.pcg_total);
    const std::uint64_t R = lev.refresh_count;
    const std::uint64_t inner = lev.h0_inner_total;

    p.sl_state += O;
    p.sl_adjoint += G;
    p.sl_inc_state += P;
    p.sl_inc_adjoint += P;
    p.characteristics += O + G;

    // per solve: nt interpolations for the state, nt plus the divergence
    // lookup for the adjoint, 2 nt for the incremental state
    p.ip_eval += nt * O + (nt + 1) * G + 2 * nt * P;
    if (transpose)
      p.ip_scatter += nt * P;
    else
      p.ip_eval += nt * P;

    p.fd_gradient += (nt + 1) * G + R;
    if (!cache) p.fd_gradient += 2 * (nt + 1) * P;
    p.fd_divergence += G;
    if (gamma) {
      p.fd_gradient += G + P;
      p.fd_divergence += O + G + P;
    }

    // spectral work: seminorm in the objective, the true-symbol
    // regularization operator in gradient and matvec, the preconditioner
    p.fft_fine += 3 * O + 6 * G + 6 * P;
    if (leray) p.fft_fine += 6 * G + 6 * attempted;
    p.fft_fine += 6 * lev.pc_inva_apps;
    if (lev.pc_name == "invh0") {
      p.fft_fine += 12 * inner + 12 * lev.pc_h0_apps;
    } else if (lev.pc_name == "2linvh0") {
      p.fft_fine += 21 * lev.pc_h0_apps + 3 * R;
      p.fft_coarse += 12 * inner + 15 * lev.pc_h0_apps + 3 * R;
    }
  }

  // characteristics of identity (zero-velocity) flows skip the three
  // velocity interpolations of the RK2 midpoint
  p.ip_eval += 3 * (p.characteristics - rep.counters.characteristics_identity);
  return p;
}

double estimate_memory(const Grid3& g, int nt, int p, int mu0, int degree) {
  const double n = double(g.points());
  const double fields = (74.0 + double(nt)) * n * double(mu0) / double(p);
  const double ip_ghost =
      30.0 * double(degree) * double(g.n2) * double(g.n3) * double(mu0);
  return fields + ip_ghost;
}

}  // namespace vreg
