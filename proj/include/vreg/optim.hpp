#pragma once

#include <cmath>
#include <utility>

#include "vreg/precond.hpp"
#include "vreg/report.hpp"

namespace vreg {

enum class HessianAdjoint {
  Transpose,       // exact transpose of the incremental-state map
  SemiLagrangian,  // optimize-then-discretize incremental adjoint solve
};

struct RegistrationConfig {
  Real beta_target = Real(5e-4);
  Real beta_start = Real(1);
  bool continuation = true;
  Real gamma_div = 0;
  bool project_divfree = false;
  Real eps_newton = Real(5e-2);
  Real eps_h0 = Real(1e-3);
  int max_gn = 50;
  int max_pcg = 500;
  PrecondKind precond = PrecondKind::TwoLevelInvH0;
  int interp_degree = 3;
  bool cache_state_gradient = true;
  int fixed_gn = 0;   // > 0 pins the Gauss-Newton iteration count
  int fixed_pcg = 0;  // > 0 pins the PCG iteration count per step
  HessianAdjoint hessian_adjoint = HessianAdjoint::Transpose;
  int nt = 4;

  Real armijo_c = Real(1e-4);
  Real armijo_shrink = Real(0.5);
  int armijo_max_trials = 10;
  int h0_inner_cap = 100;

  void validate() const {
    if (beta_target <= 0 || beta_start <= 0)
      throw parameter_error("beta must be > 0");
    if (eps_newton <= 0 || eps_newton >= 1)
      throw parameter_error("eps_newton must lie in (0,1)");
    if (precond != PrecondKind::InvA && (eps_h0 <= 0 || eps_h0 >= 1))
      throw parameter_error("eps_h0 must lie in (0,1)");
    if (gamma_div < 0) throw parameter_error("gamma_div must be >= 0");
    if (interp_degree != 1 && interp_degree != 3)
      throw parameter_error("interp_degree must be 1 or 3");
    if (nt < 1) throw parameter_error("nt must be >= 1");
    if (max_gn < 1 || max_pcg < 1)
      throw parameter_error("iteration caps must be >= 1");
    if ((fixed_gn > 0) != (fixed_pcg > 0))
      throw parameter_error("fixed_gn and fixed_pcg go together");
  }
};

struct ObjectiveValue {
  Real total = 0;
  Real mismatch = 0;
  Real regularization = 0;
  Real div_penalty = 0;
};

namespace detail {

// J = 1/2 ||m(.,1) - m1||^2 + beta/2 reg(v) + gamma/2 ||div v||^2.
// Fills the state cache as a side effect for reuse by gradient and Hessian.
template <class E>
ObjectiveValue evaluate_objective_with(E& eng, Flow<E>& fl, StateCache<E>& sc,
                                       const typename E::Field& m0,
                                       const typename E::Field& m1, Real beta,
                                       const RegistrationConfig& cfg) {
  sc.m = solve_state(fl, m0);
  sc.grad.clear();
  sc.want_cache = cfg.cache_state_gradient;
  typename E::Field resid = eng.make_field();
  sub(sc.m.back(), m1, resid);
  ObjectiveValue J;
  J.mismatch = Real(0.5) * eng.inner(resid, resid);
  J.regularization = beta / 2 * eng.seminorm(fl.velocity());
  if (cfg.gamma_div > 0) {
    typename E::Field dv = eng.fd_div(fl.velocity());
    J.div_penalty = cfg.gamma_div / 2 * eng.inner(dv, dv);
  }
  J.total = J.mismatch + J.regularization + J.div_penalty;
  return J;
}

// Reduced gradient beta A v + int lambda grad m dt with the adjoint final
// condition m1 - m(.,1); the regularization term uses the true seminorm
// symbol so the result is the exact gradient of the objective above.
template <class E>
typename E::VField evaluate_gradient_with(E& eng, Flow<E>& fl,
                                          StateCache<E>& sc,
                                          const typename E::Field& m1,
                                          Real beta,
                                          const RegistrationConfig& cfg) {
  typename E::Field fin = eng.make_field();
  sub(m1, sc.m.back(), fin);
  auto lam = solve_adjoint(fl, fin);
  typename E::VField g = integrate_lambda_grad_m(eng, lam, sc);
  typename E::VField reg = eng.regop(fl.velocity(), beta, false);
  axpy(Real(1), reg, g);
  if (cfg.gamma_div > 0) {
    typename E::Field dv = eng.fd_div(fl.velocity());
    typename E::VField gd = eng.fd_grad(dv);
    axpy(-cfg.gamma_div, gd, g);
  }
  if (cfg.project_divfree) g = eng.leray(g);
  return g;
}

// Gauss-Newton matvec beta A vt + int lambda_t grad m dt, lambda_t from the
// incremental adjoint with final condition -mt(.,1).
template <class E>
typename E::VField hessian_matvec_with(E& eng, Flow<E>& fl, StateCache<E>& sc,
                                       const typename E::VField& vt, Real beta,
                                       const RegistrationConfig& cfg) {
  auto mt = solve_inc_state(fl, vt, sc);
  typename E::Field fin = std::move(mt.back());
  scale(fin, Real(-1));
  typename E::VField h;
  if (cfg.hessian_adjoint == HessianAdjoint::Transpose) {
    h = adjoint_transpose_assemble(fl, sc, fin);
  } else {
    auto lam = solve_inc_adjoint(fl, fin);
    h = integrate_lambda_grad_m(eng, lam, sc);
  }
  typename E::VField reg = eng.regop(vt, beta, false);
  axpy(Real(1), reg, h);
  if (cfg.gamma_div > 0) {
    typename E::Field dv = eng.fd_div(vt);
    typename E::VField gd = eng.fd_grad(dv);
    axpy(-cfg.gamma_div, gd, h);
  }
  return h;
}

}  // namespace detail

// One Gauss-Newton level at fixed beta, warm-started from v.
template <class E>
LevelRecord gauss_newton_level(E& eng, const typename E::Field& m0,
                               const typename E::Field& m1, Real beta,
                               PrecondKind pc_kind,
                               const RegistrationConfig& cfg,
                               typename E::VField& v, SolverReport& rep) {
  using VField = typename E::VField;
  const bool fixed = cfg.fixed_gn > 0;
  LevelRecord lev;
  lev.beta = beta;
  lev.pc_name = precond_name(pc_kind);
  lev.pc_switched_from_config = pc_kind != cfg.precond;

  Flow<E> flow(eng, v, cfg.interp_degree);
  StateCache<E> sc;
  ObjectiveValue J;
  {
    ScopedTimer t(&rep.phases.obj);
    J = detail::evaluate_objective_with(eng, flow, sc, m0, m1, beta, cfg);
  }
  lev.initial_mismatch = J.mismatch;
  VField g;
  {
    ScopedTimer t(&rep.phases.grad);
    g = detail::evaluate_gradient_with(eng, flow, sc, m1, beta, cfg);
  }
  const Real g0 = eng.norm2(g);
  Preconditioner<E> prec(eng, pc_kind, beta, cfg.eps_h0, cfg.h0_inner_cap);

  Real g_norm = g0;
  for (int k = 0;; ++k) {
    const Real g_rel = g0 > 0 ? g_norm / g0 : Real(0);
    lev.final_g_rel = g_rel;
    if (!fixed && (g0 == Real(0) || g_rel <= cfg.eps_newton)) {
      lev.converged = true;
      break;
    }
    if (fixed ? k >= cfg.fixed_gn : k >= cfg.max_gn) {
      if (!fixed) rep.flagged = true;
      break;
    }

    GnIterRecord rec;
    rec.g_norm = g_norm;
    rec.g_rel = g_rel;
    rec.eps_k = std::min(std::sqrt(g_rel), Real(0.5));

    {
      ScopedTimer t(&rep.phases.pc);
      prec.refresh(sc.m.back());
    }
    if (pc_kind != PrecondKind::InvA) lev.refresh_count++;

    PrecondStats pstats;
    VField rhs = eng.make_vfield();
    axpy(Real(-1), g, rhs);
    VField dv = eng.make_vfield();
    PcgOptions opt;
    opt.tol = fixed ? Real(0) : rec.eps_k;
    opt.max_iters = fixed ? cfg.fixed_pcg : cfg.max_pcg;
    opt.x_is_zero = true;
    auto pres = pcg(
        eng,
        [&](const VField& s) {
          ScopedTimer t(&rep.phases.hess);
          return detail::hessian_matvec_with(eng, flow, sc, s, beta, cfg);
        },
        [&](const VField& r) {
          ScopedTimer t(&rep.phases.pc);
          return prec.apply(r, rec.eps_k, pstats);
        },
        rhs, dv, opt);
    if (pres.negative_curvature)
      throw numerical_error(
          "PCG detected negative curvature in the Gauss-Newton Hessian");
    rec.pcg_iters = pres.iters;
    rec.pcg_relres = std::move(pres.history);
    rec.beta_pc = pstats.beta_pc;
    rec.h0_inner_iters = pstats.inner_iterations;
    lev.pcg_total += pres.iters;
    lev.pc_inva_apps += pstats.inva_applications;
    lev.pc_h0_apps += pstats.h0_applications;
    lev.h0_inner_total += pstats.inner_iterations;
    if (pstats.inner_capped) {
      lev.inner_capped = true;
      rep.flagged = true;
    }

    if (cfg.project_divfree) dv = eng.leray(dv);

    const Real gdv = eng.inner(g, dv);
    bool accepted = false;
    Real alpha = 1;
    Flow<E> trial(eng, v, cfg.interp_degree);  // placeholder, replaced below
    StateCache<E> trial_sc;
    ObjectiveValue Jt;
    int trials = 0;
    if (gdv < 0 || fixed) {
      const int max_trials = fixed ? 1 : cfg.armijo_max_trials;
      for (trials = 1; trials <= max_trials; ++trials) {
        VField v_try = v;
        axpy(alpha, dv, v_try);
        Flow<E> f_try(eng, std::move(v_try), cfg.interp_degree);
        StateCache<E> sc_try;
        {
          ScopedTimer t(&rep.phases.obj);
          Jt = detail::evaluate_objective_with(eng, f_try, sc_try, m0, m1,
                                               beta, cfg);
        }
        lev.line_search_states++;
        if (fixed || Jt.total <= J.total + cfg.armijo_c * alpha * gdv) {
          accepted = true;
          trial = std::move(f_try);
          trial_sc = std::move(sc_try);
          break;
        }
        alpha *= cfg.armijo_shrink;
      }
    }
    rec.line_search_trials = accepted ? trials : cfg.armijo_max_trials;
    rec.alpha = accepted ? alpha : Real(0);
    if (!accepted) {
      lev.line_search_failed = true;
      rep.flagged = true;
      lev.iters.push_back(std::move(rec));
      break;
    }

    axpy(alpha, dv, v);
    flow = std::move(trial);
    sc = std::move(trial_sc);
    J = Jt;
    {
      ScopedTimer t(&rep.phases.grad);
      g = detail::evaluate_gradient_with(eng, flow, sc, m1, beta, cfg);
    }
    g_norm = eng.norm2(g);
    rec.objective = J.total;
    rec.mismatch = J.mismatch;
    lev.iters.push_back(std::move(rec));
  }

  lev.gn_iters = int(lev.iters.size());
  lev.final_mismatch = J.mismatch;
  lev.final_objective = J.total;
  return lev;
}

// Continuation schedule: geometric with factor 10 from beta_start, final
// level clamped to beta_target. A target above the start collapses to a
// single level.
inline std::vector<Real> beta_schedule(const RegistrationConfig& cfg) {
  std::vector<Real> levels;
  if (!cfg.continuation || cfg.beta_target >= cfg.beta_start) {
    levels.push_back(cfg.beta_target);
    return levels;
  }
  for (Real b = cfg.beta_start; b > cfg.beta_target * Real(1 + 1e-12); b /= 10)
    levels.push_back(b);
  levels.push_back(cfg.beta_target);
  return levels;
}

// Full registration: intensity-normalized inputs assumed; runs the beta
// continuation (InvA above the switch threshold, the configured variant at
// and below it) and assembles the report.
template <class E>
SolverReport register_images(E& eng, const typename E::Field& m0,
                             const typename E::Field& m1,
                             const RegistrationConfig& cfg,
                             typename E::VField* v_out = nullptr) {
  cfg.validate();
  SolverReport rep;
  rep.grid = eng.grid();
  rep.nt = eng.grid().nt;
  rep.p = eng.workers();
  ScopedTimer t_total(&rep.phases.total);

  typename E::Field d0 = eng.make_field();
  sub(m0, m1, d0);
  const Real dist0 = eng.norm2(d0);
  rep.initial_mismatch = Real(0.5) * dist0 * dist0;

  typename E::VField v = eng.make_vfield();
  for (Real beta : beta_schedule(cfg)) {
    PrecondKind pc = cfg.precond;
    if (cfg.continuation && cfg.precond != PrecondKind::InvA &&
        beta > inva_switch_beta)
      pc = PrecondKind::InvA;
    rep.levels.push_back(
        gauss_newton_level(eng, m0, m1, beta, pc, cfg, v, rep));
    if (rep.levels.back().line_search_failed) break;
  }

  // final mismatch from the last level
  rep.final_mismatch = rep.levels.back().final_mismatch;
  rep.final_g_rel = rep.levels.back().final_g_rel;
  rep.mism_rel = dist0 > 0
                     ? std::sqrt(Real(2) * rep.final_mismatch) / dist0
                     : Real(0);
  rep.counters = eng.counters();
  rep.comm = eng.comm();
  rep.kernels = eng.kernel_timers();
  if (v_out) *v_out = std::move(v);
  return rep;
}

// Single-level solve at beta_target (no continuation), per the plain
// Gauss-Newton-Krylov entry point.
template <class E>
SolverReport gauss_newton_solve(E& eng, const typename E::Field& m0,
                                const typename E::Field& m1,
                                const RegistrationConfig& cfg,
                                typename E::VField* v_out = nullptr) {
  RegistrationConfig c = cfg;
  c.continuation = false;
  return register_images(eng, m0, m1, c, v_out);
}

}  // namespace vreg
