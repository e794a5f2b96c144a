#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include "vreg/pcg.hpp"
#include "vreg/transport.hpp"

namespace vreg {

enum class PrecondKind { InvA, InvH0, TwoLevelInvH0 };

inline std::string precond_name(PrecondKind k) {
  switch (k) {
    case PrecondKind::InvA: return "inva";
    case PrecondKind::InvH0: return "invh0";
    default: return "2linvh0";
  }
}

// beta floor inside the zero-velocity Hessian solves and the continuation
// switch point between the spectral and the zero-velocity preconditioner.
inline constexpr Real h0_beta_floor = Real(5e-2);
inline constexpr Real inva_switch_beta = Real(5e-1);

// H0 s = beta_pc A s + grad_mref (grad_mref . s); A uses the SPD (unit zero
// mode) symbol. The outer product acts pointwise: the scalar grad_mref . s
// scales each component of grad_mref.
template <class E>
typename E::VField h0_matvec(E& eng, const typename E::VField& s,
                             const typename E::VField& grad_mref,
                             Real beta_pc) {
  typename E::VField out = eng.regop(s, beta_pc, true);
  typename E::Field dot = eng.make_field();
  pointwise_dot(grad_mref, s, dot);
  axpy_scaled_vector(Real(1), dot, grad_mref, out);
  auto& c = eng.counters();
  const auto work = std::uint64_t(eng.grid().points());
  (eng.is_coarse() ? c.h0_inner_work_coarse : c.h0_inner_work_fine) += work;
  return out;
}

// Per-application instrumentation the solver folds into its report.
struct PrecondStats {
  std::uint64_t inva_applications = 0;
  std::uint64_t h0_applications = 0;
  std::uint64_t inner_iterations = 0;
  Real beta_pc = 0;        // floored beta used inside the H0 solves
  bool inner_capped = false;
};

// The three reduced-space Hessian preconditioners. The reference gradient
// is refreshed once per Gauss-Newton iteration from the deformed template
// at the current iterate.
template <class E>
class Preconditioner {
 public:
  using Field = typename E::Field;
  using VField = typename E::VField;

  Preconditioner(E& eng, PrecondKind kind, Real beta, Real eps_h0,
                 int inner_cap = 100)
      : eng_(&eng),
        kind_(kind),
        beta_(beta),
        beta_pc_(std::max(beta, h0_beta_floor)),
        eps_h0_(eps_h0),
        inner_cap_(inner_cap) {
    if (kind_ == PrecondKind::TwoLevelInvH0) {
      coarse_.emplace(eng.make_coarse());
    }
    if (kind_ != PrecondKind::InvA && (eps_h0 <= 0 || eps_h0 >= 1))
      throw parameter_error("eps_h0 must lie in (0,1)");
  }

  PrecondKind kind() const { return kind_; }
  Real beta_pc() const { return beta_pc_; }

  void refresh(const Field& deformed_template) {
    if (kind_ == PrecondKind::InvA) return;
    grad_mref_ = eng_->fd_grad(deformed_template);
    if (kind_ == PrecondKind::TwoLevelInvH0)
      grad_mref_coarse_ = eng_->restrict_to_coarse(*grad_mref_);
    eng_->counters().pc_refresh++;
  }

  // Install an externally computed reference gradient (direct operator use).
  void set_reference_gradient(VField grad_mref) {
    grad_mref_ = std::move(grad_mref);
    if (kind_ == PrecondKind::TwoLevelInvH0)
      grad_mref_coarse_ = eng_->restrict_to_coarse(*grad_mref_);
  }

  VField apply(const VField& r, Real eps_k, PrecondStats& stats) {
    switch (kind_) {
      case PrecondKind::InvA: {
        eng_->counters().pc_inva_apply++;
        stats.inva_applications++;
        return eng_->inv_regop(r, beta_);
      }
      case PrecondKind::InvH0:
        return apply_h0(r, eps_k, stats);
      default:
        return apply_two_level(r, eps_k, stats);
    }
  }

 private:
  VField apply_h0(const VField& r, Real eps_k, PrecondStats& stats) {
    if (!grad_mref_) throw numerical_error("preconditioner not refreshed");
    eng_->counters().pc_h0_apply++;
    eng_->counters().pc_h0_inner_solves++;
    stats.h0_applications++;
    stats.beta_pc = beta_pc_;
    VField s = eng_->inv_regop(r, beta_pc_);
    PcgOptions opt;
    opt.tol = eps_h0_ * eps_k;
    opt.max_iters = inner_cap_;
    opt.x_is_zero = false;
    opt.record_history = false;
    auto res = pcg(
        *eng_,
        [&](const VField& x) { return h0_matvec(*eng_, x, *grad_mref_, beta_pc_); },
        [&](const VField& x) { return eng_->inv_regop(x, beta_pc_); }, r, s,
        opt);
    eng_->counters().pc_h0_inner_iters += std::uint64_t(res.iters);
    stats.inner_iterations += std::uint64_t(res.iters);
    if (!res.converged) stats.inner_capped = true;
    return s;
  }

  VField apply_two_level(const VField& r, Real eps_k, PrecondStats& stats) {
    if (!grad_mref_) throw numerical_error("preconditioner not refreshed");
    E& ce = *coarse_;
    eng_->counters().pc_h0_apply++;
    eng_->counters().pc_h0_inner_solves++;
    stats.h0_applications++;
    stats.beta_pc = beta_pc_;
    VField s_f = eng_->inv_regop(r, beta_pc_);
    VField r_c = eng_->restrict_to_coarse(r);
    VField s_c = eng_->restrict_to_coarse(s_f);
    PcgOptions opt;
    opt.tol = eps_h0_ * eps_k;
    opt.max_iters = inner_cap_;
    opt.x_is_zero = false;
    opt.record_history = false;
    auto res = pcg(
        ce,
        [&](const VField& x) {
          return h0_matvec(ce, x, *grad_mref_coarse_, beta_pc_);
        },
        [&](const VField& x) { return ce.inv_regop(x, beta_pc_); }, r_c, s_c,
        opt);
    eng_->counters().pc_h0_inner_iters += std::uint64_t(res.iters);
    stats.inner_iterations += std::uint64_t(res.iters);
    if (!res.converged) stats.inner_capped = true;
    VField out = eng_->prolong_to_fine(s_c);
    VField hp = eng_->high_pass_field(s_f);
    axpy(Real(1), hp, out);
    return out;
  }

  E* eng_;
  std::optional<E> coarse_;
  PrecondKind kind_;
  Real beta_;
  Real beta_pc_;
  Real eps_h0_;
  int inner_cap_;
  std::optional<VField> grad_mref_;
  std::optional<VField> grad_mref_coarse_;
};

// ---- serial module-level API ----

VectorField inv_a(const VectorField& r, Real beta);
VectorField h0_matvec(const VectorField& s, const VectorField& grad_mref,
                      Real beta_pc);
VectorField inv_h0(const VectorField& r, const VectorField& grad_mref,
                   Real beta, Real eps_k, Real eps_h0);
VectorField inv_h0_two_level(const VectorField& r, const VectorField& grad_mref,
                             Real beta, Real eps_k, Real eps_h0);

}  // namespace vreg
