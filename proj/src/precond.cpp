#include "vreg/precond.hpp"

namespace vreg {

VectorField inv_a(const VectorField& r, Real beta) {
  SerialEngine eng = SerialEngine::create(r.grid());
  eng.counters().pc_inva_apply++;
  return eng.inv_regop(r, beta);
}

VectorField h0_matvec(const VectorField& s, const VectorField& grad_mref,
                      Real beta_pc) {
  check_same_grid(s, grad_mref);
  SerialEngine eng = SerialEngine::create(s.grid());
  return h0_matvec(eng, s, grad_mref, beta_pc);
}

namespace {

VectorField apply_h0_variant(PrecondKind kind, const VectorField& r,
                             const VectorField& grad_mref, Real beta,
                             Real eps_k, Real eps_h0) {
  check_same_grid(r, grad_mref);
  SerialEngine eng = SerialEngine::create(r.grid());
  Preconditioner<SerialEngine> pc(eng, kind, beta, eps_h0);
  pc.set_reference_gradient(grad_mref);
  PrecondStats stats;
  return pc.apply(r, eps_k, stats);
}

}  // namespace

VectorField inv_h0(const VectorField& r, const VectorField& grad_mref,
                   Real beta, Real eps_k, Real eps_h0) {
  return apply_h0_variant(PrecondKind::InvH0, r, grad_mref, beta, eps_k,
                          eps_h0);
}

VectorField inv_h0_two_level(const VectorField& r, const VectorField& grad_mref,
                             Real beta, Real eps_k, Real eps_h0) {
  return apply_h0_variant(PrecondKind::TwoLevelInvH0, r, grad_mref, beta,
                          eps_k, eps_h0);
}

}  // namespace vreg
