#pragma once

#include <memory>

#include "vreg/fd.hpp"
#include "vreg/interp.hpp"
#include "vreg/spectral.hpp"

namespace vreg {

// Shared instrumentation + plan state for one solver run. The coarse engine
// of the two-level preconditioner shares this state and routes transform
// counts into the coarse bucket.
struct EngineState {
  FftPlanCache plans;
  KernelCounters counters;
  KernelTimers kernel_timers;
  CommCounters comm;
};

// Serial execution backend. The optimizer, transport solvers and
// preconditioners are templated over this interface; the distributed
// backend mirrors it member for member.
class SerialEngine {
 public:
  using Field = ScalarField;
  using VField = VectorField;

  // Departure points of the one-step backward trajectories under a velocity.
  struct Char {
    QueryPoints dep;
    bool identity = false;
  };

  SerialEngine() = default;
  SerialEngine(const Grid3& g, std::shared_ptr<EngineState> st,
               bool coarse = false)
      : grid_(g), state_(std::move(st)), coarse_(coarse) {}

  static SerialEngine create(const Grid3& g) {
    return SerialEngine(g, std::make_shared<EngineState>());
  }

  const Grid3& grid() const { return grid_; }
  int workers() const { return 1; }
  int rank() const { return 0; }
  bool is_coarse() const { return coarse_; }
  KernelCounters& counters() { return state_->counters; }
  const KernelCounters& counters() const { return state_->counters; }
  KernelTimers& kernel_timers() { return state_->kernel_timers; }
  CommCounters& comm() { return state_->comm; }

  SerialEngine make_coarse() const {
    return SerialEngine(grid_.coarse(), state_, true);
  }

  // ---- field management ----
  Field make_field() const { return ScalarField(grid_); }
  VField make_vfield() const { return VectorField(grid_); }

  // Gather/scatter between engine fields and global fields; trivial here,
  // slab redistribution in the distributed backend.
  Field from_global(const ScalarField& f) const { return f; }
  ScalarField to_global(const Field& f) const { return f; }
  VField from_global_v(const VectorField& v) const { return v; }
  VectorField to_global_v(const VField& v) const { return v; }

  // ---- pointwise / reductions (delegating to field.hpp) ----
  Real inner(const Field& a, const Field& b) const { return vreg::inner(a, b); }
  Real inner(const VField& a, const VField& b) const { return vreg::inner(a, b); }
  Real norm2(const Field& f) const { return vreg::norm2(f); }
  Real norm2(const VField& f) const { return vreg::norm2(f); }
  Real max_abs_field(const Field& f) const { return vreg::max_abs(f); }
  Real max_abs_vfield(const VField& f) const { return vreg::max_abs(f); }

  // ---- kernels ----
  VField fd_grad(const Field& f) const {
    return FdOps{&state_->counters, &state_->kernel_timers}.gradient(f);
  }
  Field fd_div(const VField& v) const {
    return FdOps{&state_->counters, &state_->kernel_timers}.divergence(v);
  }

  VField regop(const VField& v, Real beta, bool unit_zero_mode) const {
    return spectral().apply_regop(v, beta, unit_zero_mode);
  }
  VField inv_regop(const VField& v, Real beta) const {
    return spectral().apply_inv_regop(v, beta);
  }
  Real seminorm(const VField& v) const { return spectral().h1_seminorm(v); }
  VField leray(const VField& v) const { return spectral().leray_project(v); }

  Field restrict_to_coarse(const Field& f) const {
    return spectral().restrict_field(f);
  }
  VField restrict_to_coarse(const VField& v) const {
    return spectral().restrict_field(v);
  }
  Field prolong_to_fine(const Field& f) const {
    return spectral().prolong_field(f, grid_);
  }
  VField prolong_to_fine(const VField& v) const {
    return spectral().prolong_field(v, grid_);
  }
  Field high_pass_field(const Field& f) const { return spectral().high_pass(f); }
  VField high_pass_field(const VField& v) const { return spectral().high_pass(v); }

  // ---- semi-Lagrangian support ----

  // RK2 departure points: x* = x - dt v(x), dep = x - dt/2 (v(x) + v(x*)).
  Char make_characteristics(const VField& v, int degree) const {
    state_->counters.characteristics++;
    ScopedTimer t(&state_->kernel_timers.sl);
    const Grid3& g = grid_;
    const Real dt = g.dt();
    Char ch;
    ch.dep = QueryPoints(g, g.points());
    ch.identity = vreg::max_abs(v) == Real(0);
    if (ch.identity) {
      state_->counters.characteristics_identity++;
      index_t p = 0;
      for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j)
          for (int k = 0; k < g.n3; ++k, ++p) {
            Real* q = ch.dep.point(p);
            q[0] = Real(i) * g.h(0);
            q[1] = Real(j) * g.h(1);
            q[2] = Real(k) * g.h(2);
          }
      return ch;
    }
    QueryPoints mid(g, g.points());
    index_t p = 0;
    for (int i = 0; i < g.n1; ++i)
      for (int j = 0; j < g.n2; ++j)
        for (int k = 0; k < g.n3; ++k, ++p) {
          Real* q = mid.point(p);
          q[0] = Real(i) * g.h(0) - dt * v.c1.v[size_t(p)];
          q[1] = Real(j) * g.h(1) - dt * v.c2.v[size_t(p)];
          q[2] = Real(k) * g.h(2) - dt * v.c3.v[size_t(p)];
        }
    std::vector<Real> vs[3];
    for (int c = 0; c < 3; ++c) vs[c] = interp_ops().evaluate(v.comp(c), mid, degree);
    p = 0;
    const Real half = dt / 2;
    for (int i = 0; i < g.n1; ++i)
      for (int j = 0; j < g.n2; ++j)
        for (int k = 0; k < g.n3; ++k, ++p) {
          Real* q = ch.dep.point(p);
          q[0] = Real(i) * g.h(0) - half * (v.c1.v[size_t(p)] + vs[0][size_t(p)]);
          q[1] = Real(j) * g.h(1) - half * (v.c2.v[size_t(p)] + vs[1][size_t(p)]);
          q[2] = Real(k) * g.h(2) - half * (v.c3.v[size_t(p)] + vs[2][size_t(p)]);
        }
    return ch;
  }

  Field interp_at(const Field& f, const Char& ch, int degree) const {
    Field out(grid_);
    auto vals = interp_ops().evaluate(f, ch.dep, degree);
    out.v = std::move(vals);
    return out;
  }

  // Exact transpose of interp_at.
  Field scatter_at(const Field& z, const Char& ch, int degree) const {
    Field out(grid_);
    interp_ops().scatter_add(out, ch.dep, z.data(), degree);
    return out;
  }

  SpectralOps spectral() const {
    return SpectralOps{&state_->plans, &state_->counters,
                       &state_->kernel_timers, coarse_};
  }
  InterpOps interp_ops() const {
    return InterpOps{&state_->counters, &state_->kernel_timers};
  }

 private:
  Grid3 grid_;
  std::shared_ptr<EngineState> state_;
  bool coarse_ = false;
};

}  // namespace vreg
