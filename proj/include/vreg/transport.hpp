#pragma once

#include <optional>
#include <vector>

#include "vreg/engine.hpp"

namespace vreg {

inline Real trapezoid_weight(int t, int nt, Real dt) {
  return (t == 0 || t == nt) ? dt / 2 : dt;
}

// Per-velocity transport context. Characteristics are computed once per
// velocity (the field is stationary) and shared by every solve and time
// step; line-search trial velocities get their own Flow.
template <class E>
class Flow {
 public:
  using Field = typename E::Field;
  using VField = typename E::VField;

  Flow(E& eng, VField v, int degree)
      : eng_(&eng), vel_(std::move(v)), degree_(degree) {}

  E& engine() { return *eng_; }
  const VField& velocity() const { return vel_; }
  int degree() const { return degree_; }

  const typename E::Char& forward() {
    if (!fwd_) fwd_ = eng_->make_characteristics(vel_, degree_);
    return *fwd_;
  }

  // Departure points of the reversed field, used by the backward-in-time
  // solves: tracing -v over one step follows the node forward along v.
  const typename E::Char& backward() {
    if (!bwd_) {
      VField neg = eng_->make_vfield();
      axpy(Real(-1), vel_, neg);
      bwd_ = eng_->make_characteristics(neg, degree_);
    }
    return *bwd_;
  }

  // Trapezoidal factor for the zeroth-order term -lambda div(v) of the
  // adjoint equation, integrated along the characteristic:
  //   lambda_t(x) = lambda_{t+1}(dep) * (1 + dt/2 D(dep)) / (1 - dt/2 D(x)).
  const Field& adjoint_source_factor() {
    if (!qr_) {
      const Real dt = eng_->grid().dt();
      Field d = eng_->fd_div(vel_);
      if (dt / 2 * eng_->max_abs_field(d) >= Real(0.99))
        throw numerical_error("divergence too large for the time step");
      Field d_dep = eng_->interp_at(d, backward(), degree_);
      Field f = eng_->make_field();
      const index_t n = index_t(d.v.size());
      for (index_t t = 0; t < n; ++t)
        f.v[size_t(t)] = (Real(1) + dt / 2 * d_dep.v[size_t(t)]) /
                         (Real(1) - dt / 2 * d.v[size_t(t)]);
      qr_ = std::move(f);
    }
    return *qr_;
  }

 private:
  E* eng_;
  VField vel_;
  int degree_;
  std::optional<typename E::Char> fwd_, bwd_;
  std::optional<Field> qr_;
};

// State series plus optionally cached spatial gradients of every slice
// (trades 3*(nt+1)*N reals for skipping FD work in the incremental solves).
template <class E>
struct StateCache {
  std::vector<typename E::Field> m;
  std::vector<typename E::VField> grad;
  bool want_cache = false;

  void ensure_gradients(E& eng) {
    if (!want_cache || !grad.empty()) return;
    grad.reserve(m.size());
    for (const auto& slice : m) grad.push_back(eng.fd_grad(slice));
  }
};

// m(.,0) = m0; each step interpolates at the departure points.
template <class E>
std::vector<typename E::Field> solve_state(Flow<E>& fl,
                                           const typename E::Field& m0) {
  E& eng = fl.engine();
  eng.counters().sl_state++;
  const int nt = eng.grid().nt;
  std::vector<typename E::Field> m;
  m.reserve(size_t(nt) + 1);
  m.push_back(m0);
  for (int t = 0; t < nt; ++t)
    m.push_back(eng.interp_at(m.back(), fl.forward(), fl.degree()));
  return m;
}

namespace detail {

template <class E>
std::vector<typename E::Field> adjoint_sweep(Flow<E>& fl,
                                             const typename E::Field& fin) {
  E& eng = fl.engine();
  const int nt = eng.grid().nt;
  const typename E::Field& qr = fl.adjoint_source_factor();
  std::vector<typename E::Field> lam(size_t(nt) + 1);
  lam[size_t(nt)] = fin;
  for (int t = nt - 1; t >= 0; --t) {
    typename E::Field tmp =
        eng.interp_at(lam[size_t(t) + 1], fl.backward(), fl.degree());
    hadamard(tmp, qr, tmp);
    lam[size_t(t)] = std::move(tmp);
  }
  return lam;
}

}  // namespace detail

// -d_t lambda - div(lambda v) = 0 backward in time, advective form with the
// divergence term integrated trapezoidally along the characteristics.
template <class E>
std::vector<typename E::Field> solve_adjoint(Flow<E>& fl,
                                             const typename E::Field& fin) {
  fl.engine().counters().sl_adjoint++;
  return detail::adjoint_sweep(fl, fin);
}

// Same operator as solve_adjoint; the Gauss-Newton approximation drops the
// remaining coupling terms. Only the final condition differs.
template <class E>
std::vector<typename E::Field> solve_inc_adjoint(Flow<E>& fl,
                                                 const typename E::Field& fin) {
  fl.engine().counters().sl_inc_adjoint++;
  return detail::adjoint_sweep(fl, fin);
}

// d_t mt + v.grad mt = -vt.grad m, mt(.,0) = 0; the source is accumulated
// with a two-point trapezoidal rule along the characteristics.
template <class E>
std::vector<typename E::Field> solve_inc_state(Flow<E>& fl,
                                               const typename E::VField& vt,
                                               StateCache<E>& sc) {
  E& eng = fl.engine();
  eng.counters().sl_inc_state++;
  const int nt = eng.grid().nt;
  const Real dt = eng.grid().dt();
  sc.ensure_gradients(eng);

  std::vector<typename E::Field> mt(size_t(nt) + 1);
  mt[0] = eng.make_field();
  typename E::Field u_prev = eng.make_field();
  if (!sc.grad.empty()) {
    pointwise_dot(vt, sc.grad[0], u_prev);
  } else {
    auto g0 = eng.fd_grad(sc.m[0]);
    pointwise_dot(vt, g0, u_prev);
  }
  for (int t = 0; t < nt; ++t) {
    typename E::Field u_next = eng.make_field();
    if (!sc.grad.empty()) {
      pointwise_dot(vt, sc.grad[size_t(t) + 1], u_next);
    } else {
      auto gn = eng.fd_grad(sc.m[size_t(t) + 1]);
      pointwise_dot(vt, gn, u_next);
    }
    typename E::Field step =
        eng.interp_at(mt[size_t(t)], fl.forward(), fl.degree());
    typename E::Field u_dep = eng.interp_at(u_prev, fl.forward(), fl.degree());
    axpy(-dt / 2, u_dep, step);
    axpy(-dt / 2, u_next, step);
    mt[size_t(t) + 1] = std::move(step);
    u_prev = std::move(u_next);
  }
  return mt;
}

// Data-term assembly sum_t w_t lambda_t .* grad m_t (trapezoid in time).
template <class E>
typename E::VField integrate_lambda_grad_m(
    E& eng, const std::vector<typename E::Field>& lam, StateCache<E>& sc) {
  const int nt = eng.grid().nt;
  const Real dt = eng.grid().dt();
  sc.ensure_gradients(eng);
  typename E::VField out = eng.make_vfield();
  for (int t = 0; t <= nt; ++t) {
    if (!sc.grad.empty()) {
      axpy_scaled_vector(trapezoid_weight(t, nt, dt), lam[size_t(t)],
                         sc.grad[size_t(t)], out);
    } else {
      auto g = eng.fd_grad(sc.m[size_t(t)]);
      axpy_scaled_vector(trapezoid_weight(t, nt, dt), lam[size_t(t)], g, out);
    }
  }
  return out;
}

// Exact transpose of the incremental-state map composed with the data-term
// assembly: out = sum_t w_t grad m_t .* psi_t, psi_nt = fin, psi_t = I^T
// psi_{t+1}. Substitutes for the semi-Lagrangian incremental adjoint in the
// Hessian matvec; symmetric against solve_inc_state by construction.
template <class E>
typename E::VField adjoint_transpose_assemble(Flow<E>& fl, StateCache<E>& sc,
                                              const typename E::Field& fin) {
  E& eng = fl.engine();
  eng.counters().sl_inc_adjoint++;
  const int nt = eng.grid().nt;
  const Real dt = eng.grid().dt();
  sc.ensure_gradients(eng);
  typename E::VField out = eng.make_vfield();
  typename E::Field psi = fin;
  for (int t = nt; t >= 0; --t) {
    if (!sc.grad.empty()) {
      axpy_scaled_vector(trapezoid_weight(t, nt, dt), psi, sc.grad[size_t(t)],
                         out);
    } else {
      auto g = eng.fd_grad(sc.m[size_t(t)]);
      axpy_scaled_vector(trapezoid_weight(t, nt, dt), psi, g, out);
    }
    if (t > 0) psi = eng.scatter_at(psi, fl.forward(), fl.degree());
  }
  return out;
}

// ---- serial module-level API ----

using Characteristics = SerialEngine::Char;

Characteristics compute_characteristics(const VectorField& v, int degree = 3);
TimeSeries solve_state(const VectorField& v, const ScalarField& m0,
                       int degree = 3);
TimeSeries solve_adjoint(const VectorField& v, const ScalarField& final_cond,
                         int degree = 3);
TimeSeries solve_inc_state(const VectorField& v, const VectorField& vt,
                           const TimeSeries& m, int degree = 3);
TimeSeries solve_inc_adjoint(const VectorField& v,
                             const ScalarField& final_cond, int degree = 3);

}  // namespace vreg
