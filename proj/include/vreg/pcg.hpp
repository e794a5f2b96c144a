#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "vreg/types.hpp"

namespace vreg {

struct PcgOptions {
  Real tol = Real(1e-6);     // on ||r_k|| / ||r_0||
  int max_iters = 500;
  bool x_is_zero = true;     // skip the initial matvec when the guess is 0
  bool record_history = true;
};

struct PcgResult {
  int iters = 0;
  Real rel_res = 1;
  bool converged = false;
  bool negative_curvature = false;
  std::vector<Real> history;      // ||r_k||/||r_0||, k = 0..iters
  std::vector<Real> history_pre;  // sqrt(r'Pr) relative, same indexing
};

// Left-preconditioned conjugate gradients on an SPD operator. MatVec and
// Prec map a VField to a VField; inner products go through the engine so
// the distributed backend reduces deterministically.
template <class E, class MatVec, class Prec>
PcgResult pcg(E& eng, MatVec&& apply_h, Prec&& apply_p,
              const typename E::VField& b, typename E::VField& x,
              const PcgOptions& opt) {
  using VField = typename E::VField;
  PcgResult res;

  VField r = eng.make_vfield();
  if (opt.x_is_zero) {
    r = b;
  } else {
    VField hx = apply_h(x);
    r = b;
    axpy(Real(-1), hx, r);
  }
  const Real r0n = eng.norm2(r);
  if (r0n == Real(0)) {
    res.converged = true;
    res.rel_res = 0;
    if (opt.record_history) {
      res.history.push_back(0);
      res.history_pre.push_back(0);
    }
    return res;
  }

  VField z = apply_p(r);
  VField p = z;
  Real rho = eng.inner(r, z);
  const Real rho0 = rho;
  if (opt.record_history) {
    res.history.push_back(1);
    res.history_pre.push_back(1);
  }

  for (int it = 1; it <= opt.max_iters; ++it) {
    VField q = apply_h(p);
    const Real pq = eng.inner(p, q);
    if (pq <= Real(0)) {
      res.negative_curvature = true;
      return res;
    }
    const Real alpha = rho / pq;
    axpy(alpha, p, x);
    axpy(-alpha, q, r);
    const Real rn = eng.norm2(r);
    res.iters = it;
    res.rel_res = rn / r0n;
    if (opt.record_history) res.history.push_back(res.rel_res);
    if (res.rel_res <= opt.tol) {
      res.converged = true;
      return res;
    }
    if (it == opt.max_iters) break;
    z = apply_p(r);
    const Real rho_new = eng.inner(r, z);
    if (opt.record_history)
      res.history_pre.push_back(std::sqrt(std::max(rho_new, Real(0)) / rho0));
    const Real beta = rho_new / rho;
    rho = rho_new;
    scale(p, beta);
    axpy(Real(1), z, p);
  }
  return res;
}

}  // namespace vreg
