#include "vreg/spectral.hpp"

#include <array>
#include <cmath>

namespace vreg {

namespace {

FftPlanCache& local_cache() {
  thread_local FftPlanCache cache;
  return cache;
}

SpectralOps local_ops() { return SpectralOps{&local_cache(), nullptr, nullptr}; }

// Partner signed frequencies of a coarse mode on one axis: the coarse
// Nyquist line |nu| = nc/2 aliases the two fine modes +-nc/2, every other
// retained mode maps to a single fine mode.
struct AxisPartners {
  std::array<int, 2> nu;
  int count;
};

AxisPartners partners(int nu, int nc) {
  if (std::abs(nu) == nc / 2) return {{nc / 2, -nc / 2}, 2};
  return {{nu, 0}, 1};
}

}  // namespace

SpectralField SpectralOps::forward(const ScalarField& f) const {
  if (counters) (coarse ? counters->fft_forward_coarse : counters->fft_forward)++;
  ScopedTimer t(timers ? &timers->fft : nullptr);
  SpectralField out(f.grid);
  plans->get(f.grid).forward(f, out);
  return out;
}

ScalarField SpectralOps::inverse(const SpectralField& F) const {
  if (counters) (coarse ? counters->fft_inverse_coarse : counters->fft_inverse)++;
  ScopedTimer t(timers ? &timers->fft : nullptr);
  ScalarField out(F.grid);
  plans->get(F.grid).inverse(F, out);
  return out;
}

VectorField SpectralOps::apply_regop(const VectorField& v, Real beta,
                                     bool unit_zero_mode) const {
  if (beta <= Real(0)) throw parameter_error("regularization beta must be > 0");
  const Grid3& g = v.grid();
  VectorField out(g);
  for (int c = 0; c < 3; ++c) {
    SpectralField F = forward(v.comp(c));
    for (int k1 = 0; k1 < g.n1; ++k1) {
      const Real f1 = Real(signed_freq(k1, g.n1));
      for (int k2 = 0; k2 < g.n2; ++k2) {
        const Real f2 = Real(signed_freq(k2, g.n2));
        for (int k3 = 0; k3 < F.n3h(); ++k3) {
          const Real f3 = Real(k3);
          Real sym = f1 * f1 + f2 * f2 + f3 * f3;
          if (sym == Real(0)) sym = unit_zero_mode ? Real(1) : Real(0);
          F.at(k1, k2, k3) *= beta * sym;
        }
      }
    }
    out.comp(c) = inverse(F);
  }
  return out;
}

VectorField SpectralOps::apply_inv_regop(const VectorField& w, Real beta) const {
  if (beta <= Real(0)) throw parameter_error("regularization beta must be > 0");
  const Grid3& g = w.grid();
  VectorField out(g);
  for (int c = 0; c < 3; ++c) {
    SpectralField F = forward(w.comp(c));
    for (int k1 = 0; k1 < g.n1; ++k1) {
      const Real f1 = Real(signed_freq(k1, g.n1));
      for (int k2 = 0; k2 < g.n2; ++k2) {
        const Real f2 = Real(signed_freq(k2, g.n2));
        for (int k3 = 0; k3 < F.n3h(); ++k3) {
          const Real f3 = Real(k3);
          Real sym = f1 * f1 + f2 * f2 + f3 * f3;
          if (sym == Real(0)) sym = Real(1);
          F.at(k1, k2, k3) /= beta * sym;
        }
      }
    }
    out.comp(c) = inverse(F);
  }
  return out;
}

Real SpectralOps::h1_seminorm(const VectorField& v) const {
  const Grid3& g = v.grid();
  const Real norm = Real(two_pi * two_pi * two_pi) /
                    (Real(g.points()) * Real(g.points()));
  Real total = 0;
  for (int c = 0; c < 3; ++c) {
    SpectralField F = forward(v.comp(c));
    // k2-major fold, matching the distributed spectral layout
    for (int k2 = 0; k2 < g.n2; ++k2) {
      const Real f2 = Real(signed_freq(k2, g.n2));
      Real row = 0;
      for (int k3 = 0; k3 < F.n3h(); ++k3) {
        const Real w3 = (k3 == 0 || k3 == g.n3 / 2) ? Real(1) : Real(2);
        for (int k1 = 0; k1 < g.n1; ++k1) {
          const Real f1 = Real(signed_freq(k1, g.n1));
          const Real sym = f1 * f1 + f2 * f2 + Real(k3) * Real(k3);
          row += w3 * sym * std::norm(F.at(k1, k2, k3));
        }
      }
      total += row;
    }
  }
  return total * norm;
}

VectorField SpectralOps::leray_project(const VectorField& v) const {
  const Grid3& g = v.grid();
  SpectralField F1 = forward(v.c1);
  SpectralField F2 = forward(v.c2);
  SpectralField F3 = forward(v.c3);
  for (int k1 = 0; k1 < g.n1; ++k1) {
    const Real f1 = Real(signed_freq(k1, g.n1));
    for (int k2 = 0; k2 < g.n2; ++k2) {
      const Real f2 = Real(signed_freq(k2, g.n2));
      for (int k3 = 0; k3 < F1.n3h(); ++k3) {
        const Real f3 = Real(k3);
        const Real ksq = f1 * f1 + f2 * f2 + f3 * f3;
        if (ksq == Real(0)) continue;
        const auto i = size_t(F1.index(k1, k2, k3));
        const std::complex<Real> kv =
            (f1 * F1.c[i] + f2 * F2.c[i] + f3 * F3.c[i]) / ksq;
        F1.c[i] -= f1 * kv;
        F2.c[i] -= f2 * kv;
        F3.c[i] -= f3 * kv;
      }
    }
  }
  VectorField out(g);
  out.c1 = inverse(F1);
  out.c2 = inverse(F2);
  out.c3 = inverse(F3);
  return out;
}

void restrict_spectrum(const SpectralField& fine, SpectralField& coarse) {
  const Grid3& gf = fine.grid;
  const Grid3& gc = coarse.grid;
  // amplitude-preserving: unnormalized coefficients scale by Nc/Nf, the
  // coarse Nyquist lines sum their two fine alias partners
  const Real scal = Real(gc.points()) / Real(gf.points());
  for (int k1 = 0; k1 < gc.n1; ++k1) {
    const auto p1 = partners(signed_freq(k1, gc.n1), gc.n1);
    for (int k2 = 0; k2 < gc.n2; ++k2) {
      const auto p2 = partners(signed_freq(k2, gc.n2), gc.n2);
      for (int k3 = 0; k3 <= gc.n3 / 2; ++k3) {
        const auto p3 = partners(k3, gc.n3);
        std::complex<Real> acc(0, 0);
        for (int a = 0; a < p1.count; ++a)
          for (int b = 0; b < p2.count; ++b)
            for (int c = 0; c < p3.count; ++c) {
              const int f1 = (p1.nu[size_t(a)] % gf.n1 + gf.n1) % gf.n1;
              const int f2 = (p2.nu[size_t(b)] % gf.n2 + gf.n2) % gf.n2;
              const int f3 = (p3.nu[size_t(c)] % gf.n3 + gf.n3) % gf.n3;
              acc += fine.full(f1, f2, f3);
            }
        coarse.at(k1, k2, k3) = acc * scal;
      }
    }
  }
}

void prolong_spectrum(const SpectralField& coarse, SpectralField& fine) {
  const Grid3& gc = coarse.grid;
  const Grid3& gf = fine.grid;
  const Real scal = Real(gf.points()) / Real(gc.points());
  for (auto& x : fine.c) x = std::complex<Real>(0, 0);
  for (int k1 = 0; k1 < gc.n1; ++k1) {
    const auto p1 = partners(signed_freq(k1, gc.n1), gc.n1);
    for (int k2 = 0; k2 < gc.n2; ++k2) {
      const auto p2 = partners(signed_freq(k2, gc.n2), gc.n2);
      for (int k3 = 0; k3 < gc.n3; ++k3) {
        const auto p3 = partners(signed_freq(k3, gc.n3), gc.n3);
        const int nsplit = p1.count * p2.count * p3.count;
        const std::complex<Real> val =
            coarse.full(k1, k2, (k3 % gc.n3 + gc.n3) % gc.n3) * scal /
            Real(nsplit);
        for (int a = 0; a < p1.count; ++a)
          for (int b = 0; b < p2.count; ++b)
            for (int c = 0; c < p3.count; ++c) {
              const int nu3 = p3.nu[size_t(c)];
              if (nu3 < 0) continue;  // implicit via Hermitian symmetry
              const int f1 = (p1.nu[size_t(a)] % gf.n1 + gf.n1) % gf.n1;
              const int f2 = (p2.nu[size_t(b)] % gf.n2 + gf.n2) % gf.n2;
              fine.at(f1, f2, nu3) = val;
            }
      }
    }
  }
}

void high_pass_spectrum(SpectralField& F) {
  const Grid3& g = F.grid;
  const int b1 = g.n1 / 4, b2 = g.n2 / 4, b3 = g.n3 / 4;
  SpectralField orig = F;
  for (int k1 = 0; k1 < g.n1; ++k1) {
    const int nu1 = signed_freq(k1, g.n1);
    for (int k2 = 0; k2 < g.n2; ++k2) {
      const int nu2 = signed_freq(k2, g.n2);
      for (int k3 = 0; k3 <= g.n3 / 2; ++k3) {
        if (std::abs(nu1) > b1 || std::abs(nu2) > b2 || k3 > b3)
          continue;  // outside the coarse band: kept by the high pass
        const bool y1 = std::abs(nu1) == b1;
        const bool y2 = std::abs(nu2) == b2;
        const bool y3 = k3 == b3;
        if (!y1 && !y2 && !y3) {
          F.at(k1, k2, k3) = std::complex<Real>(0, 0);
          continue;
        }
        // Nyquist line: subtract the alias-pair average that the
        // restriction keeps, leaving the antisymmetric remainder.
        std::complex<Real> acc(0, 0);
        int cnt = 0;
        for (int s1 = 0; s1 < (y1 ? 2 : 1); ++s1)
          for (int s2 = 0; s2 < (y2 ? 2 : 1); ++s2)
            for (int s3 = 0; s3 < (y3 ? 2 : 1); ++s3) {
              const int m1 = y1 ? (s1 ? g.n1 - b1 : b1) : k1;
              const int m2 = y2 ? (s2 ? g.n2 - b2 : b2) : k2;
              const int m3 = y3 ? (s3 ? g.n3 - b3 : b3) : k3;
              acc += orig.full(m1, m2, m3);
              ++cnt;
            }
        F.at(k1, k2, k3) = orig.at(k1, k2, k3) - acc / Real(cnt);
      }
    }
  }
}

ScalarField SpectralOps::restrict_field(const ScalarField& fine) const {
  const Grid3& gf = fine.grid;
  if (gf.n1 % 2 || gf.n2 % 2 || gf.n3 % 2)
    throw dimension_error("restrict requires even grid sizes");
  SpectralField F = forward(fine);
  SpectralField C(gf.coarse());
  restrict_spectrum(F, C);
  SpectralOps cops{plans, counters, timers, true};
  return cops.inverse(C);
}

ScalarField SpectralOps::prolong_field(const ScalarField& coarse_f,
                                       const Grid3& fine_grid) const {
  SpectralOps cops{plans, counters, timers, true};
  SpectralField C = cops.forward(coarse_f);
  SpectralField F(fine_grid);
  prolong_spectrum(C, F);
  return inverse(F);
}

ScalarField SpectralOps::high_pass(const ScalarField& f) const {
  if (f.grid.n1 % 2 || f.grid.n2 % 2 || f.grid.n3 % 2)
    throw dimension_error("high_pass requires even grid sizes");
  SpectralField F = forward(f);
  high_pass_spectrum(F);
  return inverse(F);
}

VectorField SpectralOps::restrict_field(const VectorField& fine) const {
  VectorField out(fine.grid().coarse());
  for (int c = 0; c < 3; ++c) out.comp(c) = restrict_field(fine.comp(c));
  return out;
}

VectorField SpectralOps::prolong_field(const VectorField& coarse_v,
                                       const Grid3& fine_grid) const {
  VectorField out(fine_grid);
  for (int c = 0; c < 3; ++c)
    out.comp(c) = prolong_field(coarse_v.comp(c), fine_grid);
  return out;
}

VectorField SpectralOps::high_pass(const VectorField& v) const {
  VectorField out(v.grid());
  for (int c = 0; c < 3; ++c) out.comp(c) = high_pass(v.comp(c));
  return out;
}

Real spectral_inner(const SpectralField& a, const SpectralField& b) {
  if (!a.grid.same_space(b.grid)) throw dimension_error("grid mismatch");
  const Grid3& g = a.grid;
  Real total = 0;
  for (int k2 = 0; k2 < g.n2; ++k2) {
    Real row = 0;
    for (int k3 = 0; k3 < a.n3h(); ++k3) {
      const Real w3 = (k3 == 0 || k3 == g.n3 / 2) ? Real(1) : Real(2);
      for (int k1 = 0; k1 < g.n1; ++k1) {
        const auto x = a.at(k1, k2, k3);
        const auto y = b.at(k1, k2, k3);
        row += w3 * (x.real() * y.real() + x.imag() * y.imag());
      }
    }
    total += row;
  }
  return total * Real(two_pi * two_pi * two_pi) /
         (Real(g.points()) * Real(g.points()));
}

SpectralField fft_forward(const ScalarField& f) { return local_ops().forward(f); }
ScalarField fft_inverse(const SpectralField& F) { return local_ops().inverse(F); }
VectorField apply_regop(const VectorField& v, Real beta, bool unit_zero_mode) {
  return local_ops().apply_regop(v, beta, unit_zero_mode);
}
VectorField apply_inv_regop(const VectorField& w, Real beta) {
  return local_ops().apply_inv_regop(w, beta);
}
VectorField leray_project(const VectorField& v) {
  return local_ops().leray_project(v);
}
ScalarField restrict_field(const ScalarField& fine) {
  return local_ops().restrict_field(fine);
}
ScalarField prolong_field(const ScalarField& coarse_f, const Grid3& fine) {
  return local_ops().prolong_field(coarse_f, fine);
}
ScalarField high_pass(const ScalarField& f) { return local_ops().high_pass(f); }
Real h1_seminorm(const VectorField& v) { return local_ops().h1_seminorm(v); }

}  // namespace vreg
