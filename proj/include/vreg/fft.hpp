#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "vreg/field.hpp"

namespace vreg {

// Half-space coefficients of a real-to-complex 3D transform,
// shape n1 x n2 x (n3/2+1), row-major with k3 innermost.
// Forward transform is unnormalized; the inverse scales by 1/N.
struct SpectralField {
  Grid3 grid;
  std::vector<std::complex<Real>> c;

  SpectralField() = default;
  explicit SpectralField(const Grid3& g)
      : grid(g),
        c(size_t(g.n1) * size_t(g.n2) * size_t(g.n3 / 2 + 1),
          std::complex<Real>(0, 0)) {}

  int n3h() const { return grid.n3 / 2 + 1; }
  index_t index(int k1, int k2, int k3) const {
    return (index_t(k1) * grid.n2 + k2) * n3h() + k3;
  }
  std::complex<Real>& at(int k1, int k2, int k3) {
    return c[size_t(index(k1, k2, k3))];
  }
  std::complex<Real> at(int k1, int k2, int k3) const {
    return c[size_t(index(k1, k2, k3))];
  }

  // Full-space lookup; k1,k2 in [0,n), k3 in [0,n3). Entries with
  // k3 > n3/2 are reconstructed from Hermitian symmetry of the real field.
  std::complex<Real> full(int k1, int k2, int k3) const {
    if (k3 <= grid.n3 / 2) return at(k1, k2, k3);
    const int m1 = (grid.n1 - k1) % grid.n1;
    const int m2 = (grid.n2 - k2) % grid.n2;
    const int m3 = grid.n3 - k3;
    return std::conj(at(m1, m2, m3));
  }
};

// Signed frequency of DFT bin k on an axis with n points: in (-n/2, n/2].
inline int signed_freq(int k, int n) { return k <= n / 2 ? k : k - n; }

// Serial 3D r2c/c2r plans with dedicated buffers. One instance per grid;
// execution is safe from the owning thread only.
class FftPlan {
 public:
  explicit FftPlan(const Grid3& g);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  void forward(const ScalarField& f, SpectralField& out);
  void inverse(const SpectralField& in, ScalarField& out);

 private:
  Grid3 grid_;
  void* fwd_ = nullptr;
  void* inv_ = nullptr;
  Real* rbuf_ = nullptr;
  void* cbuf_ = nullptr;  // fftw_complex array
};

// Lazily created plans keyed by grid dimensions. Each worker owns a cache;
// caches are not shared across threads.
class FftPlanCache {
 public:
  FftPlan& get(const Grid3& g);

 private:
  std::map<std::tuple<int, int, int>, std::unique_ptr<FftPlan>> plans_;
};

// Plan creation/destruction in FFTW is not thread safe; all plan lifecycle
// code must hold this lock.
std::mutex& fftw_planner_mutex();

}  // namespace vreg
