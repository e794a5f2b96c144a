#include "vreg/fft.hpp"

#include <fftw3.h>

#include <cstring>

namespace vreg {

#ifdef VREG_SINGLE
#define VFFTW(name) fftwf_##name
using fftw_complex_t = fftwf_complex;
using fftw_plan_t = fftwf_plan;
#else
#define VFFTW(name) fftw_##name
using fftw_complex_t = fftw_complex;
using fftw_plan_t = fftw_plan;
#endif

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

FftPlan::FftPlan(const Grid3& g) : grid_(g) {
  const size_t nreal = size_t(g.points());
  const size_t ncplx = size_t(g.n1) * size_t(g.n2) * size_t(g.n3 / 2 + 1);
  rbuf_ = static_cast<Real*>(VFFTW(malloc)(sizeof(Real) * nreal));
  cbuf_ = VFFTW(malloc)(sizeof(fftw_complex_t) * ncplx);
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  // FFTW_ESTIMATE keeps plan selection deterministic across runs.
  fwd_ = VFFTW(plan_dft_r2c_3d)(g.n1, g.n2, g.n3, rbuf_,
                                static_cast<fftw_complex_t*>(cbuf_),
                                FFTW_ESTIMATE);
  inv_ = VFFTW(plan_dft_c2r_3d)(g.n1, g.n2, g.n3,
                                static_cast<fftw_complex_t*>(cbuf_), rbuf_,
                                FFTW_ESTIMATE);
  if (!fwd_ || !inv_) throw numerical_error("fftw plan creation failed");
}

FftPlan::~FftPlan() {
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  if (fwd_) VFFTW(destroy_plan)(static_cast<fftw_plan_t>(fwd_));
  if (inv_) VFFTW(destroy_plan)(static_cast<fftw_plan_t>(inv_));
  VFFTW(free)(rbuf_);
  VFFTW(free)(cbuf_);
}

void FftPlan::forward(const ScalarField& f, SpectralField& out) {
  if (!f.grid.same_space(grid_)) throw dimension_error("fft grid mismatch");
  if (!out.grid.same_space(grid_)) out = SpectralField(grid_);
  std::memcpy(rbuf_, f.data(), sizeof(Real) * size_t(grid_.points()));
  VFFTW(execute)(static_cast<fftw_plan_t>(fwd_));
  std::memcpy(out.c.data(), cbuf_, sizeof(fftw_complex_t) * out.c.size());
}

void FftPlan::inverse(const SpectralField& in, ScalarField& out) {
  if (!in.grid.same_space(grid_)) throw dimension_error("fft grid mismatch");
  if (!out.grid.same_space(grid_)) out = ScalarField(grid_);
  std::memcpy(cbuf_, in.c.data(), sizeof(fftw_complex_t) * in.c.size());
  VFFTW(execute)(static_cast<fftw_plan_t>(inv_));
  const Real scal = Real(1) / Real(grid_.points());
  const Real* src = rbuf_;
  for (index_t t = 0; t < grid_.points(); ++t) out.v[size_t(t)] = src[t] * scal;
}

FftPlan& FftPlanCache::get(const Grid3& g) {
  auto key = std::make_tuple(g.n1, g.n2, g.n3);
  auto it = plans_.find(key);
  if (it == plans_.end())
    it = plans_.emplace(key, std::make_unique<FftPlan>(g)).first;
  return *it->second;
}

}  // namespace vreg
