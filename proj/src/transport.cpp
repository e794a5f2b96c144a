#include "vreg/transport.hpp"

namespace vreg {

namespace {

TimeSeries to_series(const Grid3& g, std::vector<ScalarField>&& slices) {
  TimeSeries ts;
  ts.grid = g;
  ts.slices = std::move(slices);
  return ts;
}

}  // namespace

Characteristics compute_characteristics(const VectorField& v, int degree) {
  SerialEngine eng = SerialEngine::create(v.grid());
  return eng.make_characteristics(v, degree);
}

TimeSeries solve_state(const VectorField& v, const ScalarField& m0,
                       int degree) {
  check_same_grid(v.c1, m0);
  SerialEngine eng = SerialEngine::create(v.grid());
  Flow<SerialEngine> fl(eng, v, degree);
  return to_series(v.grid(), solve_state(fl, m0));
}

TimeSeries solve_adjoint(const VectorField& v, const ScalarField& final_cond,
                         int degree) {
  check_same_grid(v.c1, final_cond);
  SerialEngine eng = SerialEngine::create(v.grid());
  Flow<SerialEngine> fl(eng, v, degree);
  return to_series(v.grid(), solve_adjoint(fl, final_cond));
}

TimeSeries solve_inc_state(const VectorField& v, const VectorField& vt,
                           const TimeSeries& m, int degree) {
  check_same_grid(v, vt);
  SerialEngine eng = SerialEngine::create(v.grid());
  Flow<SerialEngine> fl(eng, v, degree);
  StateCache<SerialEngine> sc;
  sc.m = m.slices;
  return to_series(v.grid(), solve_inc_state(fl, vt, sc));
}

TimeSeries solve_inc_adjoint(const VectorField& v,
                             const ScalarField& final_cond, int degree) {
  check_same_grid(v.c1, final_cond);
  SerialEngine eng = SerialEngine::create(v.grid());
  Flow<SerialEngine> fl(eng, v, degree);
  return to_series(v.grid(), solve_inc_adjoint(fl, final_cond));
}

}  // namespace vreg
