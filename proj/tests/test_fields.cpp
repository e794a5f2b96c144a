#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "vreg/field.hpp"

using namespace vreg;

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid3::make(6, 8, 8), dimension_error);
  CHECK_THROWS_AS(Grid3::make(9, 8, 8), dimension_error);
  CHECK_THROWS_AS(Grid3::make(8, 8, 8, 0), parameter_error);
  Grid3 g = Grid3::make(8, 10, 12, 4);
  CHECK(g.points() == 8 * 10 * 12);
  CHECK(g.dt() == doctest::Approx(0.25));
}

TEST_CASE("index round-trip") {
  Grid3 g = Grid3::make(8, 10, 12);
  for (index_t idx = 0; idx < g.points(); ++idx) {
    int i, j, k;
    g.unindex(idx, i, j, k);
    CHECK(g.index(i, j, k) == idx);
  }
  CHECK(g.index(1, 2, 3) == (1 * 10 + 2) * 12 + 3);
}

TEST_CASE("inner product on constant field equals domain volume") {
  Grid3 g = Grid3::cube(16);
  ScalarField f(g);
  fill(f, Real(1));
  const double vol = two_pi * two_pi * two_pi;
  CHECK(inner(f, f) == doctest::Approx(vol).epsilon(1e-13));
  ScalarField z(g);
  CHECK(norm2(z) == Real(0));
}

TEST_CASE("inner of sin(x1) with itself on 32^3") {
  Grid3 g = Grid3::cube(32);
  ScalarField f(g);
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j)
      for (int k = 0; k < g.n3; ++k) f.at(i, j, k) = std::sin(i * g.h(0));
  // integral of sin^2 over one axis is pi, times (2 pi)^2 for the others
  const double expect = 4.0 * std::pow(std::numbers::pi, 3);
  CHECK(inner(f, f) == doctest::Approx(expect).epsilon(1e-13));
  CHECK(expect == doctest::Approx(124.025).epsilon(1e-4));
}

TEST_CASE("inner is symmetric positive definite") {
  Grid3 g = Grid3::cube(8);
  auto a = testing::white_noise_field(g, 1);
  auto b = testing::white_noise_field(g, 2);
  CHECK(inner(a, b) == inner(b, a));
  CHECK(inner(a, a) > 0);
}

TEST_CASE("grid mismatch raises dimension error") {
  ScalarField a(Grid3::cube(8)), b(Grid3::cube(16));
  CHECK_THROWS_AS((void)inner(a, b), dimension_error);
  CHECK_THROWS_AS(axpy(Real(1), a, b), dimension_error);
}

TEST_CASE("axpy and scale") {
  Grid3 g = Grid3::cube(8);
  auto a = testing::white_noise_field(g, 3);
  ScalarField b = a;
  axpy(Real(-1), a, b);
  CHECK(max_abs(b) == Real(0));
  scale(a, Real(0));
  CHECK(max_abs(a) == Real(0));
}

TEST_CASE("intensity normalization maps to [0,1]") {
  Grid3 g = Grid3::cube(8);
  auto f = testing::white_noise_field(g, 4);
  normalize_intensity(f);
  Real lo, hi;
  min_max(f, lo, hi);
  CHECK(lo == Real(0));
  CHECK(hi == Real(1));
  ScalarField c(g);
  fill(c, Real(3.5));
  normalize_intensity(c);
  CHECK(max_abs(c) == Real(0));
}
