#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "vreg/spectral.hpp"

using namespace vreg;
using vreg::testing::max_abs_diff;
using vreg::testing::random_smooth_vfield;
using vreg::testing::white_noise_field;

namespace {

ScalarField make_mode(const Grid3& g, int k1, int k2, int k3, bool use_sin) {
  ScalarField f(g);
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j)
      for (int k = 0; k < g.n3; ++k) {
        const double ph =
            k1 * i * double(g.h(0)) + k2 * j * double(g.h(1)) +
            k3 * k * double(g.h(2));
        f.at(i, j, k) = Real(use_sin ? std::sin(ph) : std::cos(ph));
      }
  return f;
}

// Spectral divergence norm of a vector field (i k . v_hat).
Real spectral_divergence_norm(const VectorField& v) {
  const Grid3& g = v.grid();
  SpectralField F1 = fft_forward(v.c1);
  SpectralField F2 = fft_forward(v.c2);
  SpectralField F3 = fft_forward(v.c3);
  double acc = 0;
  for (int k1 = 0; k1 < g.n1; ++k1)
    for (int k2 = 0; k2 < g.n2; ++k2)
      for (int k3 = 0; k3 < F1.n3h(); ++k3) {
        const double f1 = signed_freq(k1, g.n1);
        const double f2 = signed_freq(k2, g.n2);
        const double f3 = k3;
        const auto d = f1 * F1.at(k1, k2, k3) + f2 * F2.at(k1, k2, k3) +
                       f3 * F3.at(k1, k2, k3);
        acc = std::max(acc, std::abs(d));
      }
  return Real(acc / double(g.points()));
}

}  // namespace

TEST_CASE("fft of constant field is DC only") {
  Grid3 g = Grid3::cube(16);
  ScalarField f(g);
  fill(f, Real(1));
  SpectralField F = fft_forward(f);
  CHECK(F.at(0, 0, 0).real() == doctest::Approx(double(g.points())));
  double offdc = 0;
  for (size_t i = 1; i < F.c.size(); ++i) offdc = std::max(offdc, std::abs(F.c[i]));
  CHECK(offdc < 1e-9);
}

TEST_CASE("fft of cos(x1) occupies only |k1| = 1") {
  Grid3 g = Grid3::cube(16);
  ScalarField f = make_mode(g, 1, 0, 0, false);
  SpectralField F = fft_forward(f);
  CHECK(F.at(1, 0, 0).real() == doctest::Approx(double(g.points()) / 2));
  CHECK(std::abs(F.at(2, 0, 0)) < 1e-9);
  CHECK(std::abs(F.at(0, 1, 0)) < 1e-9);
}

TEST_CASE("fft round-trip on random data") {
  Grid3 g = Grid3::make(16, 12, 20);
  ScalarField f = white_noise_field(g, 7);
  ScalarField back = fft_inverse(fft_forward(f));
  CHECK(max_abs_diff(f, back) <= 1e-12 * max_abs(f));
}

TEST_CASE("Parseval identity") {
  Grid3 g = Grid3::cube(16);
  ScalarField a = white_noise_field(g, 11);
  ScalarField b = white_noise_field(g, 12);
  const Real grid_inner = inner(a, b);
  const Real spec_inner = spectral_inner(fft_forward(a), fft_forward(b));
  CHECK(spec_inner == doctest::Approx(grid_inner).epsilon(1e-12));
}

TEST_CASE("regop acts as beta |k|^2 on single modes") {
  Grid3 g = Grid3::cube(16);
  VectorField v(g);
  v.c1 = make_mode(g, 1, 0, 0, true);
  const Real beta = Real(0.37);
  VectorField av = apply_regop(v, beta);
  VectorField expect(g);
  expect.c1 = v.c1;
  scale(expect.c1, beta);
  CHECK(max_abs_diff(av, expect) < 1e-12);

  // mode (1,2,0): eigenvalue 5
  v = VectorField(g);
  v.c2 = make_mode(g, 1, 2, 0, true);
  av = apply_regop(v, beta);
  expect = VectorField(g);
  expect.c2 = v.c2;
  scale(expect.c2, beta * 5);
  CHECK(max_abs_diff(av, expect) < 1e-11);
}

TEST_CASE("regop on constants follows the unit zero-mode convention") {
  Grid3 g = Grid3::cube(16);
  VectorField v(g);
  fill(v, Real(2.5));
  const Real beta = Real(0.8);
  VectorField av = apply_regop(v, beta);
  VectorField expect = v;
  scale(expect, beta);
  CHECK(max_abs_diff(av, expect) < 1e-13);
  // true-symbol variant wipes the mean instead
  VectorField at = apply_regop(v, beta, false);
  CHECK(max_abs(at) < 1e-13);
}

TEST_CASE("inv_regop inverts regop") {
  Grid3 g = Grid3::cube(16);
  VectorField v = random_smooth_vfield(g, 21);
  const Real beta = Real(5e-3);
  VectorField round = apply_inv_regop(apply_regop(v, beta), beta);
  CHECK(max_abs_diff(round, v) <= 1e-10 * std::max(Real(1), max_abs(v)));
}

TEST_CASE("regop is self-adjoint and positive") {
  Grid3 g = Grid3::cube(12);
  VectorField v = random_smooth_vfield(g, 31);
  VectorField w = random_smooth_vfield(g, 32);
  VectorField av = apply_regop(v, Real(1));
  VectorField aw = apply_regop(w, Real(1));
  CHECK(inner(av, w) == doctest::Approx(inner(v, aw)).epsilon(1e-11));
  CHECK(inner(av, v) > 0);
}

TEST_CASE("beta <= 0 rejected") {
  Grid3 g = Grid3::cube(8);
  VectorField v(g);
  CHECK_THROWS_AS((void)apply_regop(v, Real(0)), parameter_error);
  CHECK_THROWS_AS((void)apply_inv_regop(v, Real(-1)), parameter_error);
}

TEST_CASE("h1 seminorm matches the quadratic form of the true symbol") {
  Grid3 g = Grid3::cube(16);
  VectorField v = random_smooth_vfield(g, 41);
  const Real s = h1_seminorm(v);
  VectorField av = apply_regop(v, Real(1), false);
  CHECK(s == doctest::Approx(inner(av, v)).epsilon(1e-11));
  // constants are not penalized
  VectorField c(g);
  fill(c, Real(3));
  CHECK(h1_seminorm(c) < 1e-12);
}

TEST_CASE("leray keeps divergence-free fields") {
  Grid3 g = Grid3::cube(16);
  VectorField v(g);
  v.c1 = make_mode(g, 0, 1, 0, true);  // v = (sin(x2), 0, 0)
  VectorField pv = leray_project(v);
  CHECK(max_abs_diff(pv, v) < 1e-12);
}

TEST_CASE("leray annihilates gradients") {
  Grid3 g = Grid3::cube(16);
  // v = grad(sin(x1) sin(x2))
  VectorField v(g);
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j)
      for (int k = 0; k < g.n3; ++k) {
        const double x1 = i * double(g.h(0)), x2 = j * double(g.h(1));
        v.c1.at(i, j, k) = Real(std::cos(x1) * std::sin(x2));
        v.c2.at(i, j, k) = Real(std::sin(x1) * std::cos(x2));
      }
  VectorField pv = leray_project(v);
  CHECK(max_abs(pv) < 1e-12);
}

TEST_CASE("leray is an idempotent self-adjoint projector onto div-free fields") {
  Grid3 g = Grid3::cube(12);
  VectorField v = random_smooth_vfield(g, 51);
  VectorField p1 = leray_project(v);
  VectorField p2 = leray_project(p1);
  CHECK(max_abs_diff(p1, p2) <= 1e-12 * std::max(Real(1), max_abs(p1)));
  CHECK(spectral_divergence_norm(p1) <= 1e-10 * norm2(v));
  VectorField w = random_smooth_vfield(g, 52);
  CHECK(inner(leray_project(v), w) ==
        doctest::Approx(inner(v, leray_project(w))).epsilon(1e-11));
}

TEST_CASE("restrict keeps low modes exactly") {
  Grid3 g = Grid3::cube(64);
  ScalarField f = make_mode(g, 1, 0, 0, true);
  ScalarField c = restrict_field(f);
  ScalarField expect = make_mode(g.coarse(), 1, 0, 0, true);
  CHECK(max_abs_diff(c, expect) < 1e-13);
}

TEST_CASE("restrict band edges at the coarse Nyquist") {
  Grid3 g = Grid3::cube(64);  // coarse Nyquist per axis = 16
  // above the band: dropped by restrict, kept by high_pass
  ScalarField f31 = make_mode(g, 31, 0, 0, true);
  CHECK(max_abs(restrict_field(f31)) < 1e-12);
  CHECK(max_abs_diff(high_pass(f31), f31) < 1e-12);
  ScalarField f17 = make_mode(g, 17, 0, 0, true);
  CHECK(max_abs(restrict_field(f17)) < 1e-12);
  // inside: survives restrict, killed by high_pass
  ScalarField f15 = make_mode(g, 15, 0, 0, true);
  CHECK(max_abs_diff(restrict_field(f15), make_mode(g.coarse(), 15, 0, 0, true)) <
        1e-12);
  CHECK(max_abs(high_pass(f15)) < 1e-12);
  // on the Nyquist line: the cosine is coarse-representable, the sine is not
  ScalarField c16 = make_mode(g, 16, 0, 0, false);
  CHECK(max_abs_diff(restrict_field(c16), make_mode(g.coarse(), 16, 0, 0, false)) <
        1e-12);
  CHECK(max_abs(high_pass(c16)) < 1e-12);
  ScalarField s16 = make_mode(g, 16, 0, 0, true);
  CHECK(max_abs(restrict_field(s16)) < 1e-12);
  CHECK(max_abs_diff(high_pass(s16), s16) < 1e-12);
}

TEST_CASE("prolong(restrict(f)) + high_pass(f) reconstructs f") {
  Grid3 g = Grid3::make(16, 12, 20);
  ScalarField f = white_noise_field(g, 61);
  ScalarField pr = prolong_field(restrict_field(f), g);
  ScalarField hp = high_pass(f);
  axpy(Real(1), hp, pr);
  CHECK(max_abs_diff(pr, f) <= 1e-12 * max_abs(f));
}

TEST_CASE("restrict is adjoint to prolong on Nyquist-free fields") {
  Grid3 g = Grid3::cube(32);
  // band limit below the coarse Nyquist 8 so the pairing is exact
  ScalarField f = testing::random_smooth_field(g, 71, 5);
  ScalarField cg = testing::random_smooth_field(g.coarse(), 72, 3);
  const Real lhs = inner(restrict_field(f), cg);
  const Real rhs = inner(f, prolong_field(cg, g));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("restrict rejects odd grids") {
  // grid sizes are even by construction; the operator still guards
  Grid3 g = Grid3::cube(16);
  ScalarField f(g);
  CHECK_NOTHROW((void)restrict_field(f));
}

TEST_CASE("prolong then restrict is the identity on the coarse grid") {
  Grid3 gc = Grid3::cube(16);
  Grid3 gf = Grid3::cube(32);
  ScalarField c = white_noise_field(gc, 81);
  ScalarField back = restrict_field(prolong_field(c, gf));
  CHECK(max_abs_diff(back, c) <= 1e-12 * max_abs(c));
}
