#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "vreg/interp.hpp"

using namespace vreg;

namespace {

QueryPoints random_points(const Grid3& g, index_t m, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, two_pi);
  QueryPoints q(g, m);
  for (index_t p = 0; p < 3 * m; ++p) q.xyz[size_t(p)] = Real(u(rng));
  return q;
}

double analytic(double x1, double x2) { return std::sin(x1) * std::cos(x2); }

}  // namespace

TEST_CASE("querying grid nodes returns stored values exactly") {
  Grid3 g = Grid3::make(16, 12, 20);
  auto f = testing::white_noise_field(g, 3);
  QueryPoints q(g, 5);
  const int nodes[5][3] = {{0, 0, 0}, {3, 5, 7}, {15, 11, 19}, {8, 0, 19}, {1, 11, 0}};
  for (int p = 0; p < 5; ++p) {
    q.point(p)[0] = Real(nodes[p][0]) * g.h(0);
    q.point(p)[1] = Real(nodes[p][1]) * g.h(1);
    q.point(p)[2] = Real(nodes[p][2]) * g.h(2);
  }
  for (int degree : {1, 3}) {
    auto vals = interpolate(f, q, degree);
    for (int p = 0; p < 5; ++p)
      CHECK(vals[size_t(p)] == f.at(nodes[p][0], nodes[p][1], nodes[p][2]));
  }
}

TEST_CASE("constant fields interpolate to the constant") {
  Grid3 g = Grid3::cube(16);
  ScalarField f(g);
  fill(f, Real(7.5));
  auto q = random_points(g, 200, 11);
  for (int degree : {1, 3}) {
    auto vals = interpolate(f, q, degree);
    for (Real v : vals) CHECK(v == doctest::Approx(7.5).epsilon(1e-14));
  }
}

TEST_CASE("cubic error on a smooth field beats linear by >= 50x") {
  Grid3 g = Grid3::cube(64);
  ScalarField f(g);
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j)
      for (int k = 0; k < g.n3; ++k)
        f.at(i, j, k) = Real(analytic(i * double(g.h(0)), j * double(g.h(1))));
  auto q = random_points(g, 1000, 21);
  auto cube = interpolate(f, q, 3);
  auto lin = interpolate(f, q, 1);
  Real err3 = 0, err1 = 0;
  for (index_t p = 0; p < q.count(); ++p) {
    const Real ex = Real(analytic(q.point(p)[0], q.point(p)[1]));
    err3 = std::max(err3, std::abs(cube[size_t(p)] - ex));
    err1 = std::max(err1, std::abs(lin[size_t(p)] - ex));
  }
  CHECK(err3 <= 5e-6);
  CHECK(err1 / err3 >= 50);
}

TEST_CASE("fourth-order convergence of the cubic kernel") {
  Real errs[2];
  int idx = 0;
  for (int n : {32, 64}) {
    Grid3 g = Grid3::cube(n);
    ScalarField f(g);
    for (int i = 0; i < g.n1; ++i)
      for (int j = 0; j < g.n2; ++j)
        for (int k = 0; k < g.n3; ++k)
          f.at(i, j, k) = Real(analytic(i * double(g.h(0)), j * double(g.h(1))));
    auto q = random_points(g, 2000, 31);  // same seed: same physical points
    auto vals = interpolate(f, q, 3);
    Real err = 0;
    for (index_t p = 0; p < q.count(); ++p)
      err = std::max(err,
                     std::abs(vals[size_t(p)] - Real(analytic(q.point(p)[0],
                                                              q.point(p)[1]))));
    errs[idx++] = err;
  }
  const Real ratio = errs[0] / errs[1];
  CHECK(ratio >= 10);
  CHECK(ratio <= 26);
}

TEST_CASE("linearity in the field") {
  Grid3 g = Grid3::cube(16);
  auto f1 = testing::white_noise_field(g, 41);
  auto f2 = testing::white_noise_field(g, 42);
  auto q = random_points(g, 100, 43);
  const Real a = Real(2.25), b = Real(-0.75);
  ScalarField combo = f1;
  scale(combo, a);
  axpy(b, f2, combo);
  auto v1 = interpolate(f1, q, 3);
  auto v2 = interpolate(f2, q, 3);
  auto vc = interpolate(combo, q, 3);
  for (index_t p = 0; p < q.count(); ++p)
    CHECK(vc[size_t(p)] ==
          doctest::Approx(a * v1[size_t(p)] + b * v2[size_t(p)]).epsilon(1e-13));
}

TEST_CASE("locality: far-away nodes do not affect the result") {
  Grid3 g = Grid3::cube(16);
  auto f = testing::white_noise_field(g, 51);
  QueryPoints q(g, 1);
  q.point(0)[0] = Real(1.3);
  q.point(0)[1] = Real(2.1);
  q.point(0)[2] = Real(0.7);
  auto before = interpolate(f, q, 3);
  f.at(12, 12, 12) += Real(100);  // well outside the 4^3 stencil
  auto after = interpolate(f, q, 3);
  CHECK(before[0] == after[0]);
}

TEST_CASE("periodicity in the query coordinates") {
  Grid3 g = Grid3::cube(16);
  auto f = testing::white_noise_field(g, 61);
  QueryPoints qa(g, 3), qb(g, 3);
  const double pts[3][3] = {{0.1, 5.9, 3.3}, {6.2, 0.05, 1.0}, {2.2, 2.3, 6.28}};
  for (int p = 0; p < 3; ++p)
    for (int a = 0; a < 3; ++a) {
      qa.point(p)[a] = Real(pts[p][a]);
      qb.point(p)[a] = Real(pts[p][a] + (a == p ? two_pi : 0.0));
    }
  for (int degree : {1, 3}) {
    auto va = interpolate(f, qa, degree);
    auto vb = interpolate(f, qb, degree);
    for (int p = 0; p < 3; ++p)
      CHECK(va[size_t(p)] == doctest::Approx(vb[size_t(p)]).epsilon(1e-12));
  }
}

TEST_CASE("NaN coordinates are rejected") {
  Grid3 g = Grid3::cube(16);
  auto f = testing::white_noise_field(g, 71);
  QueryPoints q(g, 1);
  q.point(0)[1] = std::numeric_limits<Real>::quiet_NaN();
  CHECK_THROWS_AS((void)interpolate(f, q, 3), input_error);
  CHECK_THROWS_AS((void)interpolate(f, q, 2), parameter_error);
}

TEST_CASE("scatter_transpose is the exact adjoint of interpolate") {
  Grid3 g = Grid3::cube(12);
  auto f = testing::white_noise_field(g, 81);
  auto q = random_points(g, 500, 82);
  std::mt19937 rng(83);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Real> z(500);
  for (auto& x : z) x = Real(u(rng));
  for (int degree : {1, 3}) {
    auto vals = interpolate(f, q, degree);
    double lhs = 0;
    for (size_t p = 0; p < z.size(); ++p) lhs += double(vals[p]) * double(z[p]);
    ScalarField acc(g);
    scatter_transpose_add(acc, q.xyz.data(), z.data(), q.count(), degree);
    double rhs = 0;
    for (size_t t = 0; t < acc.v.size(); ++t)
      rhs += double(acc.v[t]) * double(f.v[t]);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}
