#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <sstream>

#include "nlac/error.hpp"
#include "nlac/reduction.hpp"
#include "nlac/solver.hpp"
#include "support/oracles.hpp"

using namespace nlac;
using doctest::Approx;

TEST_CASE("varpi against the Gamma-function closed form") {
  CHECK(varpi(1, 0.5) == 1.0);
  CHECK(varpi(2, 0.5) == Approx(0.5).epsilon(1e-10));
  CHECK(varpi(3, 0.5) == Approx(1.0 / M_PI).epsilon(1e-10));
  for (int N : {2, 3, 4}) {
    for (double s : {0.15, 0.3, 0.5, 0.7, 0.85}) {
      CAPTURE(N);
      CAPTURE(s);
      CHECK(varpi(N, s) == Approx(oracle::varpi(N, s)).epsilon(1e-9));
    }
  }
  for (double s = 0.1; s < 0.9; s += 0.05) CHECK(std::abs(varpi(2, s) - varpi(2, s + 1e-3)) <= 1e-2);
}

TEST_CASE("unit ball volumes") {
  CHECK(unit_ball_volume(1) == Approx(2.0));
  CHECK(unit_ball_volume(2) == Approx(M_PI));
  CHECK(unit_ball_volume(3) == Approx(4.0 * M_PI / 3.0));
}

TEST_CASE("reduced fractional kernels are fractional") {
  for (int N : {2, 3}) {
    for (double s : {0.3, 0.5, 0.75}) {
      CAPTURE(N);
      CAPTURE(s);
      const auto K = make_fractional(N, s, 1.4);
      const auto red = reduce_kernel(K, N);
      REQUIRE(red.lambda_star);
      CHECK(*red.lambda_star == Approx(1.4).epsilon(1e-6));
      CHECK(*red.lambda_star == Approx(lambda_star_homogeneous(K, N, s)).epsilon(1e-6));
      for (double t : {0.01, 0.3, 1.0, 5.0, 200.0}) {
        // substitution z' = (t / varpi) y turns the section into 1.4 |t|^{-1-2s}
        const double expected = 1.4 * std::pow(t, -1.0 - 2.0 * s);
        CHECK(red.reduced_kernel.evaluate(t) == Approx(expected).epsilon(1e-6));
        CHECK(red.reduced_kernel.evaluate(-t) == red.reduced_kernel.evaluate(t));
      }
      const auto rep = validate(red.reduced_kernel, 100, 4);
      CHECK(rep.K1);
      CHECK(rep.K2);
    }
  }
  const auto plane = reduce_kernel(make_fractional(2, 0.5, 1.0), 2);
  CHECK(plane.varpi == Approx(0.5).epsilon(1e-10));
  CHECK(plane.omega == Approx(2.0));
}

TEST_CASE("anisotropic lambda*") {
  CHECK(lambda_star_homogeneous(make_fractional(2, 0.5, 1.0), 2, 0.5) == Approx(1.0).epsilon(1e-8));
  CHECK(lambda_star_homogeneous(make_fractional(3, 0.5, 1.0), 3, 0.5) == Approx(1.0).epsilon(1e-8));
  CHECK(lambda_star_homogeneous(make_fractional(3, 0.5, 3.0), 3, 0.5) == Approx(3.0).epsilon(1e-8));
  // a = c (1 + eps zeta_1^2): the zeta_1^2 part is a second moment of the cross section
  for (int N : {2, 3}) {
    const double s = 0.5;
    const double eps = 0.5;
    const int d = N - 1;
    const double a = (N + 2.0 * s) / 2.0;
    const double mass = oracle::cross_section_mass(d, a);
    const double second = oracle::cross_section_second_moment(d, a + 1.0) / d;
    const double expected = std::pow(oracle::varpi(N, s), 2.0 * s) * (mass + eps * second);
    CAPTURE(N);
    const auto K = make_anisotropic(N, s, 1.0, eps);
    CHECK(lambda_star_homogeneous(K, N, s) == Approx(expected).epsilon(1e-8));
    const auto red = reduce_kernel(K, N);
    REQUIRE(red.lambda_star);
    CHECK(red.reduced_kernel.evaluate(2.0) == Approx(expected / 4.0).epsilon(1e-6));
  }
}

TEST_CASE("truncated reduction has bounded support") {
  const auto red = reduce_kernel(make_truncated(2, 0.5, 1.0, 1.0), 2);
  CHECK_FALSE(red.lambda_star);
  CHECK(red.reduced_kernel.evaluate(0.51) == 0.0);
  CHECK(red.reduced_kernel.evaluate(2.0) == 0.0);
  CHECK(red.reduced_kernel.evaluate(0.3) > 0.0);
}

TEST_CASE("extended profile") {
  const auto u0 = make_tanh_init(10.0, 0.1);
  const auto u = extend_profile(u0, 0.5);
  const std::array<double, 2> centre{3.0, 0.0};
  const std::array<double, 2> far{0.0, 100.0};
  const std::array<double, 2> a{-2.0, 1.3};
  const std::array<double, 2> b{7.5, 1.3};
  CHECK(u(centre) == 0.0);
  CHECK(u(far) == 1.0);
  CHECK(u(a) == u(b));
}

TEST_CASE("smooth interpolant") {
  const auto u0 = make_tanh_init(10.0, 0.05);
  const SmoothProfile sp(u0);
  for (std::size_t i = 0; i < u0.size(); i += 17) CHECK(sp(u0.x(i)) == Approx(u0[i]).epsilon(1e-12));
  CHECK(sp(20.0) == 1.0);
  CHECK(sp(-20.0) == -1.0);
  const double x = 0.7;
  const double exact = -2.0 * std::tanh(x) / std::pow(std::cosh(x), 2);
  CHECK(sp.second_derivative(x) == Approx(exact).epsilon(1e-3));
}

TEST_CASE("identity check on trivial inputs") {
  const auto K = make_fractional(2, 0.5, 1.0);
  const auto one = make_constant(20.0, 0.05, 1.0);
  const std::vector<std::vector<double>> points{{0.0, 1.0}, {2.0, -3.0}};
  const auto c = verify_identity(K, one, points, 20000, 1);
  for (const auto& p : c.points) {
    CHECK(p.lhs == 0.0);
    CHECK(p.rhs == 0.0);
  }

  const auto odd = make_tanh_init(20.0, 0.05);
  const auto z = verify_identity(K, odd, {{0.4, 0.0}}, 20000, 2);
  CHECK(std::abs(z.points[0].lhs) <= 3.0 * z.points[0].lhs_se + 1e-12);
  CHECK(std::abs(z.points[0].rhs) <= 1e-12);

  const auto few = verify_identity(K, odd, {{0.0, 1.0}}, 100, 3);
  CHECK(few.inconclusive);
}

TEST_CASE("identity check on a layer") {
  const auto K = make_fractional(2, 0.5, 1.0);
  const auto red = reduce_kernel(K, 2);
  const auto u0 = solve_dirichlet(red.reduced_kernel, quartic(), 50.0, 0.05).profile;
  const auto c = verify_identity(K, u0, {{0.0, 1.0}, {0.0, 2.0}, {0.0, 5.0}}, 1000000, 9);
  CHECK_FALSE(c.inconclusive);
  CHECK(c.passed);
  for (const auto& p : c.points) CHECK(p.defect <= 3.0 * p.lhs_se);
}

TEST_CASE("N-d energy estimator") {
  const auto K = make_fractional(2, 0.75, 1.0);
  const auto one = make_constant(100.0, 0.1, 1.0);
  const auto flat = energy_nd_ratio(K, scaled(quartic(), 0.0), one, 10.0, 20000, 1);
  CHECK(flat.energy == 0.0);

  const auto red = reduce_kernel(K, 2);
  const auto u0 = solve_dirichlet(red.reduced_kernel, quartic(), 50.0, 0.1).profile;
  const auto a = energy_nd_ratio(K, quartic(), u0, 10.0, 100000, 5);
  const auto b = energy_nd_ratio(K, quartic(), u0, 10.0, 200000, 5);
  CHECK(b.energy_se / a.energy_se == Approx(1.0 / std::sqrt(2.0)).epsilon(0.2));
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(reduce_kernel(make_anisotropic(4, 0.5, 1.0, 0.5), 4), InvalidArgument);
  CHECK_THROWS_AS(reduce_kernel(make_fractional(1, 0.5, 1.0), 1), InvalidArgument);
  const auto u0 = make_tanh_init(10.0, 0.1);
  CHECK_THROWS_AS(verify_identity(make_fractional(2, 0.5, 1.0), u0, {{0.0, 30.0}}, 1000, 1),
                  InvalidArgument);
  std::ostringstream text;
  write_reduction(reduce_kernel(make_fractional(2, 0.5, 1.0), 2), text);
  CHECK(text.str().find("varpi=0.5") == 0);
}
