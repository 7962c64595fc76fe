#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlac/error.hpp"
#include "nlac/nonlocal.hpp"
#include "nlac/profiles.hpp"
#include "support/oracles.hpp"

using namespace nlac;
using doctest::Approx;

namespace {

Profile bumpy(double M, double h) {
  // asymmetric, with a dip near the origin
  return sample(M, h, [](double x) { return std::tanh(0.8 * x + 0.3) * (1.0 - 0.1 * std::exp(-x * x)); });
}

}  // namespace

TEST_CASE("operator on constants and odd profiles") {
  const auto K = make_fractional(1, 0.5, 1.0);
  const auto c = make_constant(5.0, 0.25, 0.3);
  for (double x : {-4.0, 0.0, 2.5}) CHECK(apply_operator(K, c, x) == 0.0);
  const auto odd = make_tanh_init(10.0, 0.05);
  CHECK(std::abs(apply_operator(K, odd, 0.0)) <= 1e-13);
}

TEST_CASE("operator against a brute-force principal value") {
  const auto K = make_fractional(1, 0.5, 1.0);
  const auto u = make_tanh_init(50.0, 0.01);
  const double discrete = apply_operator(K, u, 1.0);
  const oracle::PowerKernel k{1.0, 0.5};
  const double pv = oracle::principal_value(
      k, [](double x) { return std::abs(x) >= 50.0 ? (x > 0 ? 1.0 : -1.0) : std::tanh(x); }, 1.0,
      1e-4, 1e4);
  CHECK(std::abs(discrete - pv) <= 1e-4);
}

TEST_CASE("operator, energy and beta against direct sums") {
  const double M = 3.0;
  const double h = 0.1;
  const auto p = bumpy(M, h);
  const auto W = quartic();
  struct Case {
    KernelSpec K;
    oracle::PowerKernel k;
  };
  const std::vector<Case> cases{
      {make_fractional(1, 0.25, 1.0), {1.0, 0.25}},
      {make_fractional(1, 0.5, 1.3), {1.3, 0.5}},
      {make_fractional(1, 0.75, 0.7), {0.7, 0.75}},
      {make_truncated(1, 0.5, 1.05, 1.0), {1.0, 0.5, 1.05}},
  };
  for (const auto& c : cases) {
    CAPTURE(c.k.s);
    CAPTURE(c.k.support);
    const OperatorWeights weights(c.K, h, p.size());
    const auto all = apply_operator_all(weights, p);
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
      const double expected = oracle::apply(c.k, p.values(), p.left(), p.right(), h, i);
      CHECK(std::abs(all[i] - expected) <= 1e-10);
      const double b = beta_density(weights, W, p, i);
      CHECK(std::abs(b - oracle::beta(c.k, W.w, p.values(), p.left(), p.right(), h, i)) <= 1e-10);
    }
    for (auto [a, b] : {std::pair{-3.0, 3.0}, std::pair{-1.0, 2.0}, std::pair{0.5, 0.7}}) {
      const auto e = energy(c.K, W, p, {a, b});
      const auto ref = oracle::energy(c.k, W.w, p.values(), p.left(), p.right(), h,
                                      p.node_index(a), p.node_index(b));
      CHECK(std::abs(e.interior - ref.interior) <= 1e-10);
      CHECK(std::abs(e.cross - ref.cross) <= 1e-10);
      CHECK(std::abs(e.potential - ref.potential) <= 1e-10);
      CHECK(std::abs(e.total - ref.total()) <= 1e-10);
      if (a == -b) {
        const double none = tail_interaction(c.K, p, b);
        const auto ref0 = oracle::energy(c.k, [](double) { return 0.0; }, p.values(), p.left(),
                                         p.right(), h, p.node_index(a), p.node_index(b));
        CHECK(std::abs(none - 2.0 * ref0.cross) <= 1e-10);
      }
    }
  }
}

TEST_CASE("small-instance energy matches the double sum to 1e-12") {
  const double M = 2.0;
  const double h = 0.5;
  const auto p = bumpy(M, h);
  const auto K = make_fractional(1, 0.5, 1.0);
  const auto e = energy(K, quartic(), p, {-M, M});
  const auto ref = oracle::energy({1.0, 0.5}, quartic().w, p.values(), p.left(), p.right(), h, 0,
                                  p.size() - 1);
  CHECK(std::abs(e.total - ref.total()) <= 1e-12);
}

TEST_CASE("energy of a constant profile") {
  const auto c = make_constant(5.0, 0.25, 0.0);
  const auto e = energy(make_fractional(1, 0.5, 1.0), quartic(), c, {0.0, 1.0});
  CHECK(e.interior == 0.0);
  CHECK(e.cross == 0.0);
  CHECK(e.potential == Approx(0.25).epsilon(1e-14));
  CHECK(e.total == Approx(0.25).epsilon(1e-14));

  const auto one = make_constant(5.0, 0.25, 1.0);
  CHECK(beta_density(make_fractional(1, 0.5, 1.0), quartic(), one, 1.0) == 0.0);
  CHECK(tail_interaction(make_fractional(1, 0.5, 1.0), one, 2.0) == 0.0);
}

TEST_CASE("energy of the linear profile grows like psi_s") {
  for (double s : {0.25, 0.5, 0.75}) {
    CAPTURE(s);
    const auto K = make_fractional(1, s, 1.0);
    std::vector<double> ratio;
    for (double M : {10.0, 20.0, 40.0}) {
      const auto p = make_linear_init(M, 0.1);
      const double psi = s < 0.5 ? std::pow(M, 1 - 2 * s) : (s == 0.5 ? std::log(M) : 1.0);
      ratio.push_back(energy(K, quartic(), p, {-M, M}).total / psi);
    }
    const double lo = *std::min_element(ratio.begin(), ratio.end());
    const double hi = *std::max_element(ratio.begin(), ratio.end());
    CHECK(lo > 0.0);
    CHECK(hi <= 2.0 * lo);
  }
}

TEST_CASE("structural properties of the operator") {
  const auto K = make_fractional(1, 0.4, 1.0);
  const double h = 0.1;
  // outermost interior nodes pinned to the boundary constants
  std::vector<double> base = bumpy(4.0, h).values();
  base[1] = -1.0;
  base[base.size() - 2] = 1.0;
  const Profile p(4.0, h, base);
  std::vector<double> moved(p.size());
  moved[0] = -1.0;
  for (std::size_t i = 1; i < p.size(); ++i) moved[i] = p[i - 1];
  moved.back() = 1.0;
  const Profile q(4.0, h, moved);
  const OperatorWeights weights(K, h, p.size());
  const auto a = apply_operator_all(weights, p);
  const auto b = apply_operator_all(weights, q);
  for (std::size_t i = 1; i + 2 < p.size(); ++i) CHECK(std::abs(b[i + 1] - a[i]) <= 1e-12);

  // interior maximum gives a negative value
  const auto bump = sample(4.0, h, [](double x) { return 0.9 * std::exp(-x * x); },
                           {0.0, 0.0});
  CHECK(apply_operator(K, bump, 0.0) < 0.0);

  // monotone in the interval and quadratic in the amplitude
  const auto none = scaled(quartic(), 0.0);
  const auto small = energy(K, none, p, {-1.0, 1.0}).total;
  const auto large = energy(K, none, p, {-2.0, 3.0}).total;
  CHECK(small <= large);
  std::vector<double> doubled(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) doubled[i] = 0.5 * p[i];
  const Profile half(4.0, h, doubled, {-0.5, 0.5});
  const auto e_half = energy(K, none, half, {-2.0, 2.0});
  const auto e_full = energy(K, none, p, {-2.0, 2.0});
  CHECK((e_full.interior + e_full.cross) ==
        Approx(4.0 * (e_half.interior + e_half.cross)).epsilon(1e-13));
}

TEST_CASE("residual") {
  const auto K = make_fractional(1, 0.5, 1.0);
  CHECK(residual(K, quartic(), make_linear_init(20.0, 0.1)) > 1e-3);
  const auto zero = make_constant(5.0, 0.25, 0.0);
  CHECK(std::abs(apply_operator(K, zero, 0.0) - quartic().w_prime(0.0)) == 0.0);
}

TEST_CASE("argument checks") {
  const auto p = make_tanh_init(3.0, 0.1);
  const auto K = make_fractional(1, 0.5, 1.0);
  CHECK_THROWS_AS(apply_operator(K, p, -3.0), InvalidArgument);
  CHECK_THROWS_AS(apply_operator(K, p, 0.05), InvalidArgument);
  CHECK_THROWS_AS(energy(K, quartic(), p, {0.05, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(tail_interaction(K, p, 4.0), InvalidArgument);
  CHECK_THROWS_AS(OperatorWeights(make_fractional(2, 0.5, 1.0), 0.1, 61), InvalidArgument);
  CHECK_THROWS_AS(OperatorWeights(make_fractional(1, 0.99, 1.0), 0.1, 61), InvalidArgument);
}
