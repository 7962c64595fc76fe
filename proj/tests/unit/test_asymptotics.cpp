#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "nlac/asymptotics.hpp"
#include "nlac/error.hpp"
#include "nlac/solver.hpp"

using namespace nlac;
using doctest::Approx;

TEST_CASE("psi_s branches") {
  CHECK(psi_s(0.25, 16.0) == Approx(4.0).epsilon(1e-15));
  CHECK(psi_s(0.5, std::exp(1.0)) == Approx(1.0).epsilon(1e-15));
  CHECK(psi_s(0.75, 100.0) == 1.0);
  for (double s : {0.1, 0.25, 0.5, 0.6, 0.9}) {
    double previous = psi_s(s, 1.01);
    for (double R = 1.5; R < 1e4; R *= 1.5) {
      CHECK(psi_s(s, R) >= previous);
      previous = psi_s(s, R);
    }
  }
}

TEST_CASE("decay fit recovers exact power laws") {
  for (double p : {0.5, 1.0, 2.5}) {
    CAPTURE(p);
    const auto prof = sample(60.0, 0.1, [p](double x) {
      if (x > 1.0) return 1.0 - std::pow(x, -p);
      if (x < -1.0) return -1.0 + std::pow(-x, -p);
      return 0.0;
    });
    for (auto window : {std::pair{10.0, 40.0}, std::pair{3.0, 50.0}}) {
      const auto fit = fit_decay(prof, window, DecayQuantity::one_minus_u);
      CHECK(fit.exponent == Approx(-p).epsilon(1e-9));
      CHECK(fit.constant == Approx(1.0).epsilon(1e-9));
      CHECK(fit.max_rel_residual <= 1e-9);
    }
  }
  const auto line = sample(60.0, 0.1, [](double x) { return std::clamp(x / 100.0, -1.0, 1.0); });
  CHECK_THROWS_AS(fit_decay(line, {10.0, 80.0}, DecayQuantity::one_minus_u), InvalidArgument);
}

TEST_CASE("constant profile") {
  const auto one = make_constant(50.0, 0.1, 1.0);
  const auto K = make_fractional(1, 0.5, 1.0);
  const std::vector<double> R{5.0, 10.0, 20.0, 40.0};
  const auto limit = lambda_star_limit(K, quartic(), one, R);
  for (double v : limit.value) CHECK(v == 0.0);
  CHECK_FALSE(log_lower_bound_check(K, quartic(), one, R));
}

TEST_CASE("gates") {
  const auto p = make_tanh_init(50.0, 0.1);
  const std::vector<double> R{5.0, 10.0, 20.0, 40.0};
  CHECK_THROWS_AS(lambda_star_limit(make_fractional(1, 0.25, 1.0), quartic(), p, R),
                  InvalidArgument);
  CHECK_THROWS_AS(log_lower_bound_check(make_truncated(1, 0.5, 1.0, 1.0), quartic(), p, R),
                  InvalidArgument);
  const std::vector<double> far{5.0, 48.0};
  CHECK_THROWS_AS(fit_energy_growth(make_fractional(1, 0.5, 1.0), quartic(), p, far),
                  InvalidArgument);
}

TEST_CASE("analysis of the s = 1/2 layer") {
  const auto K = make_fractional(1, 0.5, 1.0);
  const auto r = solve_dirichlet(K, quartic(), 50.0, 0.05);
  const auto& u = r.profile;

  const auto decay = fit_decay(u, {10.0, 40.0}, DecayQuantity::one_minus_u);
  CHECK(decay.exponent == Approx(-1.0).epsilon(0.2));
  const auto slope = fit_decay(u, {10.0, 40.0}, DecayQuantity::derivative);
  CHECK(std::abs(slope.exponent + 2.0) <= 0.3);

  const std::vector<double> R{5.0, 10.0, 20.0, 40.0};
  const auto growth = fit_energy_growth(K, quartic(), u, R);
  CHECK(growth.fit.model == "log");
  CHECK(growth.fit.exponent > 0.0);
  CHECK(growth.G_lower > 0.0);
  CHECK(log_lower_bound_check(K, quartic(), u, R));

  // beta(t) <= C / (1 + |t|)
  const OperatorWeights weights(K, u.spacing(), u.size());
  std::vector<double> scaled;
  for (double t = 5.0; t <= 25.0; t += 5.0) {
    scaled.push_back(beta_density(weights, quartic(), u, u.node_index(t)) * (1.0 + t));
  }
  const double lo = *std::min_element(scaled.begin(), scaled.end());
  const double hi = *std::max_element(scaled.begin(), scaled.end());
  CHECK(hi <= 2.0 * lo);

  // extrapolated limit under translation, on the layer padded to [-60, 60]
  const auto padded = resample(u, 60.0, u.spacing());
  const std::vector<double> RL{10.0, 20.0, 30.0, 40.0};
  const auto base = lambda_star_limit(K, quartic(), padded, RL);
  const auto moved = lambda_star_limit(K, quartic(), shift(padded, 0.35), RL);
  CHECK(std::abs(base.limit - moved.limit) <= 1e-6);
  const auto off_grid = lambda_star_limit(K, quartic(), shift(padded, 0.33), RL);
  CHECK(std::abs(base.limit - off_grid.limit) <= 1e-3);

  std::ostringstream csv;
  write_fit_csv(decay, csv);
  CHECK(csv.str().rfind("x,measured,fitted\n", 0) == 0);
}
