#include "nlac/potentials.hpp"

#include <cmath>

#include "nlac/error.hpp"

namespace nlac {
namespace {

constexpr double kTol = 1e-10;

}  // namespace

Potential quartic() {
  return make_potential(
      "quartic", [](double r) { return 0.25 * (1.0 - r * r) * (1.0 - r * r); },
      [](double r) { return r * r * r - r; }, [](double r) { return 3.0 * r * r - 1.0; });
}

Potential make_potential(std::string name, std::function<double(double)> w,
                         std::function<double(double)> w_prime,
                         std::function<double(double)> w_second) {
  if (!w || !w_prime || !w_second) throw InvalidArgument("potential needs W, W' and W''");
  return {std::move(name), std::move(w), std::move(w_prime), std::move(w_second)};
}

Potential scaled(const Potential& base, double factor) {
  auto w = base.w;
  auto w1 = base.w_prime;
  auto w2 = base.w_second;
  return {base.name, [w, factor](double r) { return factor * w(r); },
          [w1, factor](double r) { return factor * w1(r); },
          [w2, factor](double r) { return factor * w2(r); }};
}

PotentialReport check_assumptions(const Potential& p, int sample_count) {
  if (sample_count < 3) throw InvalidArgument("sample_count must be >= 3");
  PotentialReport report;
  report.W2 = std::abs(p.w(-1.0)) <= kTol && std::abs(p.w(1.0)) <= kTol &&
              std::abs(p.w_prime(-1.0)) <= kTol && std::abs(p.w_prime(1.0)) <= kTol;
  report.W3 = p.w_second(-1.0) > kTol && p.w_second(1.0) > kTol;
  report.W1 = true;
  report.W4 = true;
  for (int k = 0; k < sample_count; ++k) {
    const double r = -1.0 + 2.0 * k / (sample_count - 1);
    const double value = p.w(r);
    if (r > -1.0 && r < 1.0 && !(value > 0.0)) report.W1 = false;
    if (std::abs(value - p.w(-r)) > kTol * std::max(1.0, std::abs(value))) report.W4 = false;
  }
  return report;
}

}  // namespace nlac
