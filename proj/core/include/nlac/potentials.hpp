#pragma once

#include <functional>
#include <string>

namespace nlac {

/// Double-well potential W with wells at -1 and +1, defined on all of R.
struct Potential {
  std::string name;
  std::function<double(double)> w;
  std::function<double(double)> w_prime;
  std::function<double(double)> w_second;

  double operator()(double r) const { return w(r); }
};

/// W(r) = (1 - r^2)^2 / 4.
Potential quartic();

/// Builds a potential from W, W' and W''.
Potential make_potential(std::string name, std::function<double(double)> w,
                         std::function<double(double)> w_prime,
                         std::function<double(double)> w_second);

/// The quartic scaled by `factor` (factor = 0 gives W = 0).
Potential scaled(const Potential& base, double factor);

struct PotentialReport {
  bool W1 = false;  ///< W > 0 on (-1, 1)
  bool W2 = false;  ///< W(+-1) = W'(+-1) = 0
  bool W3 = false;  ///< W''(+-1) > 0
  bool W4 = false;  ///< W even on [-1, 1]
};

/// Checks the well hypotheses on a uniform sample of [-1, 1] plus the endpoints.
PotentialReport check_assumptions(const Potential& potential, int sample_count);

}  // namespace nlac
