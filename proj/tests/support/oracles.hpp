#pragma once

// Reference computations used by the unit and acceptance tests. They work
// from closed-form kernel formulas and plain nested loops and share no code
// with the library beyond the Profile container.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

/// K(z) = c |z|^{-1-2s} for |z| < support, zero beyond.
struct PowerKernel {
  double c = 1.0;
  double s = 0.5;
  double support = INFINITY;

  double operator()(double z) const {
    const double r = std::abs(z);
    return r >= support ? 0.0 : c * std::pow(r, -1.0 - 2.0 * s);
  }
  /// int_0^rho z^2 K.
  double second_moment(double rho) const {
    const double r = std::min(rho, support);
    return c * std::pow(r, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
  }
  /// (z^2 K)'(rho).
  double moment_slope(double rho) const {
    return rho >= support ? 0.0 : c * (1.0 - 2.0 * s) * std::pow(rho, -2.0 * s);
  }
  /// int_a^inf K (one side).
  double one_sided_tail(double a) const {
    if (a >= support) return 0.0;
    const double outer = std::isfinite(support) ? std::pow(support, -2.0 * s) : 0.0;
    return c * (std::pow(a, -2.0 * s) - outer) / (2.0 * s);
  }
};

/// Grid values on [-M, M] padded with `pad` copies of the boundary constants on
/// each side, so that index i of the profile sits at i + pad.
struct PaddedGrid {
  std::vector<double> u;
  std::size_t pad = 0;
  std::size_t n = 0;
  double left = -1.0;
  double right = 1.0;

  PaddedGrid(const std::vector<double>& values, double left_value, double right_value,
             std::size_t padding)
      : pad(padding), n(values.size()), left(left_value), right(right_value) {
    u.assign(n + 2 * pad, 0.0);
    for (std::size_t k = 0; k < pad; ++k) {
      u[k] = left;
      u[n + pad + k] = right;
    }
    for (std::size_t i = 0; i < n; ++i) u[pad + i] = values[i];
  }
  double at(long j) const { return u[static_cast<std::size_t>(j + static_cast<long>(pad))]; }
};

/// Offset weights of the discrete rule: trapezoid sum of K from the near-field
/// radius p h outward, with the near field carried by the second moment on the
/// first offset. Index m = 1..L.
inline std::vector<double> weights(const PowerKernel& k, double h, std::size_t L,
                                   std::size_t p = 2) {
  std::vector<double> a(L + 1, 0.0);
  for (std::size_t m = p; m <= L; ++m) {
    const double z = static_cast<double>(m) * h;
    a[m] = h * k(z) * (m == p ? 0.5 : 1.0);
  }
  const double rho = static_cast<double>(p) * h;
  a[1] += (k.second_moment(rho) + h * h / 12.0 * k.moment_slope(rho)) / (h * h);
  return a;
}

/// Mass of the kernel beyond the last explicit offset, on one side.
inline double far_tail(const PowerKernel& k, double h, std::size_t L) {
  return k.one_sided_tail((static_cast<double>(L) + 0.5) * h);
}

/// Discrete L_K u at profile node i by direct summation over all offsets.
inline double apply(const PowerKernel& k, const std::vector<double>& values, double left,
                    double right, double h, std::size_t i) {
  const std::size_t L = values.size() - 1;
  const PaddedGrid g(values, left, right, L);
  const auto a = weights(k, h, L);
  const double ui = values[i];
  double sum = 0.0;
  for (std::size_t m = 1; m <= L; ++m) {
    const long c = static_cast<long>(i);
    const long d = static_cast<long>(m);
    sum += a[m] * (g.at(c + d) - ui) + a[m] * (g.at(c - d) - ui);
  }
  const double tail = far_tail(k, h, L);
  sum += tail * (left - ui) + tail * (right - ui);
  return sum;
}

struct Energy {
  double interior = 0.0;
  double cross = 0.0;
  double potential = 0.0;
  double total() const { return interior + cross + potential; }
};

/// Energy over the node range [ia, ib] as a double sum over all pairs of nodes
/// in the padded grid, with half weight on the two end nodes of the interval.
inline Energy energy(const PowerKernel& k, const std::function<double(double)>& W,
                     const std::vector<double>& values, double left, double right, double h,
                     std::size_t ia, std::size_t ib) {
  const std::size_t L = values.size() - 1;
  const PaddedGrid g(values, left, right, L);
  const auto a = weights(k, h, L);
  const double tail = far_tail(k, h, L);
  const long lo = -static_cast<long>(L);
  const long hi = static_cast<long>(values.size() - 1 + L);
  auto theta = [&](long j) {
    if (j < static_cast<long>(ia) || j > static_cast<long>(ib)) return 0.0;
    return (j == static_cast<long>(ia) || j == static_cast<long>(ib)) ? 0.5 : 1.0;
  };
  Energy e;
  for (long i = static_cast<long>(ia); i <= static_cast<long>(ib); ++i) {
    const double ti = theta(i);
    for (long j = lo; j <= hi; ++j) {
      const long m = std::labs(i - j);
      if (m == 0 || m > static_cast<long>(L)) continue;
      const double d = g.at(i) - g.at(j);
      const double q = a[static_cast<std::size_t>(m)] * d * d;
      e.interior += 0.25 * h * ti * theta(j) * q;
      e.cross += 0.5 * h * ti * (1.0 - theta(j)) * q;
    }
    const double dl = g.at(i) - left;
    const double dr = g.at(i) - right;
    e.cross += 0.5 * h * ti * tail * (dl * dl + dr * dr);
    e.potential += h * ti * W(g.at(i));
  }
  return e;
}

/// beta at node i: quarter of the interaction with every other point plus W.
inline double beta(const PowerKernel& k, const std::function<double(double)>& W,
                   const std::vector<double>& values, double left, double right, double h,
                   std::size_t i) {
  const std::size_t L = values.size() - 1;
  const PaddedGrid g(values, left, right, L);
  const auto a = weights(k, h, L);
  const double tail = far_tail(k, h, L);
  const long c = static_cast<long>(i);
  double sum = 0.0;
  for (long j = c - static_cast<long>(L); j <= c + static_cast<long>(L); ++j) {
    if (j == c) continue;
    const double d = g.at(j) - g.at(c);
    sum += a[static_cast<std::size_t>(std::labs(j - c))] * d * d;
  }
  const double u = values[i];
  sum += tail * ((left - u) * (left - u) + (right - u) * (right - u));
  return 0.25 * sum + W(u);
}

/// Principal value int (u(x+z) - u(x)) K(z) dz for a smooth u given in closed
/// form, by the symmetric midpoint rule on [0, Z] with step dz, plus the
/// analytic far field where u(x +- z) is replaced by its limits +-1.
inline double principal_value(const PowerKernel& k, const std::function<double(double)>& u,
                              double x, double dz, double Z) {
  const double ux = u(x);
  const auto steps = static_cast<long>(std::llround(Z / dz));
  double sum = 0.0;
  for (long j = 0; j < steps; ++j) {
    const double z = (static_cast<double>(j) + 0.5) * dz;
    sum += (u(x + z) + u(x - z) - 2.0 * ux) * k(z);
  }
  sum *= dz;
  const double far = k.one_sided_tail(Z);
  return sum + far * ((1.0 - ux) + (-1.0 - ux));
}

/// int_{R^d} (1 + |y|^2)^{-a} dy.
inline double cross_section_mass(int d, double a) {
  return std::pow(M_PI, d / 2.0) * std::tgamma(a - d / 2.0) / std::tgamma(a);
}

/// int_{R^d} |y|^2 (1 + |y|^2)^{-a} dy.
inline double cross_section_second_moment(int d, double a) {
  return std::pow(M_PI, d / 2.0) * (d / 2.0) * std::tgamma(a - d / 2.0 - 1.0) / std::tgamma(a);
}

/// Reduction scale [int (1 + |y|^2)^{-(N+2s)/2} dy]^{-1/(2s)} from Gamma functions.
inline double varpi(int N, double s) {
  if (N == 1) return 1.0;
  return std::pow(cross_section_mass(N - 1, (N + 2.0 * s) / 2.0), -1.0 / (2.0 * s));
}

}  // namespace oracle
