#pragma once

// Thin wrappers over Boost.Math quadrature used across the library.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>

namespace nlac::detail {

/// Fixed 30-point Gauss-Legendre rule on [a, b].
template <class F>
double gauss_legendre(F&& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 30>::integrate(f, a, b);
}

/// Adaptive Gauss-Kronrod (61 points) on a finite interval.
template <class F>
double adaptive(F&& f, double a, double b, double rel_tol = 1e-12, unsigned max_depth = 15,
                double* error = nullptr) {
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, a, b, max_depth, rel_tol, &err);
  if (error != nullptr) *error = err;
  return value;
}

/// Double-exponential rule on a finite interval; tolerates endpoint singularities.
template <class F>
double tanh_sinh(F&& f, double a, double b, double rel_tol = 1e-13) {
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(f, a, b, rel_tol);
}

}  // namespace nlac::detail
