#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "nlac/kernels.hpp"
#include "nlac/potentials.hpp"
#include "nlac/profiles.hpp"

namespace nlac {

/// varpi(N, s) = [int_{R^{N-1}} (1 + |y|^2)^{-(N+2s)/2} dy]^{-1/(2s)}; 1 for N = 1.
double varpi(int N, double s);

/// Lebesgue measure of the unit ball in R^{N-1}.
double unit_ball_volume(int dim);

/// (1/varpi) int_{R^{N-1}} K(z', t/varpi) dz' for an N-dimensional kernel.
double reduced_kernel_value(const KernelSpec& kernel, double varpi_value, double t);

struct ReductionResult {
  double varpi = 1.0;
  KernelSpec reduced_kernel;
  std::optional<double> lambda_star;
  double omega = 0.0;  ///< measure of the unit (N-1)-ball
};

/// One-dimensional kernel k(t) = (1/varpi) int K(z', t/varpi) dz'. Isotropic
/// kernels use a radial quadrature; other kernels need N <= 3.
ReductionResult reduce_kernel(const KernelSpec& kernel, int N);

/// lambda* = varpi^{2s} int_{R^{N-1}} K(y', 1) dy' for kernels homogeneous of
/// degree -(N+2s).
double lambda_star_homogeneous(const KernelSpec& kernel, int N, double s);

using FieldN = std::function<double(std::span<const double>)>;

/// x -> u0(varpi x_N) with the constant extension of u0.
FieldN extend_profile(const Profile& u0, double varpi_value);

/// C^2 cubic B-spline through the nodes of u0, constant outside [-M, M].
class SmoothProfile {
 public:
  explicit SmoothProfile(const Profile& u0);
  ~SmoothProfile();
  SmoothProfile(SmoothProfile&&) noexcept;
  SmoothProfile& operator=(SmoothProfile&&) noexcept;
  double operator()(double x) const;
  /// u'' of the spline (zero outside [-M, M]).
  double second_derivative(double x) const;

 private:
  struct Impl;
  Impl* impl_;
};

struct IdentityPoint {
  std::vector<double> x;
  double lhs = 0.0;     ///< Monte-Carlo estimate of L_K u*(x)
  double lhs_se = 0.0;  ///< its standard error
  double rhs = 0.0;     ///< L_k u0(varpi x_N) from the grid operator
  double defect = 0.0;
  bool resolved = false;
};

struct IdentityCheck {
  double max_defect = 0.0;
  bool inconclusive = false;
  /// Every resolved point has defect <= 3 standard errors.
  bool passed = false;
  std::vector<IdentityPoint> points;
};

struct IdentityOptions {
  /// A point is resolved when its standard error is at most this value.
  double resolution = 5e-3;
  int replicates = 16;
};

/// Compares L_K u*(x), estimated by randomized quasi-Monte Carlo over R^N with
/// kernel-weighted sampling split at |z| = 1, against L_k u0(varpi x_N).
IdentityCheck verify_identity(const KernelSpec& kernel, const Profile& u0,
                              const std::vector<std::vector<double>>& points,
                              std::int64_t mc_samples, std::uint64_t seed,
                              const IdentityOptions& opts = {});

struct NdEnergy {
  double energy = 0.0;     ///< E_K(u*, B_R)
  double energy_se = 0.0;
  double ratio = 0.0;      ///< energy / (R^{N-1} psi_s(R))
  double ratio_se = 0.0;
  double reference = 0.0;  ///< (omega / varpi) E_k(u0, interval)
  bool inconclusive = false;
};

/// Monte-Carlo estimate of E_K(u*, B_R) for a 2-d kernel, with the 1-d
/// prediction (omega / varpi) E_k(u0, [-varpi 0.9M, varpi 0.9M]) (rounded to nodes).
NdEnergy energy_nd_ratio(const KernelSpec& kernel, const Potential& potential, const Profile& u0,
                         double R, std::int64_t mc_samples, std::uint64_t seed);

/// key=value block with varpi, lambda_star and omega.
void write_reduction(const ReductionResult& result, std::ostream& out);

}  // namespace nlac
