#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nlac {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class KernelFamily { fractional, truncated, homogeneous_anisotropic, perturbed, custom };

std::string_view to_string(KernelFamily family);

/// Regularised kernel a(z) = K(z) |z|^{N+2s}. For the homogeneous family it
/// is evaluated on unit vectors only.
using Amplitude = std::function<double(std::span<const double>)>;

/// Radial perturbation sigma(r) >= 0 for kernels (lambda* + sigma(|z|)) |z|^{-1-2s}.
struct Sigma {
  std::string name;
  std::function<double(double)> f;
  double lower = 0.0;
  double upper = 0.0;
  std::optional<double> limit;  ///< value at infinity, when it exists
};

Sigma sigma_zero();
Sigma sigma_exp();        ///< e^{-r}
Sigma sigma_sin2();       ///< sin^2 r, bounded but without a limit
Sigma sigma_constant(double value);

/// Everything needed to construct a KernelSpec. The factories below fill it in;
/// hand-built definitions are validated by the KernelSpec constructor.
struct KernelDefinition {
  KernelFamily family = KernelFamily::custom;
  int dim = 1;
  double s = 0.5;
  double lambda_lower = 1.0;
  double lambda_upper = 1.0;
  double r0 = kInfinity;              ///< radius where the lower bound holds
  double support_radius = kInfinity;  ///< K vanishes for |z| >= support_radius
  std::optional<double> coefficient;
  Amplitude amplitude;                      ///< a(z), required
  std::function<double(double)> radial;    ///< a as a function of |z|, isotropic kernels only
  std::optional<double> constant_amplitude;  ///< a is this constant on its support
  bool homogeneous = false;                 ///< a(z) depends on z/|z| only
};

/// Immutable interaction kernel K on R^N with its structural metadata.
class KernelSpec {
 public:
  explicit KernelSpec(KernelDefinition def);

  int dim() const noexcept { return def_.dim; }
  double s() const noexcept { return def_.s; }
  double lambda_lower() const noexcept { return def_.lambda_lower; }
  double lambda_upper() const noexcept { return def_.lambda_upper; }
  double r0() const noexcept { return def_.r0; }
  double support_radius() const noexcept { return def_.support_radius; }
  KernelFamily family() const noexcept { return def_.family; }
  std::optional<double> coefficient() const noexcept { return def_.coefficient; }
  bool isotropic() const noexcept { return static_cast<bool>(def_.radial); }
  bool homogeneous() const noexcept { return def_.homogeneous; }
  std::optional<double> constant_amplitude() const noexcept { return def_.constant_amplitude; }
  const KernelDefinition& definition() const noexcept { return def_; }

  /// K(z). Returns +infinity at the origin.
  double evaluate(std::span<const double> z) const;
  /// K(z) for a one-dimensional kernel.
  double evaluate(double z) const;
  /// a(z) = K(z)|z|^{N+2s} (zero outside the support).
  double amplitude(std::span<const double> z) const;
  /// a along a ray, for dim == 1 or isotropic kernels.
  double amplitude(double z) const;
  /// K at |z| = r for isotropic kernels.
  double radial(double r) const;

 private:
  KernelDefinition def_;
};

KernelSpec make_fractional(int dim, double s, double coefficient = 1.0);
KernelSpec make_truncated(int dim, double s, double r0, double amplitude = 1.0);
KernelSpec make_truncated(int dim, double s, double r0, Amplitude amplitude, double lower,
                          double upper);
KernelSpec make_perturbed(double s, double lambda_star, Sigma sigma);
/// K(z) = a(z/|z|) |z|^{-N-2s} with lower <= a <= upper; `angular` must be even.
KernelSpec make_homogeneous(int dim, double s, Amplitude angular, double lower, double upper);
/// Homogeneous preset a(zeta) = coefficient * (1 + anisotropy * zeta_1^2).
KernelSpec make_anisotropic(int dim, double s, double coefficient, double anisotropy);
KernelSpec make_custom(int dim, double s, Amplitude amplitude, double lower, double upper,
                       double r0 = kInfinity, double support_radius = kInfinity);

struct HypothesisReport {
  bool K1 = false;             ///< symmetry
  bool K2 = false;             ///< two-sided bound near the origin, upper bound everywhere
  bool K2prime = false;        ///< two-sided bound everywhere
  bool K2doubleprime = false;  ///< homogeneous with bounded angular part
};

/// Sampled check of the kernel hypotheses: log-spaced |z| in [1e-6 r0, 1e6]
/// with seeded jitter and directions, relative slack 1e-10.
HypothesisReport validate(const KernelSpec& kernel, int sample_count, std::uint64_t seed);

/// Integral of K over {|z| >= a}, one-dimensional kernels.
double tail_mass(const KernelSpec& kernel, double a, double abs_tol = 1e-10);

/// One-sided second moment int_0^rho z^2 K(z) dz, one-dimensional kernels.
double second_moment(const KernelSpec& kernel, double rho);

/// d/dz (z^2 K(z)) at z = rho, one-dimensional kernels.
double moment_slope(const KernelSpec& kernel, double rho);

struct KernelInfinity {
  double value = 0.0;  ///< extrapolated K_inf(z)
  double G = 0.0;      ///< 2 int_1^inf K_inf
  bool converged = true;
  std::vector<double> sequence;  ///< R^2 K(R z) over R_list
};

/// Limit K_inf(z) = lim R^2 K(Rz) for s = 1/2 one-dimensional kernels, with the
/// induced energy constant G. Extrapolates along R_list (increasing).
KernelInfinity kernel_infinity(const KernelSpec& kernel, double z,
                               std::span<const double> R_list);

}  // namespace nlac
