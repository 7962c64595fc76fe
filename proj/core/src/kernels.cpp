#include "nlac/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "nlac/error.hpp"
#include "quadrature.hpp"

namespace nlac {
namespace {

constexpr double kSlack = 1e-10;

double norm(std::span<const double> z) {
  double sum = 0.0;
  for (double v : z) sum += v * v;
  return std::sqrt(sum);
}

void require_order(double s) {
  if (!(s > 0.0 && s < 1.0)) {
    std::ostringstream msg;
    msg << "fractional order s must lie in (0,1), got " << s;
    throw InvalidArgument(msg.str());
  }
}

void require_dim(int dim) {
  if (dim < 1) throw InvalidArgument("kernel dimension must be >= 1");
}

void require_one_dimensional(const KernelSpec& kernel, const char* what) {
  if (kernel.dim() != 1) throw InvalidArgument(std::string(what) + " requires a 1-d kernel");
}

bool within(double value, double lo, double hi) {
  const double scale = std::max({std::abs(lo), std::abs(hi), std::abs(value)});
  return value >= lo - kSlack * scale && value <= hi + kSlack * scale;
}

}  // namespace

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::fractional: return "fractional";
    case KernelFamily::truncated: return "truncated";
    case KernelFamily::homogeneous_anisotropic: return "homogeneous-anisotropic";
    case KernelFamily::perturbed: return "perturbed";
    case KernelFamily::custom: return "custom";
  }
  return "custom";
}

Sigma sigma_zero() { return {"zero", [](double) { return 0.0; }, 0.0, 0.0, 0.0}; }

Sigma sigma_exp() {
  return {"exp", [](double r) { return std::exp(-r); }, 0.0, 1.0, 0.0};
}

Sigma sigma_sin2() {
  return {"sin2", [](double r) { return std::sin(r) * std::sin(r); }, 0.0, 1.0, std::nullopt};
}

Sigma sigma_constant(double value) {
  if (!(value >= 0.0)) throw InvalidArgument("sigma must be nonnegative");
  return {"const", [value](double) { return value; }, value, value, value};
}

KernelSpec::KernelSpec(KernelDefinition def) : def_(std::move(def)) {
  require_dim(def_.dim);
  require_order(def_.s);
  if (!def_.amplitude) throw InvalidArgument("kernel amplitude is required");
  if (!(def_.lambda_lower > 0.0) || !(def_.lambda_upper >= def_.lambda_lower)) {
    throw InvalidArgument("kernel bounds must satisfy 0 < lambda <= Lambda");
  }
  if (!(def_.r0 > 0.0)) throw InvalidArgument("r0 must be positive");
  if (!(def_.support_radius > 0.0)) throw InvalidArgument("support radius must be positive");
}

double KernelSpec::amplitude(std::span<const double> z) const {
  const double r = norm(z);
  if (r >= def_.support_radius) return 0.0;
  if (def_.radial) return def_.radial(r);
  return def_.amplitude(z);
}

double KernelSpec::amplitude(double z) const {
  if (def_.dim == 1) {
    const std::array<double, 1> v{z};
    return amplitude(std::span<const double>(v));
  }
  if (!def_.radial) throw InvalidArgument("scalar amplitude needs a 1-d or isotropic kernel");
  const double r = std::abs(z);
  return r >= def_.support_radius ? 0.0 : def_.radial(r);
}

double KernelSpec::evaluate(std::span<const double> z) const {
  const double r = norm(z);
  if (r == 0.0) return kInfinity;
  if (r >= def_.support_radius) return 0.0;
  const double a = def_.radial ? def_.radial(r) : def_.amplitude(z);
  return a * std::pow(r, -(def_.dim + 2.0 * def_.s));
}

double KernelSpec::evaluate(double z) const {
  if (def_.dim != 1) throw InvalidArgument("scalar evaluate requires a 1-d kernel");
  const std::array<double, 1> v{z};
  return evaluate(std::span<const double>(v));
}

double KernelSpec::radial(double r) const {
  if (!def_.radial) throw InvalidArgument("radial evaluation requires an isotropic kernel");
  r = std::abs(r);
  if (r == 0.0) return kInfinity;
  if (r >= def_.support_radius) return 0.0;
  return def_.radial(r) * std::pow(r, -(def_.dim + 2.0 * def_.s));
}

KernelSpec make_fractional(int dim, double s, double coefficient) {
  require_dim(dim);
  require_order(s);
  if (!(coefficient > 0.0)) throw InvalidArgument("coefficient must be positive");
  KernelDefinition def;
  def.family = KernelFamily::fractional;
  def.dim = dim;
  def.s = s;
  def.lambda_lower = def.lambda_upper = coefficient;
  def.coefficient = coefficient;
  def.amplitude = [coefficient](std::span<const double>) { return coefficient; };
  def.radial = [coefficient](double) { return coefficient; };
  def.constant_amplitude = coefficient;
  def.homogeneous = true;
  return KernelSpec(std::move(def));
}

KernelSpec make_truncated(int dim, double s, double r0, double amplitude) {
  if (!(r0 > 0.0)) throw InvalidArgument("r0 must be positive");
  if (!(amplitude > 0.0)) throw InvalidArgument("truncated amplitude must be positive");
  KernelDefinition def;
  def.family = KernelFamily::truncated;
  def.dim = dim;
  def.s = s;
  def.lambda_lower = def.lambda_upper = amplitude;
  def.r0 = def.support_radius = r0;
  def.amplitude = [amplitude](std::span<const double>) { return amplitude; };
  def.radial = [amplitude](double) { return amplitude; };
  def.constant_amplitude = amplitude;
  return KernelSpec(std::move(def));
}

KernelSpec make_truncated(int dim, double s, double r0, Amplitude amplitude, double lower,
                          double upper) {
  if (!(r0 > 0.0)) throw InvalidArgument("r0 must be positive");
  KernelDefinition def;
  def.family = KernelFamily::truncated;
  def.dim = dim;
  def.s = s;
  def.lambda_lower = lower;
  def.lambda_upper = upper;
  def.r0 = def.support_radius = r0;
  def.amplitude = std::move(amplitude);
  return KernelSpec(std::move(def));
}

KernelSpec make_perturbed(double s, double lambda_star, Sigma sigma) {
  if (!(lambda_star > 0.0)) throw InvalidArgument("lambda* must be positive");
  if (!sigma.f) throw InvalidArgument("sigma function is required");
  if (!(sigma.lower >= 0.0)) throw InvalidArgument("sigma must be nonnegative");
  KernelDefinition def;
  def.family = KernelFamily::perturbed;
  def.dim = 1;
  def.s = s;
  def.lambda_lower = lambda_star + sigma.lower;
  def.lambda_upper = lambda_star + sigma.upper;
  def.coefficient = lambda_star;
  auto f = sigma.f;
  def.radial = [lambda_star, f](double r) { return lambda_star + f(r); };
  def.amplitude = [lambda_star, f](std::span<const double> z) {
    return lambda_star + f(std::abs(z[0]));
  };
  if (sigma.lower == sigma.upper) def.constant_amplitude = lambda_star + sigma.lower;
  return KernelSpec(std::move(def));
}

KernelSpec make_homogeneous(int dim, double s, Amplitude angular, double lower, double upper) {
  if (!angular) throw InvalidArgument("angular amplitude is required");
  KernelDefinition def;
  def.family = KernelFamily::homogeneous_anisotropic;
  def.dim = dim;
  def.s = s;
  def.lambda_lower = lower;
  def.lambda_upper = upper;
  def.homogeneous = true;
  def.amplitude = [angular = std::move(angular)](std::span<const double> z) {
    std::vector<double> unit(z.begin(), z.end());
    const double r = norm(z);
    for (double& v : unit) v /= r;
    return angular(unit);
  };
  return KernelSpec(std::move(def));
}

KernelSpec make_anisotropic(int dim, double s, double coefficient, double anisotropy) {
  if (!(coefficient > 0.0)) throw InvalidArgument("coefficient must be positive");
  if (!(anisotropy > -1.0)) throw InvalidArgument("anisotropy must exceed -1");
  const double lo = coefficient * std::min(1.0, 1.0 + anisotropy);
  const double hi = coefficient * std::max(1.0, 1.0 + anisotropy);
  KernelDefinition def;
  def.family = KernelFamily::homogeneous_anisotropic;
  def.dim = dim;
  def.s = s;
  def.lambda_lower = dim == 1 ? coefficient * (1.0 + anisotropy) : lo;
  def.lambda_upper = dim == 1 ? coefficient * (1.0 + anisotropy) : hi;
  def.coefficient = coefficient;
  def.homogeneous = true;
  def.amplitude = [coefficient, anisotropy](std::span<const double> z) {
    const double r = norm(z);
    const double c = z[0] / r;
    return coefficient * (1.0 + anisotropy * c * c);
  };
  if (dim == 1) {
    const double value = coefficient * (1.0 + anisotropy);
    def.radial = [value](double) { return value; };
    def.constant_amplitude = value;
  }
  return KernelSpec(std::move(def));
}

KernelSpec make_custom(int dim, double s, Amplitude amplitude, double lower, double upper,
                       double r0, double support_radius) {
  KernelDefinition def;
  def.family = KernelFamily::custom;
  def.dim = dim;
  def.s = s;
  def.lambda_lower = lower;
  def.lambda_upper = upper;
  def.r0 = r0;
  def.support_radius = support_radius;
  def.amplitude = std::move(amplitude);
  return KernelSpec(std::move(def));
}

HypothesisReport validate(const KernelSpec& kernel, int sample_count, std::uint64_t seed) {
  if (sample_count < 1) throw InvalidArgument("sample_count must be >= 1");
  const int dim = kernel.dim();
  const double exponent = dim + 2.0 * kernel.s();
  const double r0 = kernel.r0();
  const double lo = 1e-6 * (std::isfinite(r0) ? r0 : 1.0);
  const double hi = 1e6;
  const double lam = kernel.lambda_lower();
  const double Lam = kernel.lambda_upper();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  HypothesisReport report{true, true, true, kernel.homogeneous()};
  std::vector<double> z(dim), neg(dim), scaled(dim);
  constexpr std::array<double, 3> kScales{0.5, 2.0, 10.0};

  for (int k = 0; k < sample_count; ++k) {
    const double t = (k + jitter(rng)) / sample_count;
    const double r = lo * std::pow(hi / lo, t);
    if (dim == 1) {
      z[0] = jitter(rng) < 0.5 ? -r : r;
    } else {
      double len = 0.0;
      for (int d = 0; d < dim; ++d) {
        z[d] = gauss(rng);
        len += z[d] * z[d];
      }
      len = std::sqrt(len);
      for (int d = 0; d < dim; ++d) z[d] *= r / len;
    }
    for (int d = 0; d < dim; ++d) neg[d] = -z[d];

    const double value = kernel.evaluate(z);
    const double mirrored = kernel.evaluate(neg);
    const double scale = std::max(std::abs(value), std::abs(mirrored));
    if (std::abs(value - mirrored) > kSlack * scale) report.K1 = false;

    const double power = std::pow(r, -exponent);
    const double upper = Lam * power;
    const double lower = lam * power;
    if (!(value >= 0.0)) {
      report.K2 = report.K2prime = report.K2doubleprime = false;
      continue;
    }
    if (r < r0) {
      if (!within(value, lower, upper)) report.K2 = false;
    } else if (!within(value, 0.0, upper)) {
      report.K2 = false;
    }
    if (!within(value, lower, upper)) report.K2prime = false;

    if (report.K2doubleprime) {
      for (double c : kScales) {
        for (int d = 0; d < dim; ++d) scaled[d] = c * z[d];
        const double rescaled = kernel.evaluate(scaled) * std::pow(c, exponent);
        if (std::abs(rescaled - value) > kSlack * std::max(value, rescaled) ||
            !within(value, lower, upper)) {
          report.K2doubleprime = false;
          break;
        }
      }
    }
  }
  if (!report.K2prime) report.K2doubleprime = false;
  return report;
}

double tail_mass(const KernelSpec& kernel, double a, double abs_tol) {
  require_one_dimensional(kernel, "tail_mass");
  if (!(a > 0.0)) throw InvalidArgument("tail_mass requires a > 0");
  const double two_s = 2.0 * kernel.s();
  const double support = kernel.support_radius();
  if (a >= support) return 0.0;

  if (const auto c = kernel.constant_amplitude()) {
    const double outer = std::isfinite(support) ? std::pow(support, -two_s) : 0.0;
    return 2.0 * (*c) * (std::pow(a, -two_s) - outer) / two_s;
  }

  auto symmetric = [&](double z) { return kernel.evaluate(z) + kernel.evaluate(-z); };
  if (std::isfinite(support)) return detail::adaptive(symmetric, a, support);

  // Geometric panels [a 2^k, a 2^{k+1}]; power-law tails shrink per panel.
  constexpr int kPanelBudget = 2000;
  double total = 0.0;
  double left = a;
  for (int k = 0; k < kPanelBudget; ++k) {
    const double right = 2.0 * left;
    const double panel = detail::adaptive(symmetric, left, right, 1e-12, 10);
    total += panel;
    if (std::abs(panel) <= 1e-12 * std::abs(total) && std::abs(panel) <= abs_tol) return total;
    left = right;
    if (!std::isfinite(left)) break;
  }
  throw ConvergenceError("tail_mass: geometric panel quadrature did not converge");
}

double second_moment(const KernelSpec& kernel, double rho) {
  require_one_dimensional(kernel, "second_moment");
  if (!(rho > 0.0)) throw InvalidArgument("second_moment requires rho > 0");
  const double p = 2.0 - 2.0 * kernel.s();
  const double reach = std::min(rho, kernel.support_radius());
  if (const auto c = kernel.constant_amplitude()) return (*c) * std::pow(reach, p) / p;
  // z = reach * t^{1/p} turns z^{1-2s} dz into reach^p / p dt.
  auto integrand = [&](double t) {
    const double z = reach * std::pow(t, 1.0 / p);
    return 0.5 * (kernel.amplitude(z) + kernel.amplitude(-z));
  };
  return std::pow(reach, p) / p * detail::adaptive(integrand, 0.0, 1.0, 1e-13);
}

double moment_slope(const KernelSpec& kernel, double rho) {
  require_one_dimensional(kernel, "moment_slope");
  if (!(rho > 0.0)) throw InvalidArgument("moment_slope requires rho > 0");
  const double support = kernel.support_radius();
  if (rho >= support) return 0.0;
  const double q = 1.0 - 2.0 * kernel.s();
  auto amp = [&](double z) { return 0.5 * (kernel.amplitude(z) + kernel.amplitude(-z)); };
  if (const auto c = kernel.constant_amplitude()) return (*c) * q * std::pow(rho, -2.0 * kernel.s());
  const double step = 1e-5 * rho;
  double derivative = 0.0;
  if (rho + step < support) {
    derivative = (amp(rho + step) - amp(rho - step)) / (2.0 * step);
  } else {
    derivative = (amp(rho) - amp(rho - step)) / step;
  }
  return derivative * std::pow(rho, q) + q * amp(rho) * std::pow(rho, -2.0 * kernel.s());
}

KernelInfinity kernel_infinity(const KernelSpec& kernel, double z,
                               std::span<const double> R_list) {
  require_one_dimensional(kernel, "kernel_infinity");
  if (kernel.s() != 0.5) throw InvalidArgument("K_inf uses the R^2 scaling, defined for s = 1/2 only");
  if (!(z > 1.0)) throw InvalidArgument("kernel_infinity requires z > 1");
  if (R_list.size() < 2) throw InvalidArgument("R_list needs at least two entries");
  for (std::size_t i = 1; i < R_list.size(); ++i) {
    if (!(R_list[i] > R_list[i - 1])) throw InvalidArgument("R_list must be increasing");
  }

  struct Limit {
    double value;
    bool converged;
  };
  auto extrapolate = [&](double point, std::vector<double>* sequence) -> Limit {
    std::vector<double> q(R_list.size());
    for (std::size_t j = 0; j < R_list.size(); ++j) {
      q[j] = R_list[j] * R_list[j] * kernel.evaluate(R_list[j] * point);
    }
    const std::size_t b = q.size() - 1;
    const std::size_t a = b - 1;
    const double ra = R_list[a];
    const double rb = R_list[b];
    // Richardson step assuming an O(1/R) remainder.
    const double value = (rb * q[b] - ra * q[a]) / (rb - ra);
    const double scale = std::max(std::abs(q[a]), std::abs(q[b]));
    const bool converged = scale == 0.0 || std::abs(q[b] - q[a]) <= 1e-3 * scale;
    if (sequence != nullptr) *sequence = std::move(q);
    return {value, converged};
  };

  KernelInfinity out;
  const Limit at_z = extrapolate(z, &out.sequence);
  out.value = at_z.value;
  out.converged = at_z.converged;

  // G = 2 int_1^inf K_inf(z) dz, with z = 1/t.
  bool nodes_converged = true;
  auto integrand = [&](double t) {
    const Limit lim = extrapolate(1.0 / t, nullptr);
    nodes_converged = nodes_converged && lim.converged;
    return lim.value / (t * t);
  };
  out.G = 2.0 * detail::gauss_legendre(integrand, 0.0, 1.0);
  out.converged = out.converged && nodes_converged;
  return out;
}

}  // namespace nlac
