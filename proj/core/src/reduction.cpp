#include "nlac/reduction.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/random/sobol.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "nlac/asymptotics.hpp"
#include "nlac/error.hpp"
#include "nlac/nonlocal.hpp"
#include "nlac/parallel.hpp"
#include "quadrature.hpp"

namespace nlac {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kAzimuthNodes = 128;
constexpr double kTaylorRadius = 1e-3;

/// Surface measure of the unit sphere S^{d-1} in R^d (2 for d = 1).
double sphere_area(int d) {
  return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

void require_reduction_dim(const KernelSpec& kernel, int N) {
  if (N < 2) throw InvalidArgument("reduction needs N >= 2");
  if (kernel.dim() != N) throw InvalidArgument("kernel dimension does not match N");
}

// int_{R^{N-1}} K(z', tau) dz'.
double cross_section(const KernelSpec& kernel, double tau) {
  const int N = kernel.dim();
  const double a = std::abs(tau);
  if (a == 0.0) return kInfinity;
  const double support = kernel.support_radius();
  if (a >= support) return 0.0;
  const double theta_max = std::isfinite(support) ? std::acos(a / support) : 0.5 * kPi;

  if (kernel.isotropic()) {
    // z' = a tan(theta) e, |z| = a sec(theta).
    auto integrand = [&](double theta) {
      const double c = std::cos(theta);
      const double t = std::tan(theta);
      return std::pow(t, N - 2) / (c * c) * kernel.radial(a / c);
    };
    return sphere_area(N - 1) * std::pow(a, N - 1) * detail::tanh_sinh(integrand, 0.0, theta_max);
  }

  if (N == 2) {
    std::array<double, 2> z{0.0, tau};
    auto integrand = [&](double theta) {
      const double c = std::cos(theta);
      z[0] = a * std::tan(theta);
      const double plus = kernel.evaluate(z);
      z[0] = -z[0];
      return (plus + kernel.evaluate(z)) / (c * c);
    };
    return a * detail::tanh_sinh(integrand, 0.0, theta_max);
  }
  if (N == 3) {
    std::array<double, 3> z{0.0, 0.0, tau};
    double total = 0.0;
    for (int k = 0; k < kAzimuthNodes; ++k) {
      const double phi = 2.0 * kPi * k / kAzimuthNodes;
      auto integrand = [&](double theta) {
        const double c = std::cos(theta);
        const double rho = a * std::tan(theta);
        z[0] = rho * std::cos(phi);
        z[1] = rho * std::sin(phi);
        return kernel.evaluate(z) * rho / (c * c);
      };
      total += detail::tanh_sinh(integrand, 0.0, theta_max);
    }
    return a * total * 2.0 * kPi / kAzimuthNodes;
  }
  throw InvalidArgument("unsupported: anisotropic reduction is limited to N <= 3");
}

bool sampled_homogeneous(const KernelSpec& kernel) {
  if (kernel.homogeneous()) return true;
  const int N = kernel.dim();
  const double degree = N + 2.0 * kernel.s();
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> z(N), cz(N);
  for (int k = 0; k < 16; ++k) {
    double len = 0.0;
    for (double& v : z) {
      v = gauss(rng);
      len += v * v;
    }
    const double r = std::exp(gauss(rng)) / std::sqrt(len);
    for (double& v : z) v *= r;
    const double base = kernel.evaluate(z);
    for (double c : {0.5, 3.0}) {
      for (int d = 0; d < N; ++d) cz[d] = c * z[d];
      const double scaled = kernel.evaluate(cz) * std::pow(c, degree);
      if (std::abs(scaled - base) > 1e-8 * std::max(std::abs(base), std::abs(scaled))) return false;
    }
  }
  return true;
}

// Uniform direction on S^{N-1} from N uniforms via the inverse normal CDF.
void direction(const double* u, int N, double* out) {
  double len = 0.0;
  for (int d = 0; d < N; ++d) {
    const double p = std::clamp(u[d], 1e-300, 1.0 - 1e-16);
    out[d] = std::sqrt(2.0) * boost::math::erf_inv(2.0 * p - 1.0);
    len += out[d] * out[d];
  }
  len = std::sqrt(len);
  if (len == 0.0) {
    out[N - 1] = 1.0;
    return;
  }
  for (int d = 0; d < N; ++d) out[d] /= len;
}

// Radial importance sampling split at |z| = 1: density (2-2s) r^{1-2s} on (0,1)
// and 2s r^{-1-2s} on (1, inf). Returns r and r^{N-1} |S^{N-1}| / density.
struct RadialDraw {
  double r;
  double jacobian;
};

RadialDraw near_draw(double u, double s, int N, double area) {
  const double r = std::pow(std::max(u, 1e-300), 1.0 / (2.0 - 2.0 * s));
  return {r, std::pow(r, N - 1) * area / ((2.0 - 2.0 * s) * std::pow(r, 1.0 - 2.0 * s))};
}

RadialDraw far_draw(double u, double s, int N, double area) {
  const double r = std::pow(std::max(1.0 - u, 1e-300), -1.0 / (2.0 * s));
  return {r, std::pow(r, N - 1) * area / (2.0 * s * std::pow(r, -1.0 - 2.0 * s))};
}

double rhs_at(const OperatorWeights& weights, const Profile& u0, double y) {
  const double h = u0.spacing();
  const double t = (y + u0.half_width()) / h;
  const double r = std::round(t);
  if (std::abs(t - r) <= 1e-9) return apply_operator(weights, u0, static_cast<std::size_t>(r));
  const auto i = static_cast<std::size_t>(std::floor(t));
  const double frac = t - static_cast<double>(i);
  return (1.0 - frac) * apply_operator(weights, u0, i) + frac * apply_operator(weights, u0, i + 1);
}

}  // namespace

double varpi(int N, double s) {
  if (N < 1) throw InvalidArgument("varpi needs N >= 1");
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("varpi needs s in (0,1)");
  if (N == 1) return 1.0;
  // y = tan(theta): the radial integral becomes int sin^{N-2} cos^{2s}.
  auto integrand = [&](double theta) {
    return std::pow(std::sin(theta), N - 2) * std::pow(std::cos(theta), 2.0 * s);
  };
  const double integral = sphere_area(N - 1) * detail::tanh_sinh(integrand, 0.0, 0.5 * kPi);
  if (!(integral > 0.0) || !std::isfinite(integral)) {
    throw ConvergenceError("varpi: cross-section quadrature failed");
  }
  return std::pow(integral, -1.0 / (2.0 * s));
}

double unit_ball_volume(int dim) {
  if (dim < 0) throw InvalidArgument("dimension must be >= 0");
  return std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

double reduced_kernel_value(const KernelSpec& kernel, double varpi_value, double t) {
  return cross_section(kernel, t / varpi_value) / varpi_value;
}

double lambda_star_homogeneous(const KernelSpec& kernel, int N, double s) {
  require_reduction_dim(kernel, N);
  if (kernel.s() != s) throw InvalidArgument("s does not match the kernel");
  if (!sampled_homogeneous(kernel)) {
    throw InvalidArgument("lambda* needs a kernel homogeneous of degree -(N+2s)");
  }
  const double w = varpi(N, s);
  const double value = std::pow(w, 2.0 * s) * cross_section(kernel, 1.0);
  if (!std::isfinite(value)) throw Error("divergent cross-section integral");
  return value;
}

ReductionResult reduce_kernel(const KernelSpec& kernel, int N) {
  require_reduction_dim(kernel, N);
  if (!kernel.isotropic() && N > 3) {
    throw InvalidArgument("unsupported: anisotropic reduction is limited to N <= 3");
  }
  const double s = kernel.s();
  const double w = varpi(N, s);

  std::optional<double> lambda_star;
  if (sampled_homogeneous(kernel)) lambda_star = lambda_star_homogeneous(kernel, N, s);

  KernelDefinition def;
  def.dim = 1;
  def.s = s;
  def.support_radius = w * kernel.support_radius();
  def.homogeneous = lambda_star.has_value();
  if (std::isfinite(kernel.r0())) {
    auto ball = [&](double r) { return std::pow(r, N - 2) * std::pow(1.0 + r * r, -0.5 * (N + 2.0 * s)); };
    const double inner = sphere_area(N - 1) * detail::adaptive(ball, 0.0, 1.0);
    def.lambda_lower = kernel.lambda_lower() * std::pow(w, 2.0 * s) * inner;
    def.r0 = w * kernel.r0() / std::sqrt(2.0);
  } else {
    def.lambda_lower = kernel.lambda_lower();
  }
  def.lambda_upper = kernel.lambda_upper();

  const KernelSpec source = kernel;
  const double exponent = 1.0 + 2.0 * s;
  auto amp = [source, w, exponent](double r) {
    return std::pow(r, exponent) * cross_section(source, r / w) / w;
  };
  def.radial = amp;
  def.amplitude = [amp](std::span<const double> z) { return amp(std::abs(z[0])); };
  if (lambda_star) {
    def.family = kernel.family() == KernelFamily::fractional ? KernelFamily::fractional
                                                              : KernelFamily::homogeneous_anisotropic;
    def.coefficient = lambda_star;
    def.constant_amplitude = lambda_star;
    def.lambda_lower = std::min(def.lambda_lower, *lambda_star);
    def.lambda_upper = std::max(def.lambda_upper, *lambda_star);
  } else if (kernel.family() == KernelFamily::truncated) {
    def.family = KernelFamily::truncated;
  } else {
    def.family = KernelFamily::custom;
  }
  return ReductionResult{w, KernelSpec(std::move(def)), lambda_star, unit_ball_volume(N - 1)};
}

FieldN extend_profile(const Profile& u0, double varpi_value) {
  if (!(varpi_value > 0.0)) throw InvalidArgument("varpi must be positive");
  return [u0, varpi_value](std::span<const double> x) { return u0(varpi_value * x.back()); };
}

struct SmoothProfile::Impl {
  boost::math::interpolators::cardinal_cubic_b_spline<double> spline;
  double M;
  double left;
  double right;
};

SmoothProfile::SmoothProfile(const Profile& u0)
    : impl_(new Impl{boost::math::interpolators::cardinal_cubic_b_spline<double>(
                         u0.values().data(), u0.size(), -u0.half_width(), u0.spacing()),
                     u0.half_width(), u0.left(), u0.right()}) {}

SmoothProfile::~SmoothProfile() { delete impl_; }
SmoothProfile::SmoothProfile(SmoothProfile&& other) noexcept : impl_(other.impl_) {
  other.impl_ = nullptr;
}
SmoothProfile& SmoothProfile::operator=(SmoothProfile&& other) noexcept {
  std::swap(impl_, other.impl_);
  return *this;
}

double SmoothProfile::operator()(double x) const {
  if (x <= -impl_->M) return impl_->left;
  if (x >= impl_->M) return impl_->right;
  return impl_->spline(x);
}

double SmoothProfile::second_derivative(double x) const {
  if (x <= -impl_->M || x >= impl_->M) return 0.0;
  return impl_->spline.double_prime(x);
}

IdentityCheck verify_identity(const KernelSpec& kernel, const Profile& u0,
                              const std::vector<std::vector<double>>& points,
                              std::int64_t mc_samples, std::uint64_t seed,
                              const IdentityOptions& opts) {
  const int N = kernel.dim();
  if (N < 2) throw InvalidArgument("verify_identity needs an N-dimensional kernel, N >= 2");
  if (mc_samples < 1) throw InvalidArgument("mc_samples must be positive");
  if (opts.replicates < 2) throw InvalidArgument("at least two replicates are needed");
  const ReductionResult red = reduce_kernel(kernel, N);
  const double w = red.varpi;
  const double M = u0.half_width();
  for (const auto& x : points) {
    if (static_cast<int>(x.size()) != N) throw InvalidArgument("point dimension does not match N");
    if (std::abs(w * x.back()) > 0.8 * M * (1.0 + 1e-12)) {
      throw InvalidArgument("points must satisfy |varpi x_N| <= 0.8M");
    }
  }

  IdentityCheck out;
  const OperatorWeights weights(red.reduced_kernel, u0.spacing(), u0.size());
  for (const auto& x : points) {
    IdentityPoint p;
    p.x = x;
    p.rhs = rhs_at(weights, u0, w * x.back());
    out.points.push_back(std::move(p));
  }

  const SmoothProfile smooth(u0);
  const double s = kernel.s();
  const double area = sphere_area(N);
  const int dims = N + 1;
  const int reps = opts.replicates;
  const std::int64_t per_rep = std::max<std::int64_t>(1, mc_samples / (2 * reps));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::vector<double>> shifts(reps, std::vector<double>(dims));
  for (auto& shift : shifts) {
    for (double& v : shift) v = unif(rng);
  }

  const std::size_t P = points.size();
  std::vector<std::vector<double>> estimates(reps, std::vector<double>(P, 0.0));
  parallel_for(0, static_cast<std::size_t>(reps), [&](std::size_t rep) {
    boost::random::sobol engine(dims);
    constexpr double scale = 0x1p-64;
    std::vector<double> u(dims), dir(N), z(N);
    std::vector<double> sum(P, 0.0);
    std::vector<double> base(P);
    for (std::size_t k = 0; k < P; ++k) base[k] = smooth(w * points[k].back());
    for (std::int64_t j = 0; j < per_rep; ++j) {
      for (int d = 0; d < dims; ++d) {
        const double raw = static_cast<double>(engine()) * scale + shifts[rep][d];
        u[d] = raw - std::floor(raw);
      }
      direction(u.data() + 1, N, dir.data());
      for (const RadialDraw draw : {near_draw(u[0], s, N, area), far_draw(u[0], s, N, area)}) {
        for (int d = 0; d < N; ++d) z[d] = draw.r * dir[d];
        const double weight = 0.5 * kernel.evaluate(z) * draw.jacobian;
        if (weight == 0.0) continue;
        const double zN = z[N - 1];
        for (std::size_t k = 0; k < P; ++k) {
          const double xN = points[k].back();
          // Tiny offsets: the difference quotient is lost to rounding.
          const double delta =
              draw.r * w < kTaylorRadius
                  ? smooth.second_derivative(w * xN) * (w * zN) * (w * zN)
                  : smooth(w * (xN + zN)) + smooth(w * (xN - zN)) - 2.0 * base[k];
          sum[k] += weight * delta;
        }
      }
    }
    for (std::size_t k = 0; k < P; ++k) estimates[rep][k] = sum[k] / static_cast<double>(per_rep);
  });

  out.passed = true;
  for (std::size_t k = 0; k < P; ++k) {
    double mean = 0.0;
    for (int r = 0; r < reps; ++r) mean += estimates[r][k];
    mean /= reps;
    double var = 0.0;
    for (int r = 0; r < reps; ++r) var += (estimates[r][k] - mean) * (estimates[r][k] - mean);
    var /= (reps - 1);
    IdentityPoint& p = out.points[k];
    p.lhs = mean;
    p.lhs_se = std::sqrt(var / reps);
    p.defect = std::abs(p.lhs - p.rhs);
    p.resolved = mc_samples >= 10000 && p.lhs_se <= opts.resolution;
    out.max_defect = std::max(out.max_defect, p.defect);
    if (!p.resolved) {
      out.inconclusive = true;
    } else if (p.defect > 3.0 * p.lhs_se) {
      out.passed = false;
    }
  }
  if (out.inconclusive) out.passed = false;
  return out;
}

NdEnergy energy_nd_ratio(const KernelSpec& kernel, const Potential& potential, const Profile& u0,
                         double R, std::int64_t mc_samples, std::uint64_t seed) {
  constexpr int N = 2;
  if (kernel.dim() != N) throw InvalidArgument("energy_nd_ratio supports N = 2 only");
  if (mc_samples < 2) throw InvalidArgument("mc_samples must be >= 2");
  const ReductionResult red = reduce_kernel(kernel, N);
  const double w = red.varpi;
  const double M = u0.half_width();
  if (!(R > 1.0) || R > 0.4 * M / w * (1.0 + 1e-12)) {
    throw InvalidArgument("energy_nd_ratio needs 1 < R <= 0.4M/varpi");
  }
  const double s = kernel.s();
  const double area = sphere_area(N);
  const double disk = kPi * R * R;

  constexpr int kBlocks = 64;
  const std::int64_t per_block = std::max<std::int64_t>(1, mc_samples / kBlocks);
  std::vector<double> sums(kBlocks, 0.0), squares(kBlocks, 0.0);
  parallel_for(0, kBlocks, [&](std::size_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(b)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::array<double, N> x{}, z{}, y{};
    double sum = 0.0;
    double square = 0.0;
    for (std::int64_t j = 0; j < per_block; ++j) {
      const double rx = R * std::sqrt(unif(rng));
      const double ax = 2.0 * kPi * unif(rng);
      x = {rx * std::cos(ax), rx * std::sin(ax)};
      const double ux = u0(w * x[1]);
      double f = potential.w(ux);
      for (int stratum = 0; stratum < 2; ++stratum) {
        const double ur = unif(rng);
        const double az = 2.0 * kPi * unif(rng);
        const RadialDraw draw = stratum == 0 ? near_draw(ur, s, N, area) : far_draw(ur, s, N, area);
        z = {draw.r * std::cos(az), draw.r * std::sin(az)};
        y = {x[0] + z[0], x[1] + z[1]};
        const bool inside = y[0] * y[0] + y[1] * y[1] < R * R;
        const double diff = u0(w * y[1]) - ux;
        f += 0.25 * (inside ? 1.0 : 2.0) * diff * diff * kernel.evaluate(z) * draw.jacobian;
      }
      f *= disk;
      sum += f;
      square += f * f;
    }
    sums[b] = sum;
    squares[b] = square;
  });

  double sum = 0.0;
  double square = 0.0;
  for (int b = 0; b < kBlocks; ++b) {
    sum += sums[b];
    square += squares[b];
  }
  const double n = static_cast<double>(per_block) * kBlocks;
  const double mean = sum / n;
  const double var = std::max(0.0, (square / n - mean * mean) * n / (n - 1.0));

  NdEnergy out;
  out.energy = mean;
  out.energy_se = std::sqrt(var / n);
  const double scale = std::pow(R, N - 1) * psi_s(s, R);
  out.ratio = out.energy / scale;
  out.ratio_se = out.energy_se / scale;
  const double h = u0.spacing();
  const double a = std::floor(w * 0.9 * M / h + 1e-9) * h;
  out.reference = red.omega / w * energy(red.reduced_kernel, potential, u0, {-a, a}).total;
  out.inconclusive = out.ratio != 0.0 && out.ratio_se > 0.25 * std::abs(out.ratio);
  return out;
}

void write_reduction(const ReductionResult& result, std::ostream& out) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", result.varpi);
  out << "varpi=" << buf << '\n';
  if (result.lambda_star) {
    std::snprintf(buf, sizeof buf, "%.17g", *result.lambda_star);
    out << "lambda_star=" << buf << '\n';
  } else {
    out << "lambda_star=none\n";
  }
  std::snprintf(buf, sizeof buf, "%.17g", result.omega);
  out << "omega=" << buf << '\n';
}

}  // namespace nlac
