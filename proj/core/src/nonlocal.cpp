#include "nlac/nonlocal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlac/error.hpp"
#include "nlac/parallel.hpp"

namespace nlac {
namespace {

double symmetric_kernel(const KernelSpec& kernel, double z) {
  return 0.5 * (kernel.evaluate(z) + kernel.evaluate(-z));
}

void require_matching(const OperatorWeights& weights, const Profile& profile) {
  if (weights.nodes() != profile.size() ||
      std::abs(weights.spacing() - profile.spacing()) > 1e-12 * profile.spacing()) {
    throw InvalidArgument("operator weights were built for a different grid");
  }
}

void require_interior(const Profile& profile, std::size_t i) {
  if (i == 0 || i + 1 >= profile.size()) {
    throw InvalidArgument("node must be interior (distance >= h from the boundary)");
  }
}

// Value at node i + offset, with the constant extension off the grid.
inline double extended(const std::vector<double>& v, std::ptrdiff_t j, double left,
                       double right) {
  if (j < 0) return left;
  if (j >= static_cast<std::ptrdiff_t>(v.size())) return right;
  return v[static_cast<std::size_t>(j)];
}

}  // namespace

void require_operator_kernel(const KernelSpec& kernel) {
  if (kernel.dim() != 1) throw InvalidArgument("the 1-d operator needs a 1-d kernel");
  if (kernel.s() < 0.05 || kernel.s() > 0.95) {
    throw InvalidArgument("s must lie in [0.05, 0.95] for the discrete operator");
  }
}

OperatorWeights::OperatorWeights(const KernelSpec& kernel, double h, std::size_t nodes,
                                 const QuadratureOptions& opts)
    : h_(h), nodes_(nodes) {
  require_operator_kernel(kernel);
  if (!(h > 0.0)) throw InvalidArgument("h must be positive");
  if (nodes < 3) throw InvalidArgument("the grid needs at least three nodes");
  if (!(opts.abs_tol > 0.0)) throw InvalidArgument("abs_tol must be positive");

  const double requested = opts.near_field_radius.value_or(2.0 * h);
  if (!(requested >= h * (1.0 - 1e-9))) {
    throw InvalidArgument("near_field_radius must be at least the grid spacing");
  }
  const std::size_t p = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(requested / h)));
  const std::size_t L = nodes - 1;
  rho_ = static_cast<double>(p) * h;

  weights_.assign(L + 1, 0.0);
  for (std::size_t m = p; m <= L; ++m) {
    const double k = symmetric_kernel(kernel, static_cast<double>(m) * h);
    weights_[m] = (m == p ? 0.5 : 1.0) * h * k;
  }
  // Near field: u'' times the second moment, plus the endpoint correction of
  // the trapezoid rule started at rho.
  const double moment = second_moment(kernel, rho_) + h * h / 12.0 * moment_slope(kernel, rho_);
  weights_[1] += moment / (h * h);

  tails_.assign(L + 2, 0.0);
  tails_[L + 1] = 0.5 * tail_mass(kernel, (static_cast<double>(L) + 0.5) * h, opts.abs_tol);
  for (std::size_t m = L; m >= 1; --m) tails_[m] = tails_[m + 1] + weights_[m];

  for (double w : weights_) {
    if (!std::isfinite(w)) throw Error("non-finite kernel moment in operator weights");
  }
  if (!std::isfinite(tails_[1])) throw Error("non-finite kernel tail in operator weights");

  reach_ = L;
  if (opts.far_field_cutoff) {
    const double cutoff = *opts.far_field_cutoff;
    if (!(cutoff > 0.0)) throw InvalidArgument("far_field_cutoff must be positive");
    const double cells = std::floor(cutoff / h + 1e-9);
    reach_ = std::clamp<std::size_t>(static_cast<std::size_t>(std::min(cells, static_cast<double>(L))), 1, L);
  }
}

double apply_operator(const OperatorWeights& weights, const Profile& profile, std::size_t i) {
  require_matching(weights, profile);
  require_interior(profile, i);
  const auto& v = profile.values();
  const double left = profile.left();
  const double right = profile.right();
  const double u = v[i];
  const auto c = static_cast<std::ptrdiff_t>(i);
  const std::size_t reach = weights.operator_reach();
  double sum = 0.0;
  for (std::size_t m = 1; m <= reach; ++m) {
    const auto d = static_cast<std::ptrdiff_t>(m);
    const double delta = (extended(v, c + d, left, right) - u) + (extended(v, c - d, left, right) - u);
    sum += weights.weight(m) * delta;
  }
  sum += weights.tail(reach + 1) * ((right - u) + (left - u));
  return sum;
}

double apply_operator(const KernelSpec& kernel, const Profile& profile, double x,
                      const QuadratureOptions& opts) {
  const std::size_t i = profile.node_index(x);
  require_interior(profile, i);
  const OperatorWeights weights(kernel, profile.spacing(), profile.size(), opts);
  return apply_operator(weights, profile, i);
}

std::vector<double> apply_operator_all(const OperatorWeights& weights, const Profile& profile) {
  require_matching(weights, profile);
  std::vector<double> out(profile.size(), 0.0);
  parallel_for(1, profile.size() - 1,
               [&](std::size_t i) { out[i] = apply_operator(weights, profile, i); });
  return out;
}

double residual(const KernelSpec& kernel, const Potential& potential, const Profile& profile,
                const QuadratureOptions& opts) {
  const std::size_t n = profile.size();
  if (n < 5) throw InvalidArgument("residual needs at least three interior nodes");
  const OperatorWeights weights(kernel, profile.spacing(), n, opts);
  std::vector<double> local(n, 0.0);
  parallel_for(2, n - 2, [&](std::size_t i) {
    local[i] = std::abs(apply_operator(weights, profile, i) - potential.w_prime(profile[i]));
  });
  return *std::max_element(local.begin(), local.end());
}

EnergyBreakdown energy(const OperatorWeights& weights, const Potential& potential,
                       const Profile& profile, std::pair<double, double> interval) {
  require_matching(weights, profile);
  std::size_t ia = 0;
  std::size_t ib = 0;
  try {
    ia = profile.node_index(interval.first);
    ib = profile.node_index(interval.second);
  } catch (const InvalidArgument&) {
    throw InvalidArgument("energy interval must be aligned to grid nodes");
  }
  if (!(ia < ib)) throw InvalidArgument("energy interval must satisfy a < b");

  const std::size_t n = profile.size();
  const auto& v = profile.values();
  const double left = profile.left();
  const double right = profile.right();
  auto theta = [&](std::size_t j) {
    if (j < ia || j > ib) return 0.0;
    return (j == ia || j == ib) ? 0.5 : 1.0;
  };

  std::vector<double> inner(n, 0.0);
  std::vector<double> outer(n, 0.0);
  parallel_for(ia, ib + 1, [&](std::size_t i) {
    const double u = v[i];
    double in_sum = 0.0;
    double out_sum = 0.0;
    // Ascending offsets, left neighbour before right neighbour.
    for (std::size_t m = 1; m < n; ++m) {
      const double a = weights.weight(m);
      for (int side = 0; side < 2; ++side) {
        if (side == 0 && m > i) continue;
        if (side == 1 && i + m >= n) continue;
        const std::size_t j = side == 0 ? i - m : i + m;
        const double diff = u - v[j];
        const double q = a * diff * diff;
        const double t = theta(j);
        in_sum += t * q;
        out_sum += (1.0 - t) * q;
      }
    }
    const double dl = u - left;
    const double dr = u - right;
    out_sum += weights.tail(i + 1) * dl * dl + weights.tail(n - i) * dr * dr;
    inner[i] = in_sum;
    outer[i] = out_sum;
  });

  const double h = weights.spacing();
  EnergyBreakdown e;
  double pot = 0.0;
  double in_total = 0.0;
  double out_total = 0.0;
  for (std::size_t i = ia; i <= ib; ++i) {
    const double t = theta(i);
    in_total += t * inner[i];
    out_total += t * outer[i];
    pot += t * potential.w(v[i]);
  }
  e.interior = 0.25 * h * in_total;
  e.cross = 0.5 * h * out_total;
  e.potential = h * pot;
  e.total = e.interior + e.cross + e.potential;
  return e;
}

EnergyBreakdown energy(const KernelSpec& kernel, const Potential& potential,
                       const Profile& profile, std::pair<double, double> interval,
                       const QuadratureOptions& opts) {
  QuadratureOptions full = opts;
  full.far_field_cutoff.reset();
  const OperatorWeights weights(kernel, profile.spacing(), profile.size(), full);
  return energy(weights, potential, profile, interval);
}

double beta_density(const OperatorWeights& weights, const Potential& potential,
                    const Profile& profile, std::size_t i) {
  require_matching(weights, profile);
  require_interior(profile, i);
  const auto& v = profile.values();
  const double left = profile.left();
  const double right = profile.right();
  const double u = v[i];
  const auto c = static_cast<std::ptrdiff_t>(i);
  const std::size_t L = weights.max_offset();
  double sum = 0.0;
  for (std::size_t m = 1; m <= L; ++m) {
    const auto d = static_cast<std::ptrdiff_t>(m);
    const double dl = extended(v, c - d, left, right) - u;
    const double dr = extended(v, c + d, left, right) - u;
    sum += weights.weight(m) * (dl * dl + dr * dr);
  }
  sum += weights.tail(L + 1) * ((left - u) * (left - u) + (right - u) * (right - u));
  return 0.25 * sum + potential.w(u);
}

double beta_density(const KernelSpec& kernel, const Potential& potential,
                    const Profile& profile, double t, const QuadratureOptions& opts) {
  const std::size_t i = profile.node_index(t);
  require_interior(profile, i);
  QuadratureOptions full = opts;
  full.far_field_cutoff.reset();
  const OperatorWeights weights(kernel, profile.spacing(), profile.size(), full);
  return beta_density(weights, potential, profile, i);
}

double tail_interaction(const KernelSpec& kernel, const Profile& profile, double R,
                        const QuadratureOptions& opts) {
  if (!(R > 0.0) || R > profile.half_width() * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "tail_interaction requires 0 < R <= M, got R = " << R;
    throw InvalidArgument(msg.str());
  }
  const Potential none = scaled(quartic(), 0.0);
  return 2.0 * energy(kernel, none, profile, {-R, R}, opts).cross;
}

}  // namespace nlac
