#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "nlac/kernels.hpp"
#include "nlac/potentials.hpp"
#include "nlac/profiles.hpp"

namespace nlac {

/// Contributions to E_K(u, [a, b]) in the 1/4 convention:
/// interior = 1/4 of the double integral over [a,b]^2, cross = 1/2 of the
/// integral over [a,b] x complement, potential = integral of W(u) over [a,b].
struct EnergyBreakdown {
  double interior = 0.0;
  double cross = 0.0;
  double potential = 0.0;
  double total = 0.0;
};

struct QuadratureOptions {
  /// Radius below which u(x+z)+u(x-z)-2u(x) is replaced by u''(x) z^2.
  /// Rounded to a whole number of cells; defaults to 2h.
  std::optional<double> near_field_radius;
  /// Offsets beyond this distance see the boundary constants instead of grid
  /// values. Defaults to the full grid span 2M (no approximation). Only the
  /// operator and the residual honour smaller values.
  std::optional<double> far_field_cutoff;
  double abs_tol = 1e-10;
};

/// Translation-invariant weights a_m of the discrete operator on a grid of
/// spacing h:
///   L_h u_i = sum_{m>=1} a_m [(u_{i+m} - u_i) + (u_{i-m} - u_i)],
/// with grid values replaced by the boundary constants off the grid. The
/// first offset carries the near-field second-moment mass.
class OperatorWeights {
 public:
  OperatorWeights(const KernelSpec& kernel, double h, std::size_t nodes,
                  const QuadratureOptions& opts = {});

  double spacing() const noexcept { return h_; }
  std::size_t nodes() const noexcept { return nodes_; }
  /// Largest offset with an explicit weight (nodes - 1).
  std::size_t max_offset() const noexcept { return weights_.size() - 1; }
  /// Number of offsets summed against grid values by the operator.
  std::size_t operator_reach() const noexcept { return reach_; }
  double near_field_radius() const noexcept { return rho_; }
  /// a_m for 1 <= m <= max_offset().
  double weight(std::size_t m) const { return weights_[m]; }
  /// T_m = sum_{m' >= m} a_{m'} for 1 <= m <= max_offset() + 1.
  double tail(std::size_t m) const { return tails_[m]; }
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  double h_;
  std::size_t nodes_;
  std::size_t reach_;
  double rho_;
  std::vector<double> weights_;  // index 0 unused
  std::vector<double> tails_;    // index 0 unused, size max_offset() + 2
};

/// Checks that the kernel is one-dimensional with s in [0.05, 0.95].
void require_operator_kernel(const KernelSpec& kernel);

/// L_K u at node i (0 < i < size-1).
double apply_operator(const OperatorWeights& weights, const Profile& profile, std::size_t i);
/// L_K u at the interior grid node x.
double apply_operator(const KernelSpec& kernel, const Profile& profile, double x,
                      const QuadratureOptions& opts = {});
/// L_K u at every node (boundary entries are zero).
std::vector<double> apply_operator_all(const OperatorWeights& weights, const Profile& profile);

/// sup |L_K u - W'(u)| over nodes at distance >= 2h from the boundary.
double residual(const KernelSpec& kernel, const Potential& potential, const Profile& profile,
                const QuadratureOptions& opts = {});

/// E_K(u, [a, b]) for grid-aligned a < b inside [-M, M].
EnergyBreakdown energy(const KernelSpec& kernel, const Potential& potential,
                       const Profile& profile, std::pair<double, double> interval,
                       const QuadratureOptions& opts = {});
EnergyBreakdown energy(const OperatorWeights& weights, const Potential& potential,
                       const Profile& profile, std::pair<double, double> interval);

/// beta(t) = 1/4 int |u(x) - u(t)|^2 K(x - t) dx + W(u(t)) at an interior node t.
double beta_density(const KernelSpec& kernel, const Potential& potential,
                    const Profile& profile, double t, const QuadratureOptions& opts = {});
double beta_density(const OperatorWeights& weights, const Potential& potential,
                    const Profile& profile, std::size_t i);

/// Integral over [-R, R] x (R \ [-R, R]) of |u(x) - u(y)|^2 K(x - y), 0 < R <= M.
double tail_interaction(const KernelSpec& kernel, const Profile& profile, double R,
                        const QuadratureOptions& opts = {});

}  // namespace nlac
