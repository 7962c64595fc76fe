#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nlac/kernels.hpp"
#include "nlac/nonlocal.hpp"
#include "nlac/potentials.hpp"
#include "nlac/profiles.hpp"

namespace nlac {

struct FitSample {
  double x = 0.0;
  double measured = 0.0;
  double fitted = 0.0;
};

/// Least-squares fit. For model "power": measured ~ constant * x^exponent
/// (fitted in log-log). For model "log": measured ~ constant + exponent * log x.
struct FitReport {
  std::string model = "power";
  double exponent = 0.0;
  double constant = 0.0;
  std::pair<double, double> window{0.0, 0.0};
  double max_rel_residual = 0.0;
  std::vector<FitSample> samples;
};

/// R^{1-2s} for s < 1/2, log R for s == 1/2 (exact comparison), 1 for s > 1/2.
double psi_s(double s, double R);

enum class DecayQuantity { one_minus_u, derivative };

/// Power-law fit of 1 - u(x) or u'(x) (centered difference) over the grid
/// nodes in window, 0 < window.first < window.second < M.
FitReport fit_decay(const Profile& profile, std::pair<double, double> window,
                    DecayQuantity quantity);

struct EnergyGrowth {
  /// Power fit of E(R) against R (log model when s == 1/2).
  FitReport fit;
  std::vector<double> R;
  std::vector<double> energy;
  std::vector<double> ratio;  ///< E(R) / psi_s(R)
  /// min and max of ratio over the largest half of R_list.
  double G_lower = 0.0;
  double G_upper = 0.0;
};

/// E_K(u, [-R, R]) for R in R_list (increasing, within (1, 0.9M], grid aligned).
EnergyGrowth fit_energy_growth(const KernelSpec& kernel, const Potential& potential,
                               const Profile& profile, std::span<const double> R_list);

struct LambdaLimit {
  std::vector<double> R;
  std::vector<double> value;  ///< R (beta(R) + beta(-R)) / 2
  double limit = 0.0;         ///< a in the fit a + b/R
  double slope = 0.0;         ///< b
};

/// Extrapolates R beta(R) for s == 1/2 kernels. The profile is centered first
/// when it changes sign. R_list increasing within (0, 0.8M].
LambdaLimit lambda_star_limit(const KernelSpec& kernel, const Potential& potential,
                              const Profile& profile, std::span<const double> R_list);

/// Whether E(R) / log R stays above a positive constant (and E keeps growing in
/// log R) over the largest half of R_list. Requires s == 1/2 and a kernel
/// bounded below everywhere.
bool log_lower_bound_check(const KernelSpec& kernel, const Potential& potential,
                           const Profile& profile, std::span<const double> R_list);

/// CSV `x,measured,fitted` with 17 significant digits.
void write_fit_csv(const FitReport& fit, std::ostream& out);

}  // namespace nlac
