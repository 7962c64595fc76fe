#include "nlac/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "nlac/error.hpp"

namespace nlac {
namespace {

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("fit needs at least two distinct abscissae");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

void require_increasing(std::span<const double> R_list, const char* what) {
  if (R_list.size() < 2) throw InvalidArgument(std::string(what) + ": R_list needs two entries");
  for (std::size_t k = 1; k < R_list.size(); ++k) {
    if (!(R_list[k] > R_list[k - 1])) {
      throw InvalidArgument(std::string(what) + ": R_list must be increasing");
    }
  }
}

std::size_t upper_half_start(std::size_t count) { return count / 2; }

bool crosses_zero(const Profile& p) {
  const auto [lo, hi] = std::minmax_element(p.values().begin(), p.values().end());
  return *lo < 0.0 && *hi > 0.0;
}

}  // namespace

double psi_s(double s, double R) {
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("psi_s needs s in (0,1)");
  if (!(R > 1.0)) throw InvalidArgument("psi_s needs R > 1");
  if (s < 0.5) return std::pow(R, 1.0 - 2.0 * s);
  if (s == 0.5) return std::log(R);
  return 1.0;
}

FitReport fit_decay(const Profile& profile, std::pair<double, double> window,
                    DecayQuantity quantity) {
  const double M = profile.half_width();
  if (!(window.first > 0.0 && window.second > window.first && window.second < M)) {
    throw InvalidArgument("decay window must satisfy 0 < a < b < M");
  }
  std::vector<double> xs;
  std::vector<double> qs;
  const double h = profile.spacing();
  for (std::size_t i = 1; i + 1 < profile.size(); ++i) {
    const double x = profile.x(i);
    if (x < window.first - 1e-9 * h || x > window.second + 1e-9 * h) continue;
    const double q = quantity == DecayQuantity::one_minus_u
                         ? 1.0 - profile[i]
                         : (profile[i + 1] - profile[i - 1]) / (2.0 * h);
    if (!(q > 0.0)) {
      std::ostringstream msg;
      msg << "nonpositive sample at x = " << x << "; shrink the window";
      throw InvalidArgument(msg.str());
    }
    xs.push_back(x);
    qs.push_back(q);
  }
  if (xs.size() < 2) throw InvalidArgument("decay window contains fewer than two nodes");

  std::vector<double> lx(xs.size());
  std::vector<double> lq(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    lx[i] = std::log(xs[i]);
    lq[i] = std::log(qs[i]);
  }
  const Line line = least_squares(lx, lq);
  FitReport fit;
  fit.model = "power";
  fit.exponent = line.slope;
  fit.constant = std::exp(line.intercept);
  fit.window = window;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double fitted = fit.constant * std::pow(xs[i], fit.exponent);
    fit.samples.push_back({xs[i], qs[i], fitted});
    fit.max_rel_residual = std::max(fit.max_rel_residual, std::abs(qs[i] - fitted) / qs[i]);
  }
  return fit;
}

EnergyGrowth fit_energy_growth(const KernelSpec& kernel, const Potential& potential,
                               const Profile& profile, std::span<const double> R_list) {
  require_increasing(R_list, "fit_energy_growth");
  const double M = profile.half_width();
  if (!(R_list.front() > 1.0) || R_list.back() > 0.9 * M * (1.0 + 1e-12)) {
    throw InvalidArgument("fit_energy_growth: R_list must lie in (1, 0.9M]");
  }
  const OperatorWeights weights(kernel, profile.spacing(), profile.size());
  const double s = kernel.s();

  EnergyGrowth out;
  for (double R : R_list) {
    const double e = energy(weights, potential, profile, {-R, R}).total;
    out.R.push_back(R);
    out.energy.push_back(e);
    out.ratio.push_back(e / psi_s(s, R));
  }
  const std::size_t first = upper_half_start(out.R.size());
  out.G_lower = *std::min_element(out.ratio.begin() + static_cast<std::ptrdiff_t>(first), out.ratio.end());
  out.G_upper = *std::max_element(out.ratio.begin() + static_cast<std::ptrdiff_t>(first), out.ratio.end());

  FitReport& fit = out.fit;
  fit.window = {R_list.front(), R_list.back()};
  std::vector<double> lx(out.R.size());
  std::vector<double> ly(out.R.size());
  const bool log_model = s == 0.5;
  for (std::size_t k = 0; k < out.R.size(); ++k) {
    lx[k] = std::log(out.R[k]);
    if (!log_model && !(out.energy[k] > 0.0)) {
      throw InvalidArgument("fit_energy_growth: energy must be positive for a power fit");
    }
    ly[k] = log_model ? out.energy[k] : std::log(out.energy[k]);
  }
  const Line line = least_squares(lx, ly);
  fit.model = log_model ? "log" : "power";
  fit.exponent = line.slope;
  fit.constant = log_model ? line.intercept : std::exp(line.intercept);
  for (std::size_t k = 0; k < out.R.size(); ++k) {
    const double fitted = log_model ? fit.constant + fit.exponent * lx[k]
                                    : fit.constant * std::pow(out.R[k], fit.exponent);
    fit.samples.push_back({out.R[k], out.energy[k], fitted});
    if (out.energy[k] != 0.0) {
      fit.max_rel_residual =
          std::max(fit.max_rel_residual, std::abs(out.energy[k] - fitted) / std::abs(out.energy[k]));
    }
  }
  return out;
}

LambdaLimit lambda_star_limit(const KernelSpec& kernel, const Potential& potential,
                              const Profile& profile, std::span<const double> R_list) {
  if (kernel.s() != 0.5) {
    throw InvalidArgument("the R beta(R) limit is defined for s = 1/2 only");
  }
  require_increasing(R_list, "lambda_star_limit");
  const double M = profile.half_width();
  if (!(R_list.front() > 0.0) || R_list.back() > 0.8 * M * (1.0 + 1e-12)) {
    throw InvalidArgument("lambda_star_limit: R_list must lie in (0, 0.8M]");
  }
  const Profile p = crosses_zero(profile) ? center(profile) : profile;
  const OperatorWeights weights(kernel, p.spacing(), p.size());

  LambdaLimit out;
  std::vector<double> inv;
  for (double R : R_list) {
    const double right = beta_density(weights, potential, p, p.node_index(R));
    const double left = beta_density(weights, potential, p, p.node_index(-R));
    out.R.push_back(R);
    out.value.push_back(R * 0.5 * (right + left));
    inv.push_back(1.0 / R);
  }
  const Line line = least_squares(inv, out.value);
  out.limit = line.intercept;
  out.slope = line.slope;
  return out;
}

bool log_lower_bound_check(const KernelSpec& kernel, const Potential& potential,
                           const Profile& profile, std::span<const double> R_list) {
  if (kernel.s() != 0.5) throw InvalidArgument("log lower bound applies to s = 1/2 only");
  if (!validate(kernel, 64, 0).K2prime) {
    throw InvalidArgument("log lower bound needs a kernel bounded below everywhere");
  }
  const EnergyGrowth growth = fit_energy_growth(kernel, potential, profile, R_list);
  const std::size_t first = upper_half_start(growth.R.size());
  if (growth.R.size() - first < 2) throw InvalidArgument("R_list too short");
  std::vector<double> lx;
  std::vector<double> e;
  for (std::size_t k = first; k < growth.R.size(); ++k) {
    lx.push_back(std::log(growth.R[k]));
    e.push_back(growth.energy[k]);
  }
  const Line line = least_squares(lx, e);
  return growth.G_lower > 1e-12 && line.slope > 0.0;
}

void write_fit_csv(const FitReport& fit, std::ostream& out) {
  out << "x,measured,fitted\n";
  char line[128];
  for (const auto& s : fit.samples) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", s.x, s.measured, s.fitted);
    out << line;
  }
}

}  // namespace nlac
