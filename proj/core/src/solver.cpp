#include "nlac/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "nlac/parallel.hpp"
#include "toeplitz.hpp"

namespace nlac {
namespace {

constexpr double kMonotoneSlack = 1e-12;
constexpr double kArmijo = 1e-4;
constexpr int kMaxHalvings = 60;
constexpr int kRefreshEvery = 50;

double projected_norm(const std::vector<double>& u, const std::vector<double>& g) {
  double norm = 0.0;
  for (std::size_t i = 1; i + 1 < u.size(); ++i) {
    norm = std::max(norm, std::abs(std::clamp(u[i] - g[i], -1.0, 1.0) - u[i]));
  }
  return norm;
}

// W(u + d) - W(u) without cancellation for small d.
double potential_increment(const Potential& w, double u, double d) {
  if (std::abs(d) < 1e-4) {
    const double w2 = w.w_second(u);
    return d * (w.w_prime(u) + 0.5 * w2 * d + (w.w_second(u + d) - w2) * d / 6.0);
  }
  return w.w(u + d) - w.w(u);
}

double max_curvature(const Potential& w) {
  double c = 0.0;
  for (int k = 0; k <= 200; ++k) c = std::max(c, std::abs(w.w_second(-1.0 + 0.01 * k)));
  return c;
}

// Interaction part of the gradient, -L_h u at every node (zero at the ends).
class InteractionGradient {
 public:
  InteractionGradient(const OperatorWeights& weights, double left, double right)
      : weights_(weights), toeplitz_(weights.weights(), weights.nodes()), left_(left),
        right_(right) {}

  // -L_h u_i = 2 T_1 u_i - sum_{j != i} a_{|i-j|} u_j - right T_{n-i} - left T_{i+1}.
  void full(const std::vector<double>& u, std::vector<double>& out) {
    toeplitz_.apply(u, conv_);
    const std::size_t n = u.size();
    out.assign(n, 0.0);
    const double t1 = weights_.tail(1);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      out[i] = 2.0 * t1 * u[i] - conv_[i] - right_ * weights_.tail(n - i) -
               left_ * weights_.tail(i + 1);
    }
  }

  // A d for a direction d vanishing at the end nodes.
  void linear(const std::vector<double>& d, std::vector<double>& out) {
    toeplitz_.apply(d, conv_);
    const std::size_t n = d.size();
    out.assign(n, 0.0);
    const double t1 = weights_.tail(1);
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = 2.0 * t1 * d[i] - conv_[i];
  }

 private:
  const OperatorWeights& weights_;
  detail::SymmetricToeplitz toeplitz_;
  double left_;
  double right_;
  std::vector<double> conv_;
};

Profile initial_profile(double M, double h, const SolveOptions& opts) {
  switch (opts.init) {
    case InitKind::linear_clip: return make_linear_init(M, h);
    case InitKind::tanh: return make_tanh_init(M, h);
    case InitKind::custom:
      if (!opts.custom_init) throw InvalidArgument("init = custom needs a custom profile");
      return resample(*opts.custom_init, M, h);
  }
  return make_tanh_init(M, h);
}

void require_solve_grid(double M, double h) {
  if (!(M >= 5.0)) throw InvalidArgument("M must be >= 5");
  if (!(h > 0.0) || h > M / 20.0 * (1.0 + 1e-12)) throw InvalidArgument("h must be < M/20");
}

}  // namespace

std::string_view to_string(StepRule rule) {
  return rule == StepRule::fixed ? "fixed" : "adaptive-secant";
}

std::string_view to_string(InitKind init) {
  switch (init) {
    case InitKind::linear_clip: return "linear-clip";
    case InitKind::tanh: return "tanh";
    case InitKind::custom: return "custom";
  }
  return "custom";
}

StepRule parse_step_rule(std::string_view text) {
  if (text == "fixed") return StepRule::fixed;
  if (text == "adaptive-secant") return StepRule::adaptive_secant;
  throw InvalidArgument("unknown step rule '" + std::string(text) + "'");
}

InitKind parse_init(std::string_view text) {
  if (text == "linear-clip") return InitKind::linear_clip;
  if (text == "tanh") return InitKind::tanh;
  if (text == "custom") return InitKind::custom;
  throw InvalidArgument("unknown init '" + std::string(text) + "'");
}

void inspect(SolveReport& r) {
  const Profile& p = r.profile;
  const auto& v = p.values();
  const std::size_t n = v.size();
  r.monotone = true;
  r.interior_strict = true;
  r.odd_defect = 0.0;
  double lo = v[1];
  double hi = v[1];
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 < n && v[i + 1] < v[i] - kMonotoneSlack) r.monotone = false;
    if (i > 0 && i + 1 < n) {
      if (!(std::abs(v[i]) < 1.0)) r.interior_strict = false;
      lo = std::min(lo, v[i]);
      hi = std::max(hi, v[i]);
    }
    r.odd_defect = std::max(r.odd_defect, std::abs(v[i] + v[n - 1 - i]));
  }
  r.no_transition = hi - lo < 1e-8;
  const double M = p.half_width();
  r.left_limit_defect = std::abs(p(-0.9 * M) - p.left());
  r.right_limit_defect = std::abs(p(0.9 * M) - p.right());
}

SolveReport solve_dirichlet(const KernelSpec& kernel, const Potential& potential, double M,
                            double h, const SolveOptions& opts) {
  require_solve_grid(M, h);
  if (opts.max_iters < 1) throw InvalidArgument("max_iters must be >= 1");
  if (!(opts.grad_tol > 0.0)) throw InvalidArgument("grad_tol must be positive");

  Profile start = initial_profile(M, h, opts);
  const std::size_t n = start.size();
  const double hs = start.spacing();
  QuadratureOptions quad = opts.quadrature;
  quad.far_field_cutoff.reset();
  const OperatorWeights weights(kernel, hs, n, quad);

  SolveReport report{start};
  const double e0 = energy(weights, potential, start, {-M, M}).total;
  if (!std::isfinite(e0)) throw Error("non-finite energy at the initial guess");

  InteractionGradient interaction(weights, start.left(), start.right());
  std::vector<double> u = start.values();
  std::vector<double> gi;  // interaction gradient
  std::vector<double> g(n, 0.0);
  interaction.full(u, gi);
  auto total_gradient = [&](const std::vector<double>& interaction_part,
                            const std::vector<double>& x, std::vector<double>& out) {
    out.assign(n, 0.0);
    parallel_for(1, n - 1, [&](std::size_t i) {
      out[i] = interaction_part[i] + potential.w_prime(x[i]);
    });
  };
  total_gradient(gi, u, g);

  const double fixed_step = 1.0 / (4.0 * weights.tail(1) + max_curvature(potential));
  double step = fixed_step;
  double current = e0;
  report.energy_history.push_back(e0);

  std::vector<double> d(n, 0.0), ad, g_new, u_new(n);
  double norm = projected_norm(u, g);
  int iter = 0;
  std::string failure;
  while (norm > opts.grad_tol) {
    if (iter >= opts.max_iters) {
      failure = "max_iters exceeded";
      break;
    }
    double trial = step;
    double decrease = 0.0;
    bool accepted = false;
    for (int halving = 0; halving <= kMaxHalvings; ++halving) {
      double slope = 0.0;
      for (std::size_t i = 1; i + 1 < n; ++i) {
        d[i] = std::clamp(u[i] - trial * g[i], -1.0, 1.0) - u[i];
        slope += g[i] * d[i];
      }
      interaction.linear(d, ad);
      double quad_part = 0.0;
      double pot_part = 0.0;
      for (std::size_t i = 1; i + 1 < n; ++i) {
        quad_part += d[i] * (gi[i] + 0.5 * ad[i]);
        pot_part += potential_increment(potential, u[i], d[i]);
      }
      decrease = hs * (quad_part + pot_part);
      if (decrease <= kArmijo * hs * slope) {
        accepted = true;
        break;
      }
      trial *= 0.5;
    }
    if (!accepted) {
      failure = "line search stalled";
      break;
    }
    ++iter;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      u_new[i] = u[i] + d[i];
      gi[i] += ad[i];
    }
    u_new.front() = u.front();
    u_new.back() = u.back();
    u.swap(u_new);
    if (iter % kRefreshEvery == 0) interaction.full(u, gi);
    total_gradient(gi, u, g_new);

    if (opts.step_rule == StepRule::adaptive_secant) {
      double ss = 0.0;
      double sy = 0.0;
      for (std::size_t i = 1; i + 1 < n; ++i) {
        ss += d[i] * d[i];
        sy += d[i] * (g_new[i] - g[i]);
      }
      step = sy > 0.0 ? std::clamp(ss / sy, 1e-3 * fixed_step, 1e6 * fixed_step) : fixed_step;
    } else {
      step = fixed_step;
    }
    g.swap(g_new);
    current += decrease;
    report.energy_history.push_back(current);
    norm = projected_norm(u, g);
  }

  report.profile = Profile(M, h, u, start.boundary());
  report.iterations = iter;
  report.final_gradient_norm = norm;
  report.converged = failure.empty();
  report.energy = energy(weights, potential, report.profile, {-M, M}).total;
  report.el_residual = residual(kernel, potential, report.profile, opts.quadrature);
  inspect(report);
  if (!report.converged) {
    std::ostringstream msg;
    msg << failure << " after " << iter << " iterations (projected gradient " << norm << ")";
    throw SolveFailed(msg.str(), std::move(report));
  }
  return report;
}

SolveReport solve_layer(const KernelSpec& kernel, const Potential& potential,
                        std::span<const double> M_list, double h, const SolveOptions& opts) {
  if (M_list.size() < 2) throw InvalidArgument("M_list needs at least two entries");
  for (std::size_t k = 1; k < M_list.size(); ++k) {
    if (!(M_list[k] > M_list[k - 1])) throw InvalidArgument("M_list must be increasing");
  }
  for (double M : M_list) require_solve_grid(M, h);

  SolveOptions level = opts;
  std::optional<SolveReport> previous;
  for (double M : M_list) {
    if (previous) {
      level.init = InitKind::custom;
      level.custom_init = previous->profile;
    }
    previous = solve_dirichlet(kernel, potential, M, h, level);
  }
  SolveReport out = std::move(*previous);
  out.profile = center(out.profile);
  inspect(out);
  return out;
}

double translation_distance(const Profile& p1, const Profile& p2) {
  const double c1 = zero_crossing(p1);
  const double c2 = zero_crossing(p2);
  const double M2 = p2.half_width();
  auto distance = [&](double tau) {
    double sup = 0.0;
    for (std::size_t i = 0; i < p1.size(); ++i) {
      const double x = p1.x(i);
      const double y = x - tau;
      if (y < -M2 || y > M2) continue;
      sup = std::max(sup, std::abs(p1[i] - p2(y)));
    }
    return sup;
  };
  const double width = 2.0 * std::max(p1.spacing(), p2.spacing());
  double a = c1 - c2 - width;
  double b = c1 - c2 + width;
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = distance(x1);
  double f2 = distance(x2);
  for (int k = 0; k < 200 && b - a > 1e-14 * std::max(1.0, std::abs(a)); ++k) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = distance(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = distance(x2);
    }
  }
  return std::min({f1, f2, distance(0.5 * (a + b))});
}

void write_report(const SolveReport& r, std::ostream& out) {
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "converged=" << (r.converged ? "true" : "false") << '\n'
      << "iterations=" << r.iterations << '\n'
      << "final_gradient_norm=" << num(r.final_gradient_norm) << '\n'
      << "el_residual=" << num(r.el_residual) << '\n'
      << "monotone=" << (r.monotone ? "true" : "false") << '\n'
      << "odd_defect=" << num(r.odd_defect) << '\n'
      << "interior_strict=" << (r.interior_strict ? "true" : "false") << '\n'
      << "no_transition=" << (r.no_transition ? "true" : "false") << '\n'
      << "energy=" << num(r.energy) << '\n'
      << "M=" << num(r.profile.half_width()) << '\n'
      << "h=" << num(r.profile.spacing()) << '\n'
      << "left_limit_defect=" << num(r.left_limit_defect) << '\n'
      << "right_limit_defect=" << num(r.right_limit_defect) << '\n';
}

}  // namespace nlac
