#include "nlac_cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "nlac/asymptotics.hpp"
#include "nlac/parallel.hpp"
#include "nlac/reduction.hpp"

namespace nlac::cli {
namespace {

namespace fs = std::filesystem;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ostream& out_of(const CommandContext& ctx) { return ctx.out ? *ctx.out : std::cout; }
std::ostream& err_of(const CommandContext& ctx) { return ctx.err ? *ctx.err : std::cerr; }

std::ofstream open_output(const fs::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write " + path.string());
  return file;
}

/// The one-dimensional kernel the layer lives on: the configured kernel for
/// dim 1, its reduction otherwise.
KernelSpec layer_kernel(const RunConfig& config) {
  KernelSpec kernel = build_kernel(config);
  if (kernel.dim() == 1) return kernel;
  return reduce_kernel(kernel, kernel.dim()).reduced_kernel;
}

Profile load_profile(const CommandContext& ctx) {
  const fs::path path = ctx.profile ? *ctx.profile : ctx.config.output_dir / "profile.csv";
  return load_csv(path);
}

std::vector<double> default_R_list(double M) {
  std::vector<double> R{5.0};
  while (R.back() * 2.0 <= 0.9 * M) R.push_back(R.back() * 2.0);
  return R;
}

/// Rounds every entry to the nearest node and drops the ones outside (lo, hi].
std::vector<double> grid_R_list(const std::vector<double>& R_list, double h, double lo,
                                double hi) {
  std::vector<double> out;
  for (double R : R_list) {
    const double snapped = std::round(R / h) * h;
    if (snapped > lo && snapped <= hi * (1.0 + 1e-12) &&
        (out.empty() || snapped > out.back())) {
      out.push_back(snapped);
    }
  }
  return out;
}

template <class F>
int guarded(const CommandContext& ctx, F&& body) {
  try {
    validate_config(ctx.config);
    fs::create_directories(ctx.config.output_dir);
    return body();
  } catch (const InvalidArgument& e) {
    err_of(ctx) << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const fs::filesystem_error& e) {
    err_of(ctx) << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err_of(ctx) << "error: " << e.what() << '\n';
    return kInputError;
  }
}

void write_solve_outputs(const SolveReport& report, const fs::path& dir) {
  save_csv(report.profile, dir / "profile.csv");
  auto file = open_output(dir / "solve_report.txt");
  write_report(report, file);
}

}  // namespace

int cmd_solve(const CommandContext& ctx) {
  return guarded(ctx, [&] {
    const RunConfig& c = ctx.config;
    const KernelSpec kernel = layer_kernel(c);
    const Potential potential = build_potential(c);
    const fs::path dir = c.output_dir;
    try {
      SolveReport report = c.M_list.size() >= 2
                               ? solve_layer(kernel, potential, c.M_list, c.h, c.solver)
                               : solve_dirichlet(kernel, potential, c.M, c.h, c.solver);
      write_solve_outputs(report, dir);
      out_of(ctx) << "converged after " << report.iterations << " iterations, energy "
                  << num(report.energy) << ", residual " << num(report.el_residual) << '\n';
      return static_cast<int>(kSuccess);
    } catch (const SolveFailed& e) {
      write_solve_outputs(e.report(), dir);
      err_of(ctx) << "not converged: " << e.what() << '\n';
      return static_cast<int>(kNotConverged);
    }
  });
}

int cmd_analyze(const CommandContext& ctx) {
  return guarded(ctx, [&] {
    const RunConfig& c = ctx.config;
    const Profile profile = load_profile(ctx);
    const KernelSpec kernel = layer_kernel(c);
    const Potential potential = build_potential(c);
    const double M = profile.half_width();
    const double h = profile.spacing();
    const fs::path dir = c.output_dir;
    std::ostream& out = out_of(ctx);

    {
      auto file = open_output(dir / "decay_fit.csv");
      const FitReport one_minus = fit_decay(profile, c.decay_window, DecayQuantity::one_minus_u);
      const FitReport slope = fit_decay(profile, c.decay_window, DecayQuantity::derivative);
      file << "# one_minus_u exponent=" << num(one_minus.exponent)
           << " constant=" << num(one_minus.constant) << '\n'
           << "# derivative exponent=" << num(slope.exponent) << " constant=" << num(slope.constant)
           << '\n'
           << "quantity,x,measured,fitted\n";
      for (const auto* fit : {&one_minus, &slope}) {
        const char* name = fit == &one_minus ? "one_minus_u" : "derivative";
        for (const auto& sample : fit->samples) {
          file << name << ',' << num(sample.x) << ',' << num(sample.measured) << ','
               << num(sample.fitted) << '\n';
        }
      }
      out << "decay: 1-u ~ x^" << num(one_minus.exponent) << ", u' ~ x^" << num(slope.exponent)
          << '\n';
    }

    const std::vector<double> requested = c.R_list.empty() ? default_R_list(M) : c.R_list;
    {
      const auto R = grid_R_list(requested, h, 1.0, 0.9 * M);
      if (R.size() < 2) throw InvalidArgument("analysis.R_list needs two radii in (1, 0.9M]");
      const EnergyGrowth growth = fit_energy_growth(kernel, potential, profile, R);
      auto file = open_output(dir / "energy_growth.csv");
      file << "# model=" << growth.fit.model << " exponent=" << num(growth.fit.exponent)
           << " constant=" << num(growth.fit.constant) << " G_lower=" << num(growth.G_lower)
           << " G_upper=" << num(growth.G_upper) << '\n';
      if (kernel.s() == 0.5 && validate(kernel, 64, 0).K2prime) {
        const bool bounded = log_lower_bound_check(kernel, potential, profile, R);
        file << "# log_lower_bound=" << (bounded ? "true" : "false") << '\n';
      }
      file << "R,energy,ratio\n";
      for (std::size_t k = 0; k < growth.R.size(); ++k) {
        file << num(growth.R[k]) << ',' << num(growth.energy[k]) << ',' << num(growth.ratio[k])
             << '\n';
      }
      out << "energy: " << growth.fit.model << " fit exponent " << num(growth.fit.exponent)
          << ", ratio in [" << num(growth.G_lower) << ", " << num(growth.G_upper) << "]\n";
    }

    const fs::path lambda_path = dir / "lambda_limit.csv";
    if (kernel.s() == 0.5) {
      const auto R = grid_R_list(requested, h, 0.0, 0.8 * M);
      if (R.size() < 2) throw InvalidArgument("analysis.R_list needs two radii in (0, 0.8M]");
      const LambdaLimit limit = lambda_star_limit(kernel, potential, profile, R);
      auto file = open_output(lambda_path);
      file << "# limit=" << num(limit.limit) << " slope=" << num(limit.slope) << '\n'
           << "R,R_beta\n";
      for (std::size_t k = 0; k < limit.R.size(); ++k) {
        file << num(limit.R[k]) << ',' << num(limit.value[k]) << '\n';
      }
      out << "lambda* limit " << num(limit.limit) << '\n';
    } else {
      fs::remove(lambda_path);
      out << "note: λ* limit defined for s = 1/2 only\n";
    }
    return static_cast<int>(kSuccess);
  });
}

int cmd_reduce(const CommandContext& ctx) {
  return guarded(ctx, [&] {
    const RunConfig& c = ctx.config;
    if (c.kernel.dim < 2) throw InvalidArgument("reduce needs kernel.dim >= 2");
    const KernelSpec kernel = build_kernel(c);
    const ReductionResult result = reduce_kernel(kernel, kernel.dim());
    {
      auto file = open_output(c.output_dir / "reduction.txt");
      write_reduction(result, file);
    }
    auto file = open_output(c.output_dir / "reduced_kernel.csv");
    file << "t,k\n";
    constexpr int kSamples = 121;
    for (int i = 0; i < kSamples; ++i) {
      const double t = std::pow(10.0, -2.0 + 4.0 * i / (kSamples - 1));
      file << num(t) << ',' << num(result.reduced_kernel.evaluate(t)) << '\n';
    }
    out_of(ctx) << "varpi " << num(result.varpi);
    if (result.lambda_star) out_of(ctx) << ", lambda* " << num(*result.lambda_star);
    out_of(ctx) << '\n';
    return static_cast<int>(kSuccess);
  });
}

int cmd_verify(const CommandContext& ctx) {
  return guarded(ctx, [&] {
    const RunConfig& c = ctx.config;
    if (c.kernel.dim < 2) throw InvalidArgument("verify needs kernel.dim >= 2");
    const KernelSpec kernel = build_kernel(c);
    const Profile profile = load_profile(ctx);
    std::vector<std::vector<double>> points = c.points;
    if (points.empty()) {
      for (double xn : {1.0, 2.0, 5.0}) {
        std::vector<double> p(static_cast<std::size_t>(c.kernel.dim), 0.0);
        p.back() = xn;
        points.push_back(p);
      }
    }
    const IdentityCheck check = verify_identity(kernel, profile, points, c.mc_samples, c.seed);
    auto file = open_output(c.output_dir / "identity_check.csv");
    file << "# max_defect=" << num(check.max_defect)
         << " inconclusive=" << (check.inconclusive ? "true" : "false")
         << " passed=" << (check.passed ? "true" : "false") << '\n'
         << "point,lhs,rhs,defect,standard_error,resolved\n";
    for (const auto& point : check.points) {
      std::string coords;
      for (std::size_t k = 0; k < point.x.size(); ++k) {
        if (k > 0) coords += ' ';
        coords += num(point.x[k]);
      }
      file << coords << ',' << num(point.lhs) << ',' << num(point.rhs) << ','
           << num(point.defect) << ',' << num(point.lhs_se) << ','
           << (point.resolved ? "true" : "false") << '\n';
    }
    if (check.inconclusive) {
      out_of(ctx) << "identity check inconclusive: standard error above resolution\n";
      return static_cast<int>(kInconclusive);
    }
    out_of(ctx) << "identity check " << (check.passed ? "passed" : "FAILED") << ", max defect "
                << num(check.max_defect) << '\n';
    return static_cast<int>(check.passed ? kSuccess : kCheckFailed);
  });
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Layer solutions of nonlocal Allen-Cahn equations"};
  app.require_subcommand(1);
  std::string config_path;
  std::string profile_path;
  std::string out_dir;
  unsigned threads = 0;
  std::uint64_t seed = 0;
  auto* config_opt = app.add_option("--config", config_path, "key = value configuration file");
  auto* profile_opt = app.add_option("--profile", profile_path, "profile CSV (analyze, verify)");
  auto* out_opt = app.add_option("--out", out_dir, "output directory");
  app.add_option("--threads", threads, "worker threads, 0 = all cores");
  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  auto* solve = app.add_subcommand("solve", "solve for the layer profile");
  auto* analyze = app.add_subcommand("analyze", "decay, energy growth and lambda* limit");
  auto* reduce = app.add_subcommand("reduce", "one-dimensional reduction of an N-d kernel");
  auto* verify = app.add_subcommand("verify", "Monte-Carlo check of the reduction identity");
  for (auto* sub : {solve, analyze, reduce, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? static_cast<int>(kSuccess) : static_cast<int>(kInputError);
  }

  CommandContext ctx;
  ctx.out = &out;
  ctx.err = &err;
  try {
    if (*config_opt) ctx.config = load_config(config_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  if (*profile_opt) ctx.profile = fs::path(profile_path);
  if (*out_opt) ctx.config.output_dir = out_dir;
  if (*seed_opt) ctx.config.seed = seed;
  set_thread_count(threads);

  if (*solve) return cmd_solve(ctx);
  if (*analyze) return cmd_analyze(ctx);
  if (*reduce) return cmd_reduce(ctx);
  return cmd_verify(ctx);
}

}  // namespace nlac::cli
