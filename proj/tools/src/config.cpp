#include "nlac_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>

namespace nlac::cli {
namespace {

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  std::istringstream in(text);
  while (std::getline(in, current, sep)) {
    const std::string t = trim(current);
    if (!t.empty()) parts.push_back(t);
  }
  return parts;
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
  return out;
}

std::int64_t to_integer(const std::string& key, const std::string& value) {
  const double d = to_double(key, value);
  if (d != std::floor(d) || std::abs(d) > 9.0e15) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
  return static_cast<std::int64_t>(d);
}

std::vector<double> to_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const auto& part : split(value, ',')) out.push_back(to_double(key, part));
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"kernel.family", [](RunConfig& c, const auto&, const auto& v) { c.kernel.family = v; }},
      {"kernel.dim", [](RunConfig& c, const auto& k, const auto& v) {
         c.kernel.dim = static_cast<int>(to_integer(k, v));
       }},
      {"kernel.s", [](RunConfig& c, const auto& k, const auto& v) { c.kernel.s = to_double(k, v); }},
      {"kernel.coefficient",
       [](RunConfig& c, const auto& k, const auto& v) { c.kernel.coefficient = to_double(k, v); }},
      {"kernel.r0", [](RunConfig& c, const auto& k, const auto& v) { c.kernel.r0 = to_double(k, v); }},
      {"kernel.sigma", [](RunConfig& c, const auto&, const auto& v) { c.kernel.sigma = v; }},
      {"kernel.anisotropy",
       [](RunConfig& c, const auto& k, const auto& v) { c.kernel.anisotropy = to_double(k, v); }},
      {"potential.name", [](RunConfig& c, const auto&, const auto& v) { c.potential = v; }},
      {"grid.M", [](RunConfig& c, const auto& k, const auto& v) { c.M = to_double(k, v); }},
      {"grid.h", [](RunConfig& c, const auto& k, const auto& v) { c.h = to_double(k, v); }},
      {"grid.M_list", [](RunConfig& c, const auto& k, const auto& v) { c.M_list = to_list(k, v); }},
      {"solver.max_iters", [](RunConfig& c, const auto& k, const auto& v) {
         const auto n = to_integer(k, v);
         if (n < 1 || n > 2000000000) throw ConfigError(k + ": must be a positive integer");
         c.solver.max_iters = static_cast<int>(n);
       }},
      {"solver.grad_tol",
       [](RunConfig& c, const auto& k, const auto& v) { c.solver.grad_tol = to_double(k, v); }},
      {"solver.step_rule", [](RunConfig& c, const auto& k, const auto& v) {
         try {
           c.solver.step_rule = parse_step_rule(v);
         } catch (const InvalidArgument& e) {
           throw ConfigError(k + ": " + e.what());
         }
       }},
      {"solver.init", [](RunConfig& c, const auto& k, const auto& v) {
         if (v != "tanh" && v != "linear-clip") throw ConfigError(k + ": expected tanh or linear-clip");
         c.solver.init = parse_init(v);
       }},
      {"analysis.R_list", [](RunConfig& c, const auto& k, const auto& v) { c.R_list = to_list(k, v); }},
      {"analysis.decay_window", [](RunConfig& c, const auto& k, const auto& v) {
         const auto w = to_list(k, v);
         if (w.size() != 2) throw ConfigError(k + ": expected two numbers a, b");
         c.decay_window = {w[0], w[1]};
       }},
      {"analysis.mc_samples",
       [](RunConfig& c, const auto& k, const auto& v) { c.mc_samples = to_integer(k, v); }},
      {"analysis.seed", [](RunConfig& c, const auto& k, const auto& v) {
         const auto n = to_integer(k, v);
         if (n < 0) throw ConfigError(k + ": must be nonnegative");
         c.seed = static_cast<std::uint64_t>(n);
       }},
      {"analysis.points", [](RunConfig& c, const auto& k, const auto& v) {
         c.points.clear();
         for (const auto& point : split(v, ';')) c.points.push_back(to_list(k, point));
       }},
      {"output.dir", [](RunConfig& c, const auto&, const auto& v) { c.output_dir = v; }},
  };
  return table;
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  RunConfig config;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string text = trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ConfigError("line " + std::to_string(number) + ": unknown key '" + key + "'");
    }
    if (value.empty()) throw ConfigError("line " + std::to_string(number) + ": empty value");
    it->second(config, key, value);
  }
  validate_config(config);
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse_config(in);
}

void validate_config(const RunConfig& c) {
  if (c.kernel.dim < 1) throw ConfigError("kernel.dim must be >= 1");
  if (!(c.kernel.s > 0.0 && c.kernel.s < 1.0)) throw ConfigError("kernel.s must lie in (0,1)");
  if (!(c.kernel.coefficient > 0.0)) throw ConfigError("kernel.coefficient must be positive");
  if (!(c.kernel.r0 > 0.0)) throw ConfigError("kernel.r0 must be positive");
  if (c.potential != "quartic") throw ConfigError("potential.name: only quartic is built in");
  if (!(c.M > 0.0)) throw ConfigError("grid.M must be positive");
  if (!(c.h > 0.0)) throw ConfigError("grid.h must be positive");
  const double top = c.M_list.empty() ? c.M : c.M_list.back();
  const double bottom = c.M_list.empty() ? c.M : c.M_list.front();
  if (c.h > bottom / 20.0 * (1.0 + 1e-12)) throw ConfigError("h must be < M/20");
  for (std::size_t k = 1; k < c.M_list.size(); ++k) {
    if (!(c.M_list[k] > c.M_list[k - 1])) throw ConfigError("grid.M_list must be increasing");
  }
  if (!c.M_list.empty() && c.M_list.back() != c.M) {
    throw ConfigError("grid.M must equal the last entry of grid.M_list");
  }
  if (top < 5.0) throw ConfigError("grid.M must be >= 5");
  if (!(c.solver.grad_tol > 0.0)) throw ConfigError("solver.grad_tol must be positive");
  for (std::size_t k = 1; k < c.R_list.size(); ++k) {
    if (!(c.R_list[k] > c.R_list[k - 1])) throw ConfigError("analysis.R_list must be increasing");
  }
  if (!(c.decay_window.first > 0.0 && c.decay_window.second > c.decay_window.first)) {
    throw ConfigError("analysis.decay_window must satisfy 0 < a < b");
  }
  if (c.mc_samples < 1) throw ConfigError("analysis.mc_samples must be positive");
  for (const auto& p : c.points) {
    if (static_cast<int>(p.size()) != c.kernel.dim) {
      throw ConfigError("analysis.points must have kernel.dim coordinates");
    }
  }
}

KernelSpec build_kernel(const RunConfig& c) {
  const auto& k = c.kernel;
  try {
    if (k.family == "fractional") return make_fractional(k.dim, k.s, k.coefficient);
    if (k.family == "truncated") return make_truncated(k.dim, k.s, k.r0, k.coefficient);
    if (k.family == "anisotropic") return make_anisotropic(k.dim, k.s, k.coefficient, k.anisotropy);
    if (k.family == "perturbed") {
      if (k.dim != 1) throw ConfigError("perturbed kernels are one-dimensional");
      Sigma sigma;
      if (k.sigma == "zero") {
        sigma = sigma_zero();
      } else if (k.sigma == "exp") {
        sigma = sigma_exp();
      } else if (k.sigma == "sin2") {
        sigma = sigma_sin2();
      } else {
        sigma = sigma_constant(to_double("kernel.sigma", k.sigma));
      }
      return make_perturbed(k.s, k.coefficient, sigma);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("kernel: ") + e.what());
  }
  throw ConfigError("kernel.family: unknown family '" + k.family + "'");
}

Potential build_potential(const RunConfig& c) {
  if (c.potential == "quartic") return quartic();
  throw ConfigError("potential.name: only quartic is built in");
}

}  // namespace nlac::cli
