#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nlac/kernels.hpp"
#include "nlac/potentials.hpp"
#include "nlac/solver.hpp"

namespace nlac::cli {

/// Settings read from a flat `section.key = value` file.
struct RunConfig {
  struct Kernel {
    std::string family = "fractional";  ///< fractional | truncated | perturbed | anisotropic
    int dim = 1;
    double s = 0.5;
    double coefficient = 1.0;  ///< lambda* (fractional, perturbed) or amplitude (truncated)
    double r0 = 1.0;
    std::string sigma = "zero";  ///< zero | exp | sin2 | a number
    double anisotropy = 0.0;
  } kernel;
  std::string potential = "quartic";
  double M = 50.0;
  double h = 0.05;
  std::vector<double> M_list;  ///< continuation levels; empty means a single solve on M
  SolveOptions solver;
  std::vector<double> R_list;  ///< empty means 5, 10, 20, ... up to 0.9M
  std::pair<double, double> decay_window{10.0, 40.0};
  std::int64_t mc_samples = 1000000;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> points;  ///< identity-check points; empty means x_N in {1, 2, 5}
  std::filesystem::path output_dir = ".";
};

/// Raised for malformed files, unknown keys and invalid values.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

/// Checks the numeric constraints (grid, solver, analysis ranges).
void validate_config(const RunConfig& config);

KernelSpec build_kernel(const RunConfig& config);
Potential build_potential(const RunConfig& config);

}  // namespace nlac::cli
