#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nlac/error.hpp"
#include "nlac/kernels.hpp"
#include "nlac/nonlocal.hpp"
#include "nlac/potentials.hpp"
#include "nlac/profiles.hpp"

namespace nlac {

enum class StepRule { fixed, adaptive_secant };
enum class InitKind { linear_clip, tanh, custom };

std::string_view to_string(StepRule rule);
std::string_view to_string(InitKind init);
StepRule parse_step_rule(std::string_view text);
InitKind parse_init(std::string_view text);

struct SolveOptions {
  int max_iters = 200000;
  /// Stop when sup |P(u - g) - u| <= grad_tol, g = -L_K u + W'(u), P = clamp to [-1, 1].
  double grad_tol = 1e-8;
  StepRule step_rule = StepRule::adaptive_secant;
  InitKind init = InitKind::tanh;
  std::optional<Profile> custom_init;  ///< used when init == custom
  QuadratureOptions quadrature;
};

struct SolveReport {
  Profile profile;
  int iterations = 0;
  double final_gradient_norm = 0.0;
  double el_residual = 0.0;
  bool monotone = false;
  double odd_defect = 0.0;
  bool interior_strict = false;
  bool converged = false;
  /// The minimizer is (numerically) constant: no layer formed.
  bool no_transition = false;
  double energy = 0.0;
  /// Energy after every accepted iteration, starting with the initial guess.
  std::vector<double> energy_history{};
  /// |u(-0.9M) + 1| and |u(0.9M) - 1|.
  double left_limit_defect = 0.0;
  double right_limit_defect = 0.0;
};

/// Raised when the iteration budget runs out or the line search stalls.
/// Carries the report for the best iterate.
class SolveFailed : public ConvergenceError {
 public:
  SolveFailed(const std::string& what, SolveReport report)
      : ConvergenceError(what), report_(std::move(report)) {}
  const SolveReport& report() const noexcept { return report_; }

 private:
  SolveReport report_;
};

/// Minimizes the discrete energy on [-M, M] with u = -1 left of -M and u = 1
/// right of M by projected gradient descent. Requires M >= 5 and h <= M/20.
SolveReport solve_dirichlet(const KernelSpec& kernel, const Potential& potential, double M,
                            double h, const SolveOptions& opts = {});

/// Continuation over increasing half-widths, each level warm-started from the
/// previous solution; the final profile is centered so that u(0) = 0.
SolveReport solve_layer(const KernelSpec& kernel, const Potential& potential,
                        std::span<const double> M_list, double h,
                        const SolveOptions& opts = {});

/// Fills the structural checks (monotone, odd defect, strict bound, limits).
void inspect(SolveReport& report);

/// min over tau of sup_x |P1(x) - P2(x - tau)| over nodes of P1 with x - tau
/// inside the domain of P2.
double translation_distance(const Profile& p1, const Profile& p2);

/// Flat key=value text.
void write_report(const SolveReport& report, std::ostream& out);

}  // namespace nlac
