#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

namespace nlac {

/// Nodal values of u on the uniform grid x_i = -M + i h of [-M, M], extended
/// by the constants boundary.first (x <= -M) and boundary.second (x >= M).
class Profile {
 public:
  using Boundary = std::pair<double, double>;

  /// `values` must have round(2M/h) + 1 entries in [-1, 1]; the end values are
  /// overwritten by the boundary constants.
  Profile(double M, double h, std::vector<double> values, Boundary boundary = {-1.0, 1.0});

  double half_width() const noexcept { return M_; }
  double spacing() const noexcept { return h_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  Boundary boundary() const noexcept { return boundary_; }
  double left() const noexcept { return boundary_.first; }
  double right() const noexcept { return boundary_.second; }

  /// Grid coordinate of node i; symmetric, x(i) = -x(size()-1-i) exactly.
  double x(std::size_t i) const;
  /// Index of the node at x, or throws if x is not a node.
  std::size_t node_index(double x) const;
  /// Linear interpolation on [-M, M], constant extension outside.
  double operator()(double x) const;

 private:
  double M_;
  double h_;
  std::vector<double> values_;
  Boundary boundary_;
};

/// Number of nodes round(2M/h) + 1; throws unless 2M/h is an integer.
std::size_t grid_size(double M, double h);

/// Samples f at every node (boundary constants at the ends).
Profile sample(double M, double h, const std::function<double(double)>& f,
               Profile::Boundary boundary = {-1.0, 1.0});

/// Clipped linear function: -1 for x <= -1, x on (-1, 1], 1 beyond.
Profile make_linear_init(double M, double h);
Profile make_tanh_init(double M, double h);
/// u = c everywhere, including the extension.
Profile make_constant(double M, double h, double c);

double eval_extended(const Profile& profile, double x);

/// x -> P(x - tau) on the same grid, with the same boundary constants.
Profile shift(const Profile& profile, double tau);
/// Interpolates onto the grid of [-M, M] with spacing h.
Profile resample(const Profile& profile, double M, double h);
/// Location of the zero crossing closest to the center of the grid.
double zero_crossing(const Profile& profile);
/// Shifts the profile so that its zero crossing sits at x = 0.
Profile center(const Profile& profile);

/// CSV with header `x,u`, 17 significant digits, LF line endings.
void write_csv(const Profile& profile, std::ostream& out);
void save_csv(const Profile& profile, const std::filesystem::path& path);
/// Loads a CSV written by save_csv. Requires a uniform increasing x column and
/// end values -1 and +1.
Profile read_csv(std::istream& in);
Profile load_csv(const std::filesystem::path& path);

}  // namespace nlac
