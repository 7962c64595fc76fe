#include "nlac/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "nlac/error.hpp"

namespace nlac {
namespace {

constexpr double kRangeSlack = 1e-12;

}  // namespace

std::size_t grid_size(double M, double h) {
  if (!(M > 0.0) || !std::isfinite(M)) throw InvalidArgument("M must be positive");
  if (!(h > 0.0)) throw InvalidArgument("h must be positive");
  if (!(h < M)) throw InvalidArgument("h must be smaller than M");
  const double cells = 2.0 * M / h;
  const double rounded = std::round(cells);
  if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells)) {
    throw InvalidArgument("2M/h must be an integer");
  }
  return static_cast<std::size_t>(rounded) + 1;
}

Profile::Profile(double M, double h, std::vector<double> values, Boundary boundary)
    : M_(M), values_(std::move(values)), boundary_(boundary) {
  const std::size_t n = grid_size(M, h);
  if (values_.size() != n) {
    std::ostringstream msg;
    msg << "profile needs " << n << " values, got " << values_.size();
    throw InvalidArgument(msg.str());
  }
  h_ = 2.0 * M / static_cast<double>(n - 1);
  for (double b : {boundary.first, boundary.second}) {
    if (!(std::abs(b) <= 1.0)) throw InvalidArgument("boundary values must lie in [-1, 1]");
  }
  values_.front() = boundary.first;
  values_.back() = boundary.second;
  for (double& v : values_) {
    if (!std::isfinite(v) || std::abs(v) > 1.0 + kRangeSlack) {
      throw InvalidArgument("profile values must lie in [-1, 1]");
    }
    v = std::clamp(v, -1.0, 1.0);
  }
}

double Profile::x(std::size_t i) const {
  const std::size_t last = values_.size() - 1;
  if (i == 0) return -M_;
  if (i == last) return M_;
  return (2.0 * static_cast<double>(i) - static_cast<double>(last)) * (0.5 * h_);
}

std::size_t Profile::node_index(double x) const {
  const double t = (x + M_) / h_;
  const double r = std::round(t);
  if (std::abs(t - r) > 1e-9 || r < 0.0 || r > static_cast<double>(values_.size() - 1)) {
    std::ostringstream msg;
    msg << "x = " << x << " is not a grid node";
    throw InvalidArgument(msg.str());
  }
  return static_cast<std::size_t>(r);
}

double Profile::operator()(double x) const {
  if (x <= -M_) return boundary_.first;
  if (x >= M_) return boundary_.second;
  const double t = (x + M_) / h_;
  const double r = std::round(t);
  if (std::abs(t - r) <= 1e-9) return values_[static_cast<std::size_t>(r)];
  const std::size_t i = std::min(static_cast<std::size_t>(t), values_.size() - 2);
  const double frac = t - static_cast<double>(i);
  return values_[i] + frac * (values_[i + 1] - values_[i]);
}

Profile sample(double M, double h, const std::function<double(double)>& f,
               Profile::Boundary boundary) {
  const std::size_t n = grid_size(M, h);
  Profile grid(M, h, std::vector<double>(n, boundary.first), boundary);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = f(grid.x(i));
  return Profile(M, h, std::move(values), boundary);
}

Profile make_linear_init(double M, double h) {
  return sample(M, h, [](double x) { return std::clamp(x, -1.0, 1.0); });
}

Profile make_tanh_init(double M, double h) {
  return sample(M, h, [](double x) { return std::tanh(x); });
}

Profile make_constant(double M, double h, double c) {
  return sample(M, h, [c](double) { return c; }, {c, c});
}

double eval_extended(const Profile& profile, double x) { return profile(x); }

Profile shift(const Profile& profile, double tau) {
  return sample(profile.half_width(), profile.spacing(),
                [&](double x) { return profile(x - tau); }, profile.boundary());
}

Profile resample(const Profile& profile, double M, double h) {
  return sample(M, h, [&](double x) { return profile(x); }, profile.boundary());
}

double zero_crossing(const Profile& profile) {
  const auto& v = profile.values();
  const double mid = 0.5 * static_cast<double>(v.size() - 1);
  double best = 0.0;
  double best_distance = -1.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    double crossing = 0.0;
    if (v[i] == 0.0) {
      crossing = profile.x(i);
    } else if ((v[i] < 0.0 && v[i + 1] > 0.0) || (v[i] > 0.0 && v[i + 1] < 0.0)) {
      crossing = profile.x(i) + profile.spacing() * (-v[i] / (v[i + 1] - v[i]));
    } else {
      continue;
    }
    const double distance = std::abs(static_cast<double>(i) - mid);
    if (best_distance < 0.0 || distance < best_distance) {
      best_distance = distance;
      best = crossing;
    }
  }
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  if (best_distance < 0.0 || !(*lo < 0.0 && *hi > 0.0)) {
    throw InvalidArgument("profile has no sign change");
  }
  return best;
}

Profile center(const Profile& profile) { return shift(profile, -zero_crossing(profile)); }

void write_csv(const Profile& profile, std::ostream& out) {
  out << "x,u\n";
  char line[96];
  for (std::size_t i = 0; i < profile.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", profile.x(i), profile[i]);
    out << line;
  }
}

void save_csv(const Profile& profile, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_csv(profile, out);
  if (!out) throw Error("failed writing " + path.string());
}

Profile read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("profile CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,u") throw InvalidArgument("profile CSV must start with header x,u");
  std::vector<double> xs;
  std::vector<double> us;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw InvalidArgument("malformed profile row: " + line);
    try {
      std::size_t used = 0;
      const std::string xs_text = line.substr(0, comma);
      const std::string us_text = line.substr(comma + 1);
      xs.push_back(std::stod(xs_text, &used));
      if (used != xs_text.size()) throw InvalidArgument("malformed profile row: " + line);
      us.push_back(std::stod(us_text, &used));
      if (used != us_text.size()) throw InvalidArgument("malformed profile row: " + line);
    } catch (const std::logic_error&) {
      throw InvalidArgument("malformed profile row: " + line);
    }
  }
  if (xs.size() < 3) throw InvalidArgument("profile CSV needs at least three rows");
  const double M = xs.back();
  if (!(M > 0.0) || std::abs(xs.front() + M) > 1e-12 * M) {
    throw InvalidArgument("profile x column must span a symmetric interval [-M, M]");
  }
  const double h = 2.0 * M / static_cast<double>(xs.size() - 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0 && !(xs[i] > xs[i - 1])) throw InvalidArgument("profile x column must increase");
    if (std::abs(xs[i] - (-M + static_cast<double>(i) * h)) > 1e-9 * M) {
      throw InvalidArgument("profile x column must be uniformly spaced");
    }
  }
  if (us.front() != -1.0 || us.back() != 1.0) {
    throw InvalidArgument("profile end values must be -1 and 1");
  }
  return Profile(M, h, std::move(us));
}

Profile load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  return read_csv(in);
}

}  // namespace nlac
