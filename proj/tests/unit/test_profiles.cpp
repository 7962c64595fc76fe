#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "nlac/error.hpp"
#include "nlac/profiles.hpp"

using namespace nlac;
using doctest::Approx;

TEST_CASE("linear initial profile") {
  const auto p = make_linear_init(5.0, 1.0);
  CHECK(p.size() == 11);
  CHECK(p[p.node_index(0.0)] == 0.0);
  CHECK(p[p.node_index(-3.0)] == -1.0);
  const auto q = make_linear_init(5.0, 0.5);
  CHECK(q[q.node_index(0.5)] == 0.5);
}

TEST_CASE("grid coordinates") {
  const auto p = make_tanh_init(3.0, 0.1);
  CHECK(p.size() == 61);
  CHECK(p.x(0) == -3.0);
  CHECK(p.x(60) == 3.0);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(p.x(i) == -p.x(p.size() - 1 - i));
  CHECK_THROWS_AS(grid_size(1.0, 0.3), InvalidArgument);
  CHECK_THROWS_AS(p.node_index(0.05), InvalidArgument);
}

TEST_CASE("extension and interpolation") {
  const auto p = make_tanh_init(10.0, 0.5);
  CHECK(eval_extended(p, 20.0) == 1.0);
  CHECK(eval_extended(p, -20.0) == -1.0);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(eval_extended(p, p.x(i)) == p[i]);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const double mid = 0.5 * (p.x(i) + p.x(i + 1));
    CHECK(eval_extended(p, mid) == Approx(0.5 * (p[i] + p[i + 1])).epsilon(1e-14));
  }
}

TEST_CASE("extension is Lipschitz") {
  const auto p = make_tanh_init(10.0, 0.5);
  double lip = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) lip = std::max(lip, std::abs(p[i + 1] - p[i]));
  lip /= p.spacing();
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> x(-15.0, 15.0);
  for (int k = 0; k < 500; ++k) {
    const double a = x(rng);
    const double b = x(rng);
    CHECK(std::abs(eval_extended(p, a) - eval_extended(p, b)) <= lip * std::abs(a - b) + 1e-14);
  }
}

TEST_CASE("centering") {
  const auto odd = make_tanh_init(10.0, 0.1);
  const auto same = center(odd);
  for (std::size_t i = 0; i < odd.size(); ++i) CHECK(std::abs(same[i] - odd[i]) <= 1e-12);

  const auto moved = shift(odd, 0.1);
  CHECK(zero_crossing(moved) == Approx(0.1).epsilon(1e-9));
  const auto back = center(moved);
  CHECK(std::abs(zero_crossing(back)) <= 1e-9);
  const auto twice = center(back);
  for (std::size_t i = 0; i < back.size(); ++i) CHECK(std::abs(twice[i] - back[i]) <= 1e-9);

  const auto off_grid = shift(odd, 0.037);
  CHECK(std::abs(zero_crossing(center(off_grid))) <= 1e-9);

  CHECK_THROWS_WITH_AS(zero_crossing(make_constant(10.0, 0.1, 0.5)),
                       doctest::Contains("no sign change"), InvalidArgument);
}

TEST_CASE("constant profile") {
  const auto c = make_constant(5.0, 0.5, 0.25);
  CHECK(c.left() == 0.25);
  CHECK(c.right() == 0.25);
  CHECK(eval_extended(c, 100.0) == 0.25);
}

TEST_CASE("values outside [-1, 1] are rejected") {
  std::vector<double> v(11, 0.0);
  v[3] = 1.5;
  CHECK_THROWS_AS(Profile(5.0, 1.0, v), InvalidArgument);
  CHECK_THROWS_AS(Profile(5.0, 1.0, std::vector<double>(7, 0.0)), InvalidArgument);
}

TEST_CASE("resample") {
  const auto p = make_tanh_init(10.0, 0.1);
  const auto q = resample(p, 20.0, 0.05);
  CHECK(q.size() == 801);
  CHECK(q[q.node_index(0.5)] == Approx(p[p.node_index(0.5)]).epsilon(1e-15));
  CHECK(q[q.node_index(15.0)] == 1.0);
}

TEST_CASE("csv round trip") {
  const auto p = make_tanh_init(5.0, 0.05);
  std::stringstream buffer;
  write_csv(p, buffer);
  const std::string text = buffer.str();
  CHECK(text.rfind("x,u\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  const auto q = read_csv(buffer);
  REQUIRE(q.size() == p.size());
  CHECK(q.half_width() == p.half_width());
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(q[i] == p[i]);
}

TEST_CASE("malformed csv") {
  std::istringstream empty("");
  CHECK_THROWS_AS(read_csv(empty), InvalidArgument);
  std::istringstream header("a,b\n-1,-1\n0,0\n1,1\n");
  CHECK_THROWS_AS(read_csv(header), InvalidArgument);
  std::istringstream ragged("x,u\n-1,-1\n0.2,0\n1,1\n");
  CHECK_THROWS_AS(read_csv(ragged), InvalidArgument);
  std::istringstream garbage("x,u\n-1,-1\nzero,0\n1,1\n");
  CHECK_THROWS_AS(read_csv(garbage), InvalidArgument);
}
