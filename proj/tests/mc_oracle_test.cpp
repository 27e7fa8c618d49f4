#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "phc/asymptotics.hpp"
#include "phc/covariance.hpp"
#include "phc/errors.hpp"
#include "phc/mc_oracle.hpp"

using namespace phc;
using std::numbers::pi;

TEST_CASE("Cauchy samples have the right law") {
  std::mt19937_64 rng(42);
  const int n = 1000000;
  std::vector<double> x(2);
  int inside1 = 0, inside2 = 0, positive = 0;
  for (int i = 0; i < n; ++i) {
    sample_cauchy(1, rng, x);
    inside1 += std::abs(x[0]) <= 1.0;
    positive += x[0] > 0;
    sample_cauchy(2, rng, x);
    inside2 += std::hypot(x[0], x[1]) <= 1.0;
  }
  const double p1 = 0.5, p2 = 1 - 1 / std::sqrt(2.0);
  CHECK(std::abs(inside1 / double(n) - p1) < 3 * std::sqrt(p1 * (1 - p1) / n));
  CHECK(std::abs(inside2 / double(n) - p2) < 3 * std::sqrt(p2 * (1 - p2) / n));
  // Sign test at p > 1e-3 is |z| < 3.29.
  CHECK(std::abs(positive - n / 2.0) / std::sqrt(n / 4.0) < 3.29);
}

TEST_CASE("uniform samples stay inside the shape") {
  std::mt19937_64 rng(1);
  std::vector<double> x(3);
  for (const Shape& s : {Shape::ball(3), Shape::square(), Shape::interval(2, 3),
                         Shape::polygon({{0, 0}, {1, 0}, {0, 1}})}) {
    for (int i = 0; i < 1000; ++i) {
      sample_uniform(s, rng, x);
      CHECK(contains(s, x));
    }
  }
}

TEST_CASE("Monte Carlo is reproducible across worker counts") {
  const Shape s = Shape::square();
  const McEstimate a = mc_heat_content(s, 0.1, 300000, 9, 1);
  const McEstimate b = mc_heat_content(s, 0.1, 300000, 9, 4);
  const McEstimate c = mc_heat_content(s, 0.1, 300000, 9);
  CHECK(a.mean == b.mean);
  CHECK(a.mean == c.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(mc_heat_content(s, 0.1, 300000, 10).mean != a.mean);
  const std::vector<double> y = {0.3, 0.4};
  CHECK(mc_covariance(s, y, 100000, 5, 1).mean == mc_covariance(s, y, 100000, 5, 3).mean);
}

TEST_CASE("Monte Carlo limiting cases") {
  const Shape b2 = Shape::ball(2);
  const McEstimate small_t = mc_heat_content(b2, 1e-6, 100000, 1);
  CHECK(std::abs(small_t.mean - pi) <= 3 * small_t.std_error + 1e-4);
  const std::vector<double> zero = {0.0, 0.0};
  const McEstimate g0 = mc_covariance(b2, zero, 10000, 1);
  CHECK(g0.mean == pi);
  CHECK(g0.std_error == 0.0);
  const std::vector<double> far = {2.0, 0.0};
  CHECK(mc_covariance(b2, far, 10000, 1).mean == 0.0);
  const std::vector<double> y3 = {0.0, 0.0, 1.0};
  const McEstimate h = mc_covariance(Shape::ball(3), y3, 1000000, 4);
  CHECK(std::abs(h.mean - 5 * pi / 12) <= 3 * h.std_error);
  CHECK_THROWS_AS(mc_heat_content(b2, 0.1, 999, 1), Error);
  CHECK_THROWS_AS(mc_heat_content(b2, 0.0, 1000, 1), Error);
  CHECK_THROWS_AS(mc_covariance(b2, y3, 1000, 1), Error);
}

TEST_CASE("Monte Carlo agrees with quadrature") {
  const QuadSpec quad;
  for (const Shape& s : {Shape::ball(2), Shape::square()}) {
    const double t = s.is_ball() ? 0.05 : 0.05;
    const McEstimate e = mc_heat_content(s, t, 1000000, 77);
    CHECK(std::abs(e.mean - heat_content(s, t, quad)) <= 3 * e.std_error);
  }
}

TEST_CASE("Monte Carlo intervals cover the quadrature value") {
  const Shape b2 = Shape::ball(2);
  const double h = heat_content(b2, 0.1, QuadSpec{});
  int covered = 0;
  for (int seed = 0; seed < 200; ++seed) {
    const McEstimate e = mc_heat_content(b2, 0.1, 10000, 1000 + seed);
    covered += std::abs(e.mean - h) <= 2 * e.std_error;
  }
  CHECK(covered >= 180);
}
