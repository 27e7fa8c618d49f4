#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "phc/covariance.hpp"
#include "phc/errors.hpp"
#include "phc/gamma.hpp"
#include "phc/kernel.hpp"

using namespace phc;
using std::numbers::pi;

namespace {

// gamma_Q(2 sqrt 2 s) from the product covariance, midpoint rule over 2^16
// angles.
double square_gamma_oracle(double s) {
  const int n = 1 << 16;
  const double ell = 2 * std::sqrt(2.0);
  const double r = ell * s;
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    const double th = 2 * pi * (i + 0.5) / n;
    const double c = std::cos(th), sn = std::sin(th);
    const double g = std::max(0.0, 2 - std::abs(r * c)) * std::max(0.0, 2 - std::abs(r * sn));
    sum += 2 * (std::abs(c) + std::abs(sn)) - (4 - g) / r;
  }
  return sum * 2 * pi / n;
}

// Difference quotient for the unit disc with its closed-form covariance.
double disc_gamma_oracle(double s) {
  const double c = std::sqrt(1 - s * s);
  const double g = 2 * std::asin(c) - 2 * s * c;
  return 2 * pi * (2 - (pi - g) / (2 * s));
}

}  // namespace

TEST_CASE("ball gamma closed forms") {
  for (double s : {0.1, 0.5, 0.9}) CHECK(ball_gamma(3, s) == doctest::Approx(4 * pi * pi * s * s / 3).epsilon(1e-13));
  CHECK(ball_gamma(3, 0.5) == doctest::Approx(pi * pi / 3).epsilon(1e-14));
  CHECK(ball_gamma(2, 1.0) == doctest::Approx(4 * pi - pi * pi).epsilon(1e-14));
  for (double s : {0.05, 0.3, 0.7}) CHECK(ball_gamma(2, s) == doctest::Approx(disc_gamma_oracle(s)).epsilon(1e-10));
  CHECK(ball_gamma(2, 1e-7) > 0);
  CHECK(ball_gamma(2, 1e-7) < ball_gamma_bound(2, 1e-7));
  CHECK_THROWS_AS(ball_gamma(2, 0.0), Error);
  CHECK_THROWS_AS(ball_gamma(2, 1.5), Error);
}

TEST_CASE("ball gamma bound at random points") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int d : {2, 3, 4, 6}) {
    for (int i = 0; i < 200; ++i) {
      const double s = 1.0 - u(rng);
      const double g = ball_gamma(d, s);
      CHECK(g >= 0);
      CHECK(g <= ball_gamma_bound(d, s) * (1 + 1e-14));
    }
  }
}

TEST_CASE("square gamma against the 2^16-angle oracle") {
  for (double s : {0.3, 0.7, 0.75, 0.9, 1.0}) {
    CAPTURE(s);
    CHECK(std::abs(square_gamma(s) - square_gamma_oracle(s)) < 1e-7);
  }
  CHECK(square_gamma(0.5) == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("numeric gamma matches closed forms") {
  const QuadSpec quad;
  for (double s : {0.2, 0.6, 0.95}) {
    CHECK(std::abs(gamma_numeric(Shape::ball(2), s, quad) - ball_gamma(2, s)) < 1e-8);
    CHECK(std::abs(gamma_numeric(Shape::ball(3), s, quad) - ball_gamma(3, s)) < 1e-7);
    CHECK(std::abs(gamma_numeric(Shape::square(), s, quad) - square_gamma(s)) < 1e-8);
  }
  const Shape poly = Shape::polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  CHECK(std::abs(gamma(poly, 0.9, quad) - square_gamma(0.9)) < 1e-8);
  CHECK(gamma(Shape::interval(0, 1), 0.5, quad) == 0.0);
  CHECK(std::abs(gamma_numeric(Shape::interval(0, 1), 0.5, quad)) < 1e-14);
}

TEST_CASE("rectangle gamma scales with the half width") {
  const QuadSpec quad;
  const Shape big = Shape::rectangle(2.5, 2.5);
  CHECK(std::abs(gamma(big, 0.8, quad) - 2.5 * square_gamma(0.8)) < 1e-9);
  CHECK(std::abs(gamma_numeric(big, 0.8, quad) - 2.5 * square_gamma(0.8)) < 1e-7);
}

TEST_CASE("gamma is nonnegative on general polygons") {
  const QuadSpec quad;
  const Shape tri = Shape::polygon({{0, 0}, {1, 0}, {0, 1}});
  const Shape pent = Shape::polygon({{1, 0}, {0.3, 0.95}, {-0.8, 0.6}, {-0.8, -0.6}, {0.3, -0.95}});
  for (const Shape& s : {tri, pent, Shape::rectangle(1, 0.25)}) {
    const GammaProfile p(s, quad);
    for (double x : {1e-3, 0.05, 0.2, 0.5, 0.8, 1.0}) CHECK(p.eval(x) >= -1e-8);
    CHECK(p.linear_limit() > 0);
    const double x = 0.5 * p.linear_limit();
    CHECK(std::abs(gamma_numeric(s, x, quad) - p.linear_slope() * x) < 1e-8);
  }
}

TEST_CASE("weighted gamma integrals") {
  const QuadSpec quad;
  const GammaIntegral b2 = gamma_weighted_integral(Shape::ball(2), quad);
  CHECK(std::abs(b2.value - pi * (pi - 4 * std::log(2.0))) < 1e-10);
  CHECK(b2.integrable);
  CHECK(std::abs(gamma_weighted_integral(Shape::ball(3), quad).value - 2 * pi * pi / 3) < 1e-10);
  const double r2 = std::sqrt(2.0);
  CHECK(std::abs(gamma_weighted_integral(Shape::square(), quad).value -
                 (2 * r2 * (pi - 8) + 8 * std::log(2 * (3 + 2 * r2)))) < 1e-10);
  CHECK(*gamma_weighted_integral_closed(Shape::ball(2)) == doctest::Approx(1.159260).epsilon(1e-6));
  CHECK(*gamma_weighted_integral_closed(Shape::ball(3)) == doctest::Approx(6.579736).epsilon(1e-6));
  CHECK_FALSE(gamma_weighted_integral_closed(Shape::ball(4)).has_value());

  // Square given as a polygon goes through the numeric path.
  const Shape poly = Shape::polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  const GammaIntegral gp = gamma_weighted_integral(poly, quad);
  CHECK(gp.integrable);
  CHECK(std::abs(gp.value - *gamma_weighted_integral_closed(Shape::square())) < 1e-7);

  const GammaIntegral tri = gamma_weighted_integral(Shape::polygon({{0, 0}, {1, 0}, {0, 1}}), quad);
  CHECK(tri.integrable);
  CHECK(tri.value > 0);
}
