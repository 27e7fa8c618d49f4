#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "phc/errors.hpp"
#include "phc/kernel.hpp"

using namespace phc;
using std::numbers::pi;

namespace {

// Midpoint rule for J_d on [0, 40]; the tail beyond 40 is below 1e-30.
double brute_tanh_deficit(int d) {
  const int n = 400000;
  const double h = 40.0 / n;
  double s = 0;
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) * h;
    s += std::pow(std::tanh(x), d) - 1.0;
  }
  return s * h;
}

}  // namespace

TEST_CASE("Dim rejects out-of-range values") {
  CHECK_THROWS_AS(Dim(0), Error);
  CHECK_THROWS_AS(Dim(17), Error);
  CHECK(Dim(3).value() == 3);
}

TEST_CASE("gamma at half integers") {
  CHECK(gamma_half(1) == doctest::Approx(std::sqrt(pi)).epsilon(1e-15));
  CHECK(gamma_half(2) == doctest::Approx(1.0));
  CHECK(gamma_half(7) == doctest::Approx(std::tgamma(3.5)).epsilon(1e-15));
  CHECK(gamma_half(12) == doctest::Approx(120.0).epsilon(1e-15));
}

TEST_CASE("kernel constants for low dimensions") {
  CHECK(kappa(Dim(1)) == doctest::Approx(1.0 / pi).epsilon(1e-15));
  CHECK(kappa(Dim(2)) == doctest::Approx(1.0 / (2.0 * pi)).epsilon(1e-15));
  CHECK(kappa(Dim(3)) == doctest::Approx(1.0 / (pi * pi)).epsilon(1e-15));
  CHECK(unit_ball_volume(Dim(2)) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(unit_ball_volume(Dim(3)) == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-15));
  CHECK(unit_sphere_area(Dim(1)) == doctest::Approx(2.0));
  CHECK(unit_sphere_area(Dim(3)) == doctest::Approx(4.0 * pi).epsilon(1e-15));
  CHECK(unit_ball_volume_below(Dim(1)) == 1.0);
  CHECK(unit_ball_volume_below(Dim(3)) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(unit_sphere_area_below(Dim(3)) == doctest::Approx(2.0 * pi).epsilon(1e-15));
  for (int d = 1; d <= kMaxDim; ++d)
    CHECK(unit_sphere_area(Dim(d)) ==
          doctest::Approx(d * unit_ball_volume(Dim(d))).epsilon(1e-14));
}

TEST_CASE("Poisson kernel is normalised in d = 1 and d = 2") {
  // x = t tan(u) maps the line onto (-pi/2, pi/2).
  const double t = 0.3;
  const int n = 20000;
  double s1 = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = -pi / 2 + (i + 0.5) * pi / n;
    const double x = t * std::tan(u);
    const double dx = t / (std::cos(u) * std::cos(u));
    s1 += poisson_kernel_radial(Dim(1), t, std::abs(x)) * dx;
    if (x > 0) s2 += 2.0 * pi * x * poisson_kernel_radial(Dim(2), t, x) * dx;
  }
  CHECK(s1 * pi / n == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(s2 * pi / n == doctest::Approx(1.0).epsilon(1e-6));
  const std::vector<double> x = {0.3, -0.4};
  CHECK(poisson_kernel(Dim(2), 1.0, x) ==
        doctest::Approx(poisson_kernel_radial(Dim(2), 1.0, 0.5)).epsilon(1e-15));
}

TEST_CASE("tanh deficit against published and brute-force values") {
  CHECK(tanh_deficit(Dim(1)) == doctest::Approx(-std::log(2.0)).epsilon(1e-13));
  CHECK(tanh_deficit(Dim(2)) == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(tanh_deficit(Dim(3)) == doctest::Approx(-std::log(2.0) - 0.5).epsilon(1e-13));
  CHECK(tanh_deficit(Dim(4)) == doctest::Approx(brute_tanh_deficit(4)).epsilon(1e-9));
  for (int d = 1; d <= 8; ++d)
    CHECK(std::abs(tanh_deficit(Dim(d))) <= tanh_deficit_bound(Dim(d)));
}

TEST_CASE("tanh deficit refuses unattainable tolerances") {
  CHECK_THROWS_AS(tanh_deficit(Dim(2), 0.0), Error);
  try {
    tanh_deficit(Dim(2), 1e-40);
    FAIL("expected ToleranceNotMet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ToleranceNotMet);
  }
}
