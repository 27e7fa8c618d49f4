#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "phc/errors.hpp"
#include "phc/extrapolation.hpp"
#include "phc/quadrature.hpp"

using namespace phc;
using std::numbers::pi;

TEST_CASE("integrate_1d on closed-form integrals") {
  const QuadSpec spec;
  const QuadResult lin = integrate_1d([](double s) { return s; }, 0.0, 1.0, spec);
  CHECK(lin.value == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(lin.value - 0.5) <= lin.err + 1e-16);

  const double x = std::asinh(10.0);
  const QuadResult th = integrate_1d(
      [](double u) { return std::tanh(u) * std::tanh(u); }, 0.0, x, spec);
  const double exact = std::asinh(10.0) - 10.0 / std::sqrt(101.0);
  CHECK(std::abs(th.value - exact) < 1e-12);
  CHECK(std::abs(th.value - exact) <= th.err + 1e-14);

  const QuadResult r = integrate_1d(
      [](double s) { return s * s / std::pow(1.0 + s * s, 1.5); }, 0.0, 10.0, spec);
  CHECK(std::abs(r.value - exact) < 1e-12);
}

TEST_CASE("integrate_1d failure modes") {
  const QuadSpec spec;
  CHECK_THROWS_AS(integrate_1d([](double) { return std::numeric_limits<double>::quiet_NaN(); },
                               0.0, 1.0, spec),
                  Error);
  QuadSpec tight = spec;
  tight.max_subdivisions = 8;
  try {
    integrate_1d([](double s) { return 1.0 / std::sqrt(s); }, 0.0, 1.0, tight);
    FAIL("expected a quadrature failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::QuadratureFailure);
  }
}

TEST_CASE("dyadic integration handles the singular endpoint") {
  const DyadicResult r =
      integrate_dyadic([](double s) { return s * s / s; }, QuadSpec{});
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.decaying);
  CHECK(r.panel_values.size() == 48);
  const DyadicResult log =
      integrate_dyadic([](double s) { return -std::log(s); }, QuadSpec{});
  CHECK(log.value == doctest::Approx(1.0).epsilon(1e-12));
  const DyadicResult flat = integrate_dyadic([](double s) { return 1.0 / s; }, QuadSpec{});
  CHECK_FALSE(flat.decaying);
}

TEST_CASE("Gauss-Legendre rules") {
  for (int n : {2, 7, 32, 64}) {
    const GaussRule& g = gauss_legendre(n);
    double w = 0, x2 = 0;
    for (int i = 0; i < n; ++i) {
      w += g.weights[i];
      x2 += g.weights[i] * g.nodes[i] * g.nodes[i];
    }
    CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(x2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  }
}

TEST_CASE("circle quadrature") {
  const QuadSpec spec;
  CHECK(integrate_circle([](double) { return 1.0; }, {}, spec).value ==
        doctest::Approx(2 * pi).epsilon(1e-14));
  const std::vector<double> kinks = {0.0, pi / 2, pi, 3 * pi / 2};
  auto f = [](double t) { return std::abs(std::cos(t)) + std::abs(std::sin(t)); };
  const QuadResult r = integrate_circle(f, kinks, spec);
  CHECK(r.value == doctest::Approx(8.0).epsilon(1e-13));
  // V_u(Q)/2 = 2(|cos| + |sin|) integrates to 2 w_1 Per(Q) / 2 = 16.
  CHECK(integrate_circle([&](double t) { return 2.0 * f(t); }, kinks, spec).value ==
        doctest::Approx(16.0).epsilon(1e-13));
  // Without the kinks the adaptive bisection still converges.
  CHECK(integrate_circle(f, {}, spec).value == doctest::Approx(8.0).epsilon(1e-9));
}

TEST_CASE("sphere quadrature") {
  const QuadSpec spec;
  CHECK(integrate_sphere([](const Vec3&) { return 1.0; }, spec).value ==
        doctest::Approx(4 * pi).epsilon(1e-14));
  CHECK(integrate_sphere([](const Vec3& u) { return u[2] * u[2]; }, spec).value ==
        doctest::Approx(4 * pi / 3).epsilon(1e-14));
  CHECK(integrate_sphere([](const Vec3&) { return pi; }, spec).value ==
        doctest::Approx(4 * pi * pi).epsilon(1e-14));
  const QuadResult x4 = integrate_sphere([](const Vec3& u) { return std::pow(u[0], 4); }, spec);
  CHECK(x4.value == doctest::Approx(4 * pi / 5).epsilon(1e-13));
}

TEST_CASE("QuadSpec validation") {
  QuadSpec bad;
  bad.abs_tol = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  QuadSpec low;
  low.sphere_polar_order = 4;
  CHECK_THROWS_AS(low.validate(), Error);
  CHECK_NOTHROW(QuadSpec{}.validate());
  CHECK(QuadSpec{}.with_tolerance(1e-6, 1e-7).rel_tol == 1e-7);
}

TEST_CASE("pairwise sum is exact on integers") {
  std::vector<double> v(1000);
  for (int i = 0; i < 1000; ++i) v[i] = i;
  CHECK(pairwise_sum(v) == 499500.0);
}

TEST_CASE("extrapolation recovers its own model") {
  std::vector<double> t, d;
  for (int k = 4; k <= 14; ++k) {
    const double x = std::ldexp(1.0, -k);
    t.push_back(x);
    d.push_back(1.0 + x * std::log(1.0 / x));
  }
  const LimitFit fit = extrapolate_limit(t, d);
  CHECK(std::abs(fit.C - 1.0) < 1e-10);
  CHECK(fit.coeff_tlogt == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(fit.coeff_t) < 1e-7);
  CHECK(fit.err_estimate < 1e-10);
  CHECK(fit.err_estimate >= 0);

  std::vector<double> noisy(d);
  for (std::size_t i = 0; i < noisy.size(); ++i) noisy[i] += (i % 2 ? 1e-8 : -1e-8);
  CHECK(extrapolate_limit(t, noisy).err_estimate >= 1e-8);
}

TEST_CASE("extrapolation rejects bad grids") {
  const std::vector<double> few = {0.1, 0.05, 0.02};
  CHECK_THROWS_AS(extrapolate_limit(few, few), Error);
  const std::vector<double> narrow = {0.1, 0.0999, 0.0998, 0.0997, 0.0996};
  try {
    extrapolate_limit(narrow, narrow);
    FAIL("expected an ill-conditioned fit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IllConditionedFit);
  }
  const std::vector<double> rising = {0.01, 0.02, 0.04, 0.08};
  CHECK_THROWS_AS(extrapolate_limit(rising, rising), Error);
}
