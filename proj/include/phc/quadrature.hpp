#pragma once

// Numerical substrate: adaptive Gauss-Kronrod on intervals, dyadic panel
// integration toward a singular endpoint, composite Gauss-Legendre on the
// circle, product rules on S^2 and limit extrapolation.

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace phc {

struct QuadSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 10000;
  int sphere_polar_order = 64;
  int sphere_azimuth_order = 128;
  int circle_points_per_sector = 64;

  // Throws Error(Domain) when a tolerance is not positive or an order < 8.
  void validate() const;
  // Same orders, tighter or looser tolerances.
  QuadSpec with_tolerance(double abs, double rel) const;
};

struct QuadResult {
  double value = 0;
  double err = 0;
};

using Integrand = std::function<double(double)>;

// Adaptive G7/K15 bisection. Points in `breakpoints` that fall in (a, b)
// seed the initial panel list. Throws Error(QuadratureFailure) on a
// non-finite sample or when max_subdivisions is exceeded.
QuadResult integrate_1d(const Integrand& f, double a, double b,
                        const QuadSpec& spec,
                        std::span<const double> breakpoints = {});

struct DyadicResult {
  double value = 0;
  double err = 0;
  // Contribution of panel (2^-(k+1), 2^-k], k = 0..panels-1.
  std::vector<double> panel_values;
  // Contributions shrink geometrically in the tail.
  bool decaying = false;
};

struct DyadicOptions {
  int panels = 48;
  std::vector<double> breakpoints;
  // When set and returning a value for a panel (lo, hi], that value is
  // used for the panel instead of quadrature.
  std::function<bool(double lo, double hi, double& value)> exact_panel;
};

// Integral over (0, 1] split into dyadic panels; panels are summed from
// the smallest to the largest.
DyadicResult integrate_dyadic(const Integrand& f, const QuadSpec& spec,
                              const DyadicOptions& options = {});

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int order);

// Integral over [0, 2pi). Kinks are reduced modulo 2pi and split panels;
// each panel gets a composite Gauss-Legendre rule with
// circle_points_per_sector points, and the error is the difference to the
// doubled order. Panels whose doubled-order difference is too large are
// bisected.
QuadResult integrate_circle(const Integrand& f, std::span<const double> kinks,
                            const QuadSpec& spec);

using Vec3 = std::array<double, 3>;

// Product rule on S^2: Gauss-Legendre in cos(polar) times the trapezoid
// rule in azimuth. err is the change under order doubling.
QuadResult integrate_sphere(const std::function<double(const Vec3&)>& f,
                            const QuadSpec& spec);

// Pairwise summation; the order of `values` fixes the result.
double pairwise_sum(std::span<const double> values);

}  // namespace phc
