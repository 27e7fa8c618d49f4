#pragma once

// gamma(l s) = int_{S^{d-1}} [ V_u / 2 - (g(0) - g(l s u)) / (l s) ] du,
// parametrised by s in (0, 1] with l the support radius, and its
// s^{-1}-weighted integral over (0, 1].

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "phc/quadrature.hpp"
#include "phc/shapes.hpp"

namespace phc {

// gamma_B(2 s) for the unit ball in R^d, d >= 2.
double ball_gamma(int d, double s);
// The upper bound A_d w_{d-1} sigma_d s^2 on ball_gamma(d, s).
double ball_gamma_bound(int d, double s);
// gamma_Q(2 sqrt(2) s) for the square [-1, 1]^2.
double square_gamma(double s);

struct GammaIntegral {
  double value = 0;
  double err_estimate = 0;
  // Dyadic contributions decay geometrically (class-W diagnostic).
  bool integrable = false;
  std::vector<double> panel_values;
};

// Shareable evaluator of s -> gamma(l s). Closed forms are used for the
// ball, squares and intervals; other shapes go through circle quadrature
// of the covariance difference quotient, memoised per s.
class GammaProfile {
 public:
  GammaProfile(Shape shape, QuadSpec quad);

  const Shape& shape() const { return shape_; }
  const QuadSpec& quad() const { return quad_; }
  bool closed_form() const { return closed_form_; }

  // s in (0, 1]. Throws Error(NegativeGamma) below -1e-8.
  double eval(double s) const;

  // For s <= linear_limit(), gamma(l s) = linear_slope() * s exactly.
  double linear_limit() const { return linear_limit_; }
  double linear_slope() const;

  // Points of (0, 1) where s -> gamma(l s) may fail to be smooth.
  const std::vector<double>& breakpoints() const { return breakpoints_; }

  // Cached; does not throw on divergence, see `integrable`.
  const GammaIntegral& weighted_integral() const;

 private:
  double numeric(double s) const;

  Shape shape_;
  QuadSpec quad_;
  bool closed_form_ = false;
  double linear_limit_ = 0;
  std::vector<double> breakpoints_;

  struct Cache;
  std::shared_ptr<Cache> cache_;
};

// Closed form where available, quadrature otherwise.
double gamma(const Shape& shape, double s, const QuadSpec& quad);

// Always by sphere/circle quadrature of the difference quotient.
double gamma_numeric(const Shape& shape, double s, const QuadSpec& quad);

// Throws Error(DivergenceSuspected) when the dyadic contributions do not
// decay.
GammaIntegral gamma_weighted_integral(const Shape& shape, const QuadSpec& quad);

// Published values: ball d = 2, 3, squares and intervals.
std::optional<double> gamma_weighted_integral_closed(const Shape& shape);

}  // namespace phc
