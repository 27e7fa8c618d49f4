#include "phc/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "phc/covariance.hpp"
#include "phc/errors.hpp"
#include "phc/kernel.hpp"

namespace phc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegativeTol = 1e-8;

double check_sign(double value, const Shape& shape, double s) {
  if (value < -kNegativeTol) {
    std::ostringstream os;
    os << "gamma(" << s << ") = " << value << " < 0 for " << shape.describe();
    throw Error(ErrorCode::NegativeGamma, os.str());
  }
  return value;
}

void check_s(double s) {
  if (!(s > 0.0 && s <= 1.0))
    throw Error(ErrorCode::Domain, "gamma argument s must lie in (0, 1]");
}

}  // namespace

double ball_gamma(int d, double s) {
  check_s(s);
  const Dim dim(d);
  if (d < 2) throw Error(ErrorCode::Domain, "ball gamma needs d >= 2");
  // 1 - (1 - s^2)^((d-1)/2) without cancellation.
  const double shell = -std::expm1(0.5 * (d - 1) * std::log1p(-s * s));
  return unit_sphere_area(dim) *
         (unit_ball_volume_below(dim) * shell -
          unit_sphere_area_below(dim) * theta_complement(d, s) / s);
}

double ball_gamma_bound(int d, double s) {
  const Dim dim(d);
  const double sigma = (d == 2) ? 1.0 : 0.5 * (d - 1);
  return unit_sphere_area(dim) * unit_ball_volume_below(dim) * sigma * s * s;
}

double square_gamma(double s) {
  check_s(s);
  const double root2 = std::sqrt(2.0);
  if (s <= 1.0 / root2) return 4.0 * root2 * s;
  // Per pi/4 sector: the ray leaves [-2,2]^2 for angles below alpha.
  const double cos_a = 1.0 / (root2 * s);
  const double alpha = std::acos(cos_a);
  const double sin_a = std::sqrt(std::max(0.0, 1.0 - cos_a * cos_a));
  const double sector = root2 * s * (0.5 - sin_a * sin_a) +
                        2.0 * (sin_a + 1.0 - cos_a) - root2 * alpha / s;
  return 8.0 * sector;
}

struct GammaProfile::Cache {
  std::mutex mutex;
  std::map<double, double> values;
  std::once_flag slope_once;
  double slope = 0;
  std::once_flag integral_once;
  GammaIntegral integral;
};

GammaProfile::GammaProfile(Shape shape, QuadSpec quad)
    : shape_(std::move(shape)), quad_(quad), cache_(std::make_shared<Cache>()) {
  quad_.validate();
  const double ell = shape_.geometry().support_radius;
  if (const auto* b = std::get_if<UnitBall>(&shape_.kind())) {
    closed_form_ = true;
    (void)b;
  } else if (shape_.is_interval()) {
    closed_form_ = true;
  } else if (shape_.is_square()) {
    closed_form_ = true;
    linear_limit_ = 1.0 / std::sqrt(2.0);
    breakpoints_ = {linear_limit_};
  } else if (const PolygonArrangement* arr = shape_.arrangement()) {
    linear_limit_ = std::min(1.0, arr->quadratic_radius / ell);
    for (double r : arr->critical_radii) {
      const double s = r / ell;
      if (s > 0 && s < 1) breakpoints_.push_back(s);
    }
    breakpoints_.push_back(linear_limit_);
    std::sort(breakpoints_.begin(), breakpoints_.end());
  } else {
    throw Error(ErrorCode::Domain, "no gamma evaluator for " + shape_.describe());
  }
}

double GammaProfile::eval(double s) const {
  check_s(s);
  if (const auto* b = std::get_if<UnitBall>(&shape_.kind()))
    return check_sign(ball_gamma(b->dim, s), shape_, s);
  if (shape_.is_interval()) return 0.0;
  if (shape_.is_square()) {
    const auto& r = std::get<Rectangle>(shape_.kind());
    return r.half_widths[0] * square_gamma(s);
  }
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->values.find(s);
    if (it != cache_->values.end()) return it->second;
  }
  const double v = numeric(s);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->values.emplace(s, v);
  return v;
}

double GammaProfile::numeric(double s) const {
  return gamma_numeric(shape_, s, quad_);
}

double GammaProfile::linear_slope() const {
  if (linear_limit_ <= 0) return 0.0;
  std::call_once(cache_->slope_once, [this] {
    cache_->slope = eval(linear_limit_) / linear_limit_;
  });
  return cache_->slope;
}

const GammaIntegral& GammaProfile::weighted_integral() const {
  std::call_once(cache_->integral_once, [this] {
    DyadicOptions options;
    options.breakpoints = breakpoints_;
    if (linear_limit_ > 0 && !closed_form_) {
      const double slope = linear_slope();
      const double limit = linear_limit_;
      options.exact_panel = [slope, limit](double lo, double hi, double& value) {
        if (hi > limit) return false;
        value = slope * (hi - lo);
        return true;
      };
    }
    const DyadicResult r = integrate_dyadic(
        [this](double s) { return eval(s) / s; }, quad_, options);
    GammaIntegral out;
    out.value = r.value;
    out.err_estimate = r.err;
    out.integrable = r.decaying;
    out.panel_values = r.panel_values;
    cache_->integral = std::move(out);
  });
  return cache_->integral;
}

double gamma(const Shape& shape, double s, const QuadSpec& quad) {
  return GammaProfile(shape, quad).eval(s);
}

double gamma_numeric(const Shape& shape, double s, const QuadSpec& quad) {
  check_s(s);
  quad.validate();
  const int d = shape.dim();
  const double volume = shape.geometry().volume;
  const double rho = shape.geometry().support_radius * s;

  if (d == 1) {
    double total = 0;
    for (double u : {1.0, -1.0}) {
      const double y = rho * u;
      total += 0.5 * directional_variation(shape, {&u, 1}) -
               (volume - covariance(shape, {&y, 1})) / rho;
    }
    return check_sign(total, shape, s);
  }
  if (d == 2) {
    const std::vector<double> kinks = circle_breakpoints(shape, rho);
    const QuadResult r = integrate_circle(
        [&](double th) {
          const double u[2] = {std::cos(th), std::sin(th)};
          const double y[2] = {rho * u[0], rho * u[1]};
          return 0.5 * directional_variation(shape, u) -
                 (volume - covariance(shape, y)) / rho;
        },
        kinks, quad);
    return check_sign(r.value, shape, s);
  }
  if (d == 3) {
    const QuadResult r = integrate_sphere(
        [&](const Vec3& u) {
          const Vec3 y{rho * u[0], rho * u[1], rho * u[2]};
          return 0.5 * directional_variation(shape, u) -
                 (volume - covariance(shape, y)) / rho;
        },
        quad);
    return check_sign(r.value, shape, s);
  }
  throw Error(ErrorCode::Domain,
              "numeric gamma needs sphere quadrature, available for d <= 3");
}

GammaIntegral gamma_weighted_integral(const Shape& shape, const QuadSpec& quad) {
  GammaIntegral out = GammaProfile(shape, quad).weighted_integral();
  if (!out.integrable) {
    std::ostringstream os;
    os << "dyadic contributions of the gamma integral do not decay for "
       << shape.describe();
    throw Error(ErrorCode::DivergenceSuspected, os.str());
  }
  return out;
}

std::optional<double> gamma_weighted_integral_closed(const Shape& shape) {
  if (const auto* b = std::get_if<UnitBall>(&shape.kind())) {
    if (b->dim == 2) return kPi * (kPi - 4.0 * std::log(2.0));
    if (b->dim == 3) return 2.0 * kPi * kPi / 3.0;
    return std::nullopt;
  }
  if (shape.is_interval()) return 0.0;
  if (shape.is_square()) {
    const double h = std::get<Rectangle>(shape.kind()).half_widths[0];
    const double root2 = std::sqrt(2.0);
    return h * (2.0 * root2 * (kPi - 8.0) +
                8.0 * std::log(2.0 * (3.0 + 2.0 * root2)));
  }
  return std::nullopt;
}

}  // namespace phc
