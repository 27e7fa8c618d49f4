#include "phc/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "parallel.hpp"
#include "phc/covariance.hpp"
#include "phc/errors.hpp"
#include "phc/kernel.hpp"

namespace phc {

namespace {

constexpr double kPi = std::numbers::pi;

void check_t(double t) {
  if (!(t > 0) || !std::isfinite(t))
    throw Error(ErrorCode::Domain, "t must be positive and finite");
}

// t / (t^2 + r^2)^((d+1)/2), scaled to avoid under/overflow.
double kernel_profile(int d, double t, double r) {
  const double q = std::hypot(t, r);
  return (t / q) * std::pow(q, -d);
}

// Radii t * 4^m inside (0, limit) to resolve the kernel peak.
std::vector<double> kernel_scales(double t, double limit) {
  std::vector<double> out;
  for (double r = t / 16.0; r < limit; r *= 4.0)
    if (r > 0) out.push_back(r);
  return out;
}

// int_0^b cos^{d-1}; the integrand is entire, so a fixed rule is exact to
// rounding for b <= pi/2.
double cos_power_integral(int d, double b) {
  const GaussRule& rule = gauss_legendre(32);
  double sum = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * std::pow(std::cos(0.5 * b * (rule.nodes[i] + 1.0)), d - 1);
  return 0.5 * b * sum;
}

// tanh^d(x) - 1 via q = 1 - tanh(x) = 2 / (e^{2x} + 1).
double tanh_power_minus_one(int d, double x) {
  const double q = 2.0 / (std::exp(2.0 * x) + 1.0);
  return std::expm1(d * std::log1p(-q));
}

}  // namespace

HeatExpansion::HeatExpansion(const Shape& shape, const QuadSpec& quad)
    : profile_(shape, quad),
      quad_(quad),
      fine_(quad.with_tolerance(quad.abs_tol * 1e-3, quad.rel_tol * 1e-3)) {}

double HeatExpansion::heat_content(double t) const {
  check_t(t);
  const Shape& s = shape();
  const Dim d(s.dim());
  const double volume = s.geometry().volume;
  const double ell = s.geometry().support_radius;
  const std::vector<double> scales = kernel_scales(t, ell);
  double h = 0;
  if (s.is_ball() || s.is_interval()) {
    const QuadResult r = integrate_1d(
        [&](double x) {
          return std::pow(x, d - 1) * kernel_profile(d, t, x) *
                 radial_covariance(s, x);
        },
        0.0, ell, quad_, scales);
    h = unit_sphere_area(d) * kappa(d) * r.value;
  } else {
    const double k2 = kappa(d);
    h = polar_integral(
            s, [&](double x) { return k2 * kernel_profile(2, t, x); }, quad_,
            scales)
            .value;
  }
  return std::clamp(h, 0.0, volume);
}

double HeatExpansion::phi(double t) const {
  check_t(t);
  const Dim d(shape().dim());
  const double ell = shape().geometry().support_radius;
  return unit_sphere_area(d) * kappa(d) *
         cos_power_integral(d, std::atan(t / ell));
}

double HeatExpansion::phi_over_t(double t) const {
  check_t(t);
  const Dim d(shape().dim());
  const double ell = shape().geometry().support_radius;
  const double b = std::atan(t / ell);
  // cos_power_integral is b times a mean, so dividing by t is exact.
  return unit_sphere_area(d) * kappa(d) * (cos_power_integral(d, b) / b) * (b / t);
}

double HeatExpansion::phi_slope() const {
  const Dim d(shape().dim());
  return unit_sphere_area(d) * kappa(d) / shape().geometry().support_radius;
}

PsiF HeatExpansion::psi_F(double t) const {
  check_t(t);
  const int d = shape().dim();
  const double ell = shape().geometry().support_radius;
  const double upper = ell / t;

  std::vector<double> breaks;
  for (double r = 1.0 / 16.0; r < upper; r *= 2.0) breaks.push_back(r);
  const QuadResult psi = integrate_1d(
      [d](double r) {
        const double q = std::hypot(1.0, r);
        return std::pow(r / q, d) / q;
      },
      0.0, upper, fine_, breaks);

  const double x_max = std::asinh(upper);
  std::vector<double> tbreaks;
  for (double x = 0.5; x < x_max; x *= 2.0) tbreaks.push_back(x);
  const QuadResult deficit = integrate_1d(
      [d](double x) { return tanh_power_minus_one(d, x); }, 0.0, x_max, fine_,
      tbreaks);

  PsiF out;
  out.psi = psi.value;
  out.F_identity = std::log(ell + std::hypot(ell, t)) + deficit.value;
  out.F = out.psi + std::log(t);
  const double tol =
      100.0 * std::max(quad_.abs_tol, quad_.rel_tol * std::abs(out.psi));
  if (std::abs(out.F - out.F_identity) > tol) {
    std::ostringstream os;
    os << "F identity check failed at t = " << t << ": " << out.F << " vs "
       << out.F_identity;
    throw Error(ErrorCode::QuadratureFailure, os.str());
  }
  return out;
}

double HeatExpansion::F_limit() const {
  const Dim d(shape().dim());
  return std::log(2.0 * shape().geometry().support_radius) + tanh_deficit(d);
}

double HeatExpansion::big_R(double t) const {
  check_t(t);
  const int d = shape().dim();
  const double a = t / shape().geometry().support_radius;
  auto weight = [d, a](double s) {
    const double q = std::hypot(a, s);
    return std::pow(s / q, d) / q;
  };

  DyadicOptions options;
  options.breakpoints = profile_.breakpoints();
  for (double m : {0.25, 0.5, 1.0, 2.0, 4.0})
    if (a * m < 1.0) options.breakpoints.push_back(a * m);
  std::sort(options.breakpoints.begin(), options.breakpoints.end());

  if (profile_.linear_limit() > 0 && !profile_.closed_form()) {
    const double slope = profile_.linear_slope();
    const double limit = profile_.linear_limit();
    const QuadSpec panel = fine_;
    options.exact_panel = [=](double lo, double hi, double& value) {
      if (hi > limit) return false;
      const std::vector<double> at = {a};
      value = slope * integrate_1d([&](double s) { return s * weight(s); }, lo,
                                   hi, panel, at)
                          .value;
      return true;
    };
  }
  const DyadicResult r = integrate_dyadic(
      [&](double s) { return weight(s) * profile_.eval(s); }, quad_, options);
  const double value = kappa(Dim(d)) * r.value;

  const double limit = R_limit();
  const double slack = 1e-8 * std::max(1.0, std::abs(limit));
  if (value < -slack || value > limit + slack) {
    std::ostringstream os;
    os << "R(" << t << ") = " << value << " outside [0, " << limit << "]";
    throw Error(ErrorCode::BoundViolation, os.str());
  }
  return value;
}

double HeatExpansion::R_limit() const {
  return kappa(Dim(shape().dim())) * profile_.weighted_integral().value;
}

double HeatExpansion::limit_quantity(double t) const {
  const ShapeGeometry& g = shape().geometry();
  return g.volume * phi_over_t(t) + g.perimeter / kPi * psi_F(t).F_identity -
         big_R(t);
}

ExpansionBreakdown HeatExpansion::decomposition(double t) const {
  check_t(t);
  const ShapeGeometry& g = shape().geometry();
  ExpansionBreakdown b;
  b.t = t;
  b.H = heat_content(t);
  b.phi = phi(t);
  const PsiF pf = psi_F(t);
  b.psi = pf.psi;
  b.F = pf.F_identity;
  b.R = big_R(t);
  b.residual = (g.volume - b.H) -
               (g.volume * b.phi + g.perimeter / kPi * t * b.psi - t * b.R);
  b.D = g.volume * phi_over_t(t) + g.perimeter / kPi * b.F - b.R;
  return b;
}

double HeatExpansion::C_formula() const {
  const ShapeGeometry& g = shape().geometry();
  const Dim d(g.dim);
  const GammaIntegral& gi = profile_.weighted_integral();
  if (!gi.integrable)
    throw Error(ErrorCode::DivergenceSuspected,
                "gamma integral does not converge for " + shape().describe());
  return kappa(d) * (g.volume * unit_sphere_area(d) / g.support_radius - gi.value) +
         g.perimeter / kPi * F_limit();
}

ThirdTermReport HeatExpansion::third_term(std::span<const double> t_grid) const {
  if (t_grid.size() < 4)
    throw Error(ErrorCode::Domain, "third term needs at least 4 grid points");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] < t_grid[i - 1]))
      throw Error(ErrorCode::Domain, "t grid must be strictly decreasing");

  ThirdTermReport rep;
  rep.t_grid.assign(t_grid.begin(), t_grid.end());
  rep.D.assign(t_grid.size(), 0.0);
  // Warm the shared caches before fanning out.
  const GammaIntegral& gi = profile_.weighted_integral();
  rep.gamma_integrable = gi.integrable;
  detail::parallel_for(t_grid.size(),
                       [&](std::size_t i) { rep.D[i] = limit_quantity(t_grid[i]); });

  rep.pieces = {gi.value, F_limit(), phi_slope()};
  rep.C_formula = C_formula();
  rep.C_closed = third_term_closed(shape());
  rep.fit = extrapolate_limit(rep.t_grid, rep.D);
  rep.C_extrapolated = rep.fit.C;
  rep.extrapolation_err = rep.fit.err_estimate;
  if (rep.C_closed && std::abs(rep.C_formula - *rep.C_closed) > 1e-6) {
    std::ostringstream os;
    os.precision(17);
    os << "assembled constant " << rep.C_formula << " disagrees with "
       << *rep.C_closed << " for " << shape().describe();
    throw Error(ErrorCode::InconsistentConstant, os.str());
  }
  return rep;
}

double heat_content(const Shape& shape, double t, const QuadSpec& quad) {
  return HeatExpansion(shape, quad).heat_content(t);
}
double phi(const Shape& shape, double t) {
  return HeatExpansion(shape, QuadSpec{}).phi(t);
}
double phi_slope(const Shape& shape) {
  return HeatExpansion(shape, QuadSpec{}).phi_slope();
}
PsiF psi_F(const Shape& shape, double t, const QuadSpec& quad) {
  return HeatExpansion(shape, quad).psi_F(t);
}
double F_limit(const Shape& shape) {
  return HeatExpansion(shape, QuadSpec{}).F_limit();
}
double big_R(const Shape& shape, double t, const QuadSpec& quad) {
  return HeatExpansion(shape, quad).big_R(t);
}
double R_limit(const Shape& shape, const QuadSpec& quad) {
  return HeatExpansion(shape, quad).R_limit();
}
ExpansionBreakdown decomposition(const Shape& shape, double t,
                                 const QuadSpec& quad) {
  return HeatExpansion(shape, quad).decomposition(t);
}
ThirdTermReport third_term(const Shape& shape, const QuadSpec& quad,
                           std::span<const double> t_grid) {
  return HeatExpansion(shape, quad).third_term(t_grid);
}

std::optional<double> third_term_closed(const Shape& shape) {
  if (const auto* b = std::get_if<UnitBall>(&shape.kind())) {
    if (b->dim == 2) return 6.0 * std::log(2.0) - 2.0;
    if (b->dim == 3) return 4.0 * std::log(2.0);
    return std::nullopt;
  }
  if (const auto* iv = std::get_if<Interval>(&shape.kind()))
    return 2.0 / kPi * (1.0 + std::log(iv->b - iv->a));
  if (const auto* r = std::get_if<Rectangle>(&shape.kind())) {
    if (r->half_widths[0] == 1.0 && r->half_widths[1] == 1.0) {
      const double root2 = std::sqrt(2.0);
      return 4.0 / kPi *
             (2.0 * (root2 - 1.0) + std::log(16.0 / (3.0 + 2.0 * root2)));
    }
  }
  return std::nullopt;
}

std::vector<double> geometric_grid(double t_max, double t_min, int count) {
  if (!(t_min > 0) || !(t_min < t_max) || count < 2)
    throw Error(ErrorCode::Domain, "geometric grid needs 0 < t_min < t_max, count >= 2");
  std::vector<double> out(count);
  // Base-2 exponents keep dyadic grids exact.
  const double ratio = std::log2(t_min / t_max);
  for (int k = 0; k < count; ++k)
    out[k] = t_max * std::exp2(ratio * k / (count - 1));
  out.front() = t_max;
  out.back() = t_min;
  return out;
}

std::vector<double> default_t_grid() {
  std::vector<double> out;
  for (int k = 4; k <= 16; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

}  // namespace phc
