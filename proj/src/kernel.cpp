#include "phc/kernel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "phc/errors.hpp"
#include "phc/quadrature.hpp"

namespace phc {

namespace {

constexpr double kPi = std::numbers::pi;

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// pi^(n/2)
double pi_half_power(int n) { return std::pow(kPi, 0.5 * n); }

double ball_volume_raw(int d) {
  if (d == 0) return 1.0;
  return pi_half_power(d) / gamma_half(d + 2);
}

}  // namespace

Dim::Dim(int d) : d_(d) {
  if (d < 1 || d > kMaxDim) {
    std::ostringstream os;
    os << "dimension " << d << " outside [1, " << kMaxDim << "]";
    throw Error(ErrorCode::Domain, os.str());
  }
}

double gamma_half(int n) {
  if (n < 1) throw Error(ErrorCode::Domain, "gamma_half needs n >= 1");
  // Gamma(1) = 1, Gamma(1/2) = sqrt(pi), Gamma(x + 1) = x Gamma(x).
  double g = (n % 2 == 0) ? 1.0 : std::sqrt(kPi);
  for (int m = (n % 2 == 0) ? 2 : 1; m + 2 <= n; m += 2) g *= 0.5 * m;
  return g;
}

double kappa(Dim d) { return gamma_half(d + 1) / pi_half_power(d + 1); }

double unit_ball_volume(Dim d) { return ball_volume_raw(d); }

double unit_sphere_area(Dim d) { return d * ball_volume_raw(d); }

double unit_ball_volume_below(Dim d) { return ball_volume_raw(d - 1); }

double unit_sphere_area_below(Dim d) {
  if (d < 2) throw Error(ErrorCode::Domain, "A_{d-1} needs d >= 2");
  return unit_sphere_area(Dim(d - 1));
}

double poisson_kernel_radial(Dim d, double t, double r) {
  if (!(t > 0)) throw Error(ErrorCode::Domain, "kernel time must be positive");
  // Scaled form avoids overflow of (t^2 + r^2)^((d+1)/2) for large r.
  const double q = std::hypot(t, r);
  return kappa(d) * (t / q) * std::pow(q, -d);
}

double poisson_kernel(Dim d, double t, std::span<const double> x) {
  if (static_cast<int>(x.size()) != d.value())
    throw Error(ErrorCode::DimensionMismatch, "kernel point has wrong dimension");
  double r2 = 0;
  for (double v : x) r2 += v * v;
  return poisson_kernel_radial(d, t, std::sqrt(r2));
}

double tanh_deficit_bound(Dim d) {
  double s = 0;
  for (int j = 1; j <= d; ++j) s += binomial(d, j) * std::pow(2.0, j) / (2.0 * j);
  return s;
}

double tanh_deficit(Dim d, double tol) {
  if (!(tol > 0)) throw Error(ErrorCode::Domain, "tolerance must be positive");
  // tanh^d = 1 + sum_j C(d,j) (-2)^j / (e^{2x} + 1)^j, truncated at x*.
  const double cut = 25.0 + d;
  double tail = 0;
  double coef_sum = 0;
  for (int j = 1; j <= d; ++j) {
    const double c = binomial(d, j) * std::pow(2.0, j);
    tail += c * std::exp(-2.0 * j * cut) / (2.0 * j);
    coef_sum += c;
  }
  if (tail > tol) {
    std::ostringstream os;
    os << "tanh deficit tail bound " << tail << " exceeds tolerance " << tol;
    throw Error(ErrorCode::ToleranceNotMet, os.str());
  }
  QuadSpec spec;
  spec.abs_tol = std::max(tol / (4.0 * coef_sum), 1e-300);
  spec.rel_tol = 1e-14;
  const std::vector<double> breaks = {0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  std::vector<double> terms;
  for (int j = 1; j <= d; ++j) {
    const QuadResult r = integrate_1d(
        [j](double x) { return std::pow(1.0 / (std::exp(2.0 * x) + 1.0), j); },
        0.0, cut, spec, breaks);
    const double c = binomial(d, j) * std::pow(-2.0, j);
    terms.push_back(c * r.value);
  }
  return pairwise_sum(terms);
}

KernelConstants kernel_constants(Dim d, double tol) {
  return {kappa(d), unit_ball_volume(d), unit_sphere_area(d),
          tanh_deficit(d, tol)};
}

}  // namespace phc
