#pragma once

// Dimension constants and the Poisson (Cauchy) kernel
//
//   p_t(x) = kappa_d t / (t^2 + |x|^2)^((d+1)/2),
//   kappa_d = Gamma((d+1)/2) / pi^((d+1)/2).

#include <span>

namespace phc {

inline constexpr int kMaxDim = 16;

// Spatial dimension, 1 <= d <= kMaxDim.
class Dim {
 public:
  explicit Dim(int d);
  int value() const noexcept { return d_; }
  operator int() const noexcept { return d_; }

 private:
  int d_;
};

struct KernelConstants {
  double kappa = 0;
  double ball_volume = 0;
  double sphere_area = 0;
  double tanh_deficit = 0;
};

// Gamma(n/2) for n >= 1 by exact half-integer recursion.
double gamma_half(int n);

double kappa(Dim d);
double unit_ball_volume(Dim d);
double unit_sphere_area(Dim d);

// w_{d-1}, with w_0 = 1 so that d = 1 works.
double unit_ball_volume_below(Dim d);
// A_{d-1} for d >= 2.
double unit_sphere_area_below(Dim d);

double poisson_kernel(Dim d, double t, std::span<const double> x);
// Radial profile p_t(r e_d).
double poisson_kernel_radial(Dim d, double t, double r);

// J_d = int_0^inf (tanh^d(theta) - 1) d theta, to absolute accuracy tol.
double tanh_deficit(Dim d, double tol = 1e-13);

// The bound sum_j C(d,j) 2^j / (2j) on |J_d|.
double tanh_deficit_bound(Dim d);

KernelConstants kernel_constants(Dim d, double tol = 1e-13);

}  // namespace phc
