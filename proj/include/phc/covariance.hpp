#pragma once

// Set covariance g(y) = |shape ∩ (shape + y)|.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "phc/quadrature.hpp"
#include "phc/shapes.hpp"

namespace phc {

// Theta(z) = int_0^{arcsin z} sin^{d-2} cos^2, 0 <= z <= 1, d >= 2.
double theta_integral(int d, double z);

// Theta(1) - Theta(sqrt(1 - s^2)) = int_0^{arcsin s} cos^{d-2} sin^2,
// evaluated without cancellation for small s.
double theta_complement(int d, double s);

double covariance(const Shape& shape, std::span<const double> y);
double covariance(const Shape& shape, Point2 y);

// g(r u) for radial shapes (ball, interval); r >= 0.
double radial_covariance(const Shape& shape, double r);

// Area of the intersection of two convex counterclockwise polygons.
double convex_intersection_area(std::span<const Point2> p,
                                std::span<const Point2> q);

// Largest r with r u in the support of g (2-D shapes with an arrangement).
double support_extent(const Shape& shape, Point2 u);

// Radii in (0, limit) where r -> g(r u) changes its polynomial piece.
std::vector<double> ray_breakpoints(const Shape& shape, Point2 u, double limit);

// Angles where theta -> g(rho u(theta)) has kinks (2-D shapes).
std::vector<double> circle_breakpoints(const Shape& shape, double rho);

struct PropertyCheck {
  std::string name;
  bool passed = false;
  double worst = 0;       // largest violation or discrepancy seen
  double tolerance = 0;
  std::vector<double> witness;
};

struct CovarianceReport {
  std::vector<PropertyCheck> checks;
  bool all_passed() const;
};

// Randomized probes of 0 <= g <= g(0) = |shape|, symmetry, int g = |shape|^2,
// vanishing beyond the support radius and the Lipschitz slope V_u / 2.
CovarianceReport covariance_self_checks(const Shape& shape,
                                        const QuadSpec& quad,
                                        std::uint64_t seed, int probes = 200);

// Integral of g over R^d, by polar quadrature.
QuadResult covariance_integral(const Shape& shape, const QuadSpec& quad);

// The eight sector integrals I_0..I_7 whose sum is the weighted gamma
// integral of the square [-1,1]^2.
std::array<double, 8> square_I_terms(const QuadSpec& quad);

}  // namespace phc

namespace phc {

// int over the circle of int_0^{extent(theta)} weight(r) g(r u) r dr, for
// 2-D shapes; extra_radii are added as radial breakpoints on every ray.
QuadResult polar_integral(const Shape& shape,
                          const std::function<double(double)>& weight,
                          const QuadSpec& quad,
                          std::span<const double> extra_radii = {});

}  // namespace phc
