#pragma once

// Heat content H(t) = int p_t(z) g(z) dz and the decomposition
//
//   |Ω| - H(t) = |Ω| phi(t) + (Per/pi) t Psi(t) - t R(t),
//   D(t) = |Ω| phi(t)/t + (Per/pi) F(t) - R(t)  ->  C  as t -> 0,
//
// with Psi(t) = ln(1/t) + F(t).

#include <optional>
#include <span>
#include <vector>

#include "phc/extrapolation.hpp"
#include "phc/gamma.hpp"
#include "phc/quadrature.hpp"
#include "phc/shapes.hpp"

namespace phc {

struct ExpansionBreakdown {
  double t = 0;
  double H = 0;
  double phi = 0;
  double psi = 0;
  double F = 0;
  double R = 0;
  double residual = 0;
  double D = 0;
};

struct PsiF {
  double psi = 0;
  double F = 0;
  // F from ln(l + sqrt(l^2 + t^2)) + int_0^{asinh(l/t)} (tanh^d - 1).
  double F_identity = 0;
};

struct ThirdTermPieces {
  double gamma_integral = 0;
  double F_limit = 0;
  double phi_slope = 0;
};

struct ThirdTermReport {
  double C_formula = 0;
  std::optional<double> C_closed;
  double C_extrapolated = 0;
  double extrapolation_err = 0;
  ThirdTermPieces pieces;
  LimitFit fit;
  std::vector<double> t_grid;
  std::vector<double> D;
  bool gamma_integrable = false;
};

// Heat expansion of one shape; construction is cheap, the gamma integral
// is computed on first use and shared by copies.
class HeatExpansion {
 public:
  HeatExpansion(const Shape& shape, const QuadSpec& quad);

  const Shape& shape() const { return profile_.shape(); }
  const GammaProfile& gamma_profile() const { return profile_; }

  double heat_content(double t) const;

  double phi(double t) const;
  // phi(t)/t evaluated without division cancellation.
  double phi_over_t(double t) const;
  double phi_slope() const;

  PsiF psi_F(double t) const;
  double F_limit() const;

  double big_R(double t) const;
  double R_limit() const;

  // D(t) alone, without the heat content.
  double limit_quantity(double t) const;
  ExpansionBreakdown decomposition(double t) const;

  // t_grid strictly decreasing with at least 4 points in (0, 1).
  ThirdTermReport third_term(std::span<const double> t_grid) const;

  double C_formula() const;

 private:
  GammaProfile profile_;
  QuadSpec quad_;
  QuadSpec fine_;
};

double heat_content(const Shape& shape, double t, const QuadSpec& quad);
double phi(const Shape& shape, double t);
double phi_slope(const Shape& shape);
PsiF psi_F(const Shape& shape, double t, const QuadSpec& quad = {});
double F_limit(const Shape& shape);
double big_R(const Shape& shape, double t, const QuadSpec& quad);
double R_limit(const Shape& shape, const QuadSpec& quad);
ExpansionBreakdown decomposition(const Shape& shape, double t,
                                 const QuadSpec& quad);
ThirdTermReport third_term(const Shape& shape, const QuadSpec& quad,
                           std::span<const double> t_grid);

// Published third-term constants: ball d = 2, 3, the square [-1,1]^2 and
// intervals.
std::optional<double> third_term_closed(const Shape& shape);

// t_k = t_max * (t_min / t_max)^(k / (count - 1)), decreasing.
std::vector<double> geometric_grid(double t_max, double t_min, int count);
// 2^-k, k = 4..16.
std::vector<double> default_t_grid();

}  // namespace phc
