#pragma once

#include <span>

namespace phc {

// Least-squares model D(t) = C + a t ln(1/t) + b t.
struct LimitFit {
  double C = 0;
  double coeff_tlogt = 0;
  double coeff_t = 0;
  double err_estimate = 0;
  // Median of log-ratios of successive |D(t_k) - C|; NaN when undefined.
  double observed_order = 0;
  int samples_used = 0;
};

// t strictly decreasing, all in (0, 1), at least 4 samples. The fit uses
// the ceil(2n/3) smallest t (at least 4). err_estimate is the largest fit
// residual plus the change in C when the largest remaining t is dropped.
LimitFit extrapolate_limit(std::span<const double> t,
                           std::span<const double> values);

}  // namespace phc
