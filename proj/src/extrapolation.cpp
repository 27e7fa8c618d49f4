#include "phc/extrapolation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "phc/errors.hpp"

namespace phc {

namespace {

struct Fit {
  Eigen::Vector3d coeffs;
  double max_residual = 0;
};

Fit least_squares(std::span<const double> t, std::span<const double> v) {
  const Eigen::Index n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  const double t_scale = *std::max_element(t.begin(), t.end());
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ti = t[static_cast<std::size_t>(i)];
    a(i, 0) = 1.0;
    a(i, 1) = ti * std::log(1.0 / ti) / t_scale;
    a(i, 2) = ti / t_scale;
    b(i) = v[static_cast<std::size_t>(i)];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-12);
  if (qr.rank() < 3)
    throw Error(ErrorCode::IllConditionedFit,
                "limit fit is rank deficient; widen the t range");
  Eigen::Vector3d x = qr.solve(b);
  Fit fit;
  fit.max_residual = (a * x - b).cwiseAbs().maxCoeff();
  x(1) /= t_scale;
  x(2) /= t_scale;
  fit.coeffs = x;
  return fit;
}

}  // namespace

LimitFit extrapolate_limit(std::span<const double> t,
                           std::span<const double> values) {
  const std::size_t n = t.size();
  if (n != values.size())
    throw Error(ErrorCode::Domain, "t and value sequences differ in length");
  if (n < 4) throw Error(ErrorCode::Domain, "extrapolation needs >= 4 samples");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(t[i] > 0 && t[i] < 1) || !std::isfinite(values[i]))
      throw Error(ErrorCode::Domain, "samples need t in (0, 1) and finite values");
    if (i > 0 && !(t[i] < t[i - 1]))
      throw Error(ErrorCode::Domain, "t must be strictly decreasing");
  }
  std::size_t m = (2 * n + 2) / 3;
  m = std::max(m, std::min<std::size_t>(n, 4));
  const auto tw = t.subspan(n - m);
  const auto vw = values.subspan(n - m);
  if (tw.front() / tw.back() < 2.0)
    throw Error(ErrorCode::IllConditionedFit,
                "t range of the fit window is too narrow");

  const Fit full = least_squares(tw, vw);
  LimitFit out;
  out.C = full.coeffs(0);
  out.coeff_tlogt = full.coeffs(1);
  out.coeff_t = full.coeffs(2);
  out.samples_used = static_cast<int>(m);
  double drop_change = 0;
  if (m - 1 >= 3 && tw[1] / tw.back() >= 2.0) {
    const Fit reduced = least_squares(tw.subspan(1), vw.subspan(1));
    drop_change = std::abs(reduced.coeffs(0) - out.C);
  }
  out.err_estimate = full.max_residual + drop_change;

  std::vector<double> orders;
  for (std::size_t i = n - m; i + 1 < n; ++i) {
    const double e0 = std::abs(values[i] - out.C);
    const double e1 = std::abs(values[i + 1] - out.C);
    if (e0 > 0 && e1 > 0) {
      const double p = std::log(e0 / e1) / std::log(t[i] / t[i + 1]);
      if (std::isfinite(p)) orders.push_back(p);
    }
  }
  if (orders.empty()) {
    out.observed_order = std::numeric_limits<double>::quiet_NaN();
  } else {
    std::sort(orders.begin(), orders.end());
    const std::size_t k = orders.size();
    out.observed_order =
        (k % 2 == 1) ? orders[k / 2] : 0.5 * (orders[k / 2 - 1] + orders[k / 2]);
  }
  return out;
}

}  // namespace phc
