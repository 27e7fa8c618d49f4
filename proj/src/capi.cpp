#include "phc/phc.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "phc/asymptotics.hpp"
#include "phc/covariance.hpp"
#include "phc/errors.hpp"
#include "phc/gamma.hpp"
#include "phc/kernel.hpp"
#include "phc/mc_oracle.hpp"
#include "phc/shape_json.hpp"
#include "phc/verify.hpp"

struct phc_shape {
  phc::Shape shape;
};

struct phc_quad {
  phc::QuadSpec spec;
};

struct phc_verify_report {
  phc::VerifyReport report;
};

namespace {

thread_local std::string last_error;

phc_status status_of(phc::ErrorCode code) {
  using phc::ErrorCode;
  switch (code) {
    case ErrorCode::Domain: return PHC_ERR_DOMAIN;
    case ErrorCode::InvalidShape: return PHC_ERR_INVALID_SHAPE;
    case ErrorCode::DimensionMismatch: return PHC_ERR_DIMENSION_MISMATCH;
    case ErrorCode::NonUnitVector: return PHC_ERR_NON_UNIT_VECTOR;
    case ErrorCode::QuadratureFailure: return PHC_ERR_QUADRATURE;
    case ErrorCode::ToleranceNotMet: return PHC_ERR_TOLERANCE;
    case ErrorCode::NegativeGamma: return PHC_ERR_NEGATIVE_GAMMA;
    case ErrorCode::DivergenceSuspected: return PHC_ERR_DIVERGENCE;
    case ErrorCode::BoundViolation: return PHC_ERR_BOUND_VIOLATION;
    case ErrorCode::InconsistentConstant: return PHC_ERR_INCONSISTENT_CONSTANT;
    case ErrorCode::IllConditionedFit: return PHC_ERR_ILL_CONDITIONED;
    case ErrorCode::SamplingFailure: return PHC_ERR_SAMPLING;
    case ErrorCode::Parse: return PHC_ERR_PARSE;
  }
  return PHC_ERR_INTERNAL;
}

template <class F>
phc_status guarded(F&& f) {
  last_error.clear();
  try {
    f();
    return PHC_OK;
  } catch (const phc::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown exception";
  }
  return PHC_ERR_INTERNAL;
}

phc_status null_arg(const char* what) {
  last_error = std::string("null argument: ") + what;
  return PHC_ERR_NULL;
}

const phc::QuadSpec& spec_of(const phc_quad* quad) {
  static const phc::QuadSpec defaults;
  return quad ? quad->spec : defaults;
}

template <class F>
phc_status new_shape(phc_shape** out, F&& build) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new phc_shape{build()}; });
}

phc_breakdown to_c(const phc::ExpansionBreakdown& b) {
  return {b.t, b.H, b.phi, b.psi, b.F, b.R, b.residual, b.D};
}

}  // namespace

extern "C" {

const char* phc_version(void) { return "0.1.0"; }

const char* phc_status_string(phc_status status) {
  switch (status) {
    case PHC_OK: return "ok";
    case PHC_ERR_DOMAIN: return "domain error";
    case PHC_ERR_INVALID_SHAPE: return "invalid shape";
    case PHC_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case PHC_ERR_NON_UNIT_VECTOR: return "non-unit vector";
    case PHC_ERR_QUADRATURE: return "quadrature failure";
    case PHC_ERR_TOLERANCE: return "tolerance not met";
    case PHC_ERR_NEGATIVE_GAMMA: return "negative gamma";
    case PHC_ERR_DIVERGENCE: return "divergence suspected";
    case PHC_ERR_BOUND_VIOLATION: return "bound violation";
    case PHC_ERR_INCONSISTENT_CONSTANT: return "inconsistent constant";
    case PHC_ERR_ILL_CONDITIONED: return "ill-conditioned fit";
    case PHC_ERR_SAMPLING: return "sampling failure";
    case PHC_ERR_PARSE: return "parse error";
    case PHC_ERR_IO: return "I/O error";
    case PHC_ERR_NULL: return "null argument";
    case PHC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* phc_last_error(void) { return last_error.c_str(); }

phc_status phc_shape_ball(int dim, phc_shape** out) {
  return new_shape(out, [&] { return phc::Shape::ball(dim); });
}

phc_status phc_shape_rectangle(double hx, double hy, phc_shape** out) {
  return new_shape(out, [&] { return phc::Shape::rectangle(hx, hy); });
}

phc_status phc_shape_polygon(const double* xy, size_t count, phc_shape** out) {
  if (!xy && count) return null_arg("xy");
  return new_shape(out, [&] {
    std::vector<phc::Point2> v(count);
    for (size_t i = 0; i < count; ++i) v[i] = {xy[2 * i], xy[2 * i + 1]};
    return phc::Shape::polygon(std::move(v));
  });
}

phc_status phc_shape_interval(double a, double b, phc_shape** out) {
  return new_shape(out, [&] { return phc::Shape::interval(a, b); });
}

phc_status phc_shape_named(const char* name, phc_shape** out) {
  if (!name) return null_arg("name");
  return new_shape(out, [&] { return phc::named_shape(name); });
}

phc_status phc_shape_from_json(const char* json, phc_shape** out) {
  if (!json) return null_arg("json");
  return new_shape(out, [&] { return phc::parse_shape_json(json); });
}

void phc_shape_free(phc_shape* shape) { delete shape; }

phc_status phc_shape_geometry(const phc_shape* shape, phc_geometry* out) {
  if (!shape) return null_arg("shape");
  if (!out) return null_arg("out");
  const phc::ShapeGeometry& g = shape->shape.geometry();
  *out = {g.dim, g.volume, g.perimeter, g.support_radius};
  last_error.clear();
  return PHC_OK;
}

phc_status phc_shape_describe(const phc_shape* shape, char* buf, size_t size) {
  if (!shape) return null_arg("shape");
  if (!buf || size == 0) return null_arg("buf");
  return guarded([&] {
    const std::string text = shape->shape.describe();
    const size_t n = std::min(size - 1, text.size());
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
  });
}

phc_status phc_quad_new(phc_quad** out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = new phc_quad{}; });
}

phc_status phc_quad_set_tolerance(phc_quad* quad, double abs_tol, double rel_tol) {
  if (!quad) return null_arg("quad");
  return guarded([&] {
    const phc::QuadSpec next = quad->spec.with_tolerance(abs_tol, rel_tol);
    next.validate();
    quad->spec = next;
  });
}

void phc_quad_free(phc_quad* quad) { delete quad; }

phc_status phc_constants_for_dim(int dim, phc_constants* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    const phc::KernelConstants k = phc::kernel_constants(phc::Dim(dim));
    *out = {k.kappa, k.ball_volume, k.sphere_area, k.tanh_deficit};
  });
}

phc_status phc_covariance(const phc_shape* shape, const double* y, size_t dim,
                          double* out) {
  if (!shape) return null_arg("shape");
  if (!y) return null_arg("y");
  if (!out) return null_arg("out");
  return guarded([&] { *out = phc::covariance(shape->shape, std::span<const double>(y, dim)); });
}

phc_status phc_gamma(const phc_shape* shape, double s, const phc_quad* quad, double* out) {
  if (!shape) return null_arg("shape");
  if (!out) return null_arg("out");
  return guarded([&] { *out = phc::gamma(shape->shape, s, spec_of(quad)); });
}

phc_status phc_gamma_integral(const phc_shape* shape, const phc_quad* quad,
                              double* value, double* err, int* integrable) {
  if (!shape) return null_arg("shape");
  if (!value) return null_arg("value");
  return guarded([&] {
    const phc::GammaIntegral gi = phc::gamma_weighted_integral(shape->shape, spec_of(quad));
    *value = gi.value;
    if (err) *err = gi.err_estimate;
    if (integrable) *integrable = gi.integrable;
  });
}

phc_status phc_heat_content(const phc_shape* shape, double t, const phc_quad* quad,
                            double* out) {
  if (!shape) return null_arg("shape");
  if (!out) return null_arg("out");
  return guarded([&] { *out = phc::heat_content(shape->shape, t, spec_of(quad)); });
}

phc_status phc_decomposition(const phc_shape* shape, double t, const phc_quad* quad,
                             phc_breakdown* out) {
  if (!shape) return null_arg("shape");
  if (!out) return null_arg("out");
  return guarded([&] { *out = to_c(phc::decomposition(shape->shape, t, spec_of(quad))); });
}

phc_status phc_sweep(const phc_shape* shape, double t_min, double t_max, int count,
                     const phc_quad* quad, phc_breakdown* rows, phc_status* statuses) {
  if (!shape) return null_arg("shape");
  if (!rows) return null_arg("rows");
  std::vector<double> grid;
  const phc_status grid_status =
      guarded([&] { grid = phc::geometric_grid(t_max, t_min, count); });
  if (grid_status != PHC_OK) return grid_status;

  const phc::HeatExpansion ex(shape->shape, spec_of(quad));
  std::vector<phc_status> status(grid.size(), PHC_OK);
  std::vector<std::string> messages(grid.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  phc::detail::parallel_for(grid.size(), [&](std::size_t i) {
    rows[i] = {grid[i], nan, nan, nan, nan, nan, nan, nan};
    status[i] = guarded([&] { rows[i] = to_c(ex.decomposition(grid[i])); });
    messages[i] = last_error;
  });
  last_error.clear();
  phc_status first = PHC_OK;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (statuses) statuses[i] = status[i];
    if (first == PHC_OK && status[i] != PHC_OK) {
      first = status[i];
      last_error = messages[i];
    }
  }
  return first;
}

phc_status phc_geometric_grid(double t_min, double t_max, int count, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    const std::vector<double> grid = phc::geometric_grid(t_max, t_min, count);
    std::copy(grid.begin(), grid.end(), out);
  });
}

phc_status phc_third_term_compute(const phc_shape* shape, const phc_quad* quad,
                          const double* t_grid, size_t count, phc_third_term* out) {
  if (!shape) return null_arg("shape");
  if (!out) return null_arg("out");
  if (!t_grid && count) return null_arg("t_grid");
  return guarded([&] {
    const std::vector<double> grid =
        count ? std::vector<double>(t_grid, t_grid + count) : phc::default_t_grid();
    const phc::ThirdTermReport r = phc::third_term(shape->shape, spec_of(quad), grid);
    out->C_formula = r.C_formula;
    out->has_closed = r.C_closed.has_value();
    out->C_closed = r.C_closed.value_or(std::numeric_limits<double>::quiet_NaN());
    out->C_extrapolated = r.C_extrapolated;
    out->extrapolation_err = r.extrapolation_err;
    out->gamma_integral = r.pieces.gamma_integral;
    out->F_limit = r.pieces.F_limit;
    out->phi_slope = r.pieces.phi_slope;
    out->coeff_tlogt = r.fit.coeff_tlogt;
    out->coeff_t = r.fit.coeff_t;
    out->observed_order = r.fit.observed_order;
    out->gamma_integrable = r.gamma_integrable;
  });
}

phc_status phc_mc_heat_content(const phc_shape* shape, double t, int64_t n,
                               uint64_t seed, phc_mc_estimate* out) {
  if (!shape) return null_arg("shape");
  if (!out) return null_arg("out");
  return guarded([&] {
    const phc::McEstimate e = phc::mc_heat_content(shape->shape, t, n, seed);
    *out = {e.mean, e.std_error, e.n, e.seed};
  });
}

phc_status phc_mc_covariance(const phc_shape* shape, const double* y, size_t dim,
                             int64_t n, uint64_t seed, phc_mc_estimate* out) {
  if (!shape) return null_arg("shape");
  if (!y) return null_arg("y");
  if (!out) return null_arg("out");
  return guarded([&] {
    const phc::McEstimate e =
        phc::mc_covariance(shape->shape, std::span<const double>(y, dim), n, seed);
    *out = {e.mean, e.std_error, e.n, e.seed};
  });
}

phc_status phc_verify(const char* target, const phc_quad* quad, phc_verify_report** out) {
  if (!target) return null_arg("target");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new phc_verify_report{phc::verify(target, spec_of(quad))}; });
}

size_t phc_verify_row_count(const phc_verify_report* report) {
  return report ? report->report.rows.size() : 0;
}

phc_status phc_verify_row_at(const phc_verify_report* report, size_t index,
                             phc_verify_row* out) {
  if (!report) return null_arg("report");
  if (!out) return null_arg("out");
  if (index >= report->report.rows.size()) {
    last_error = "row index out of range";
    return PHC_ERR_DOMAIN;
  }
  const phc::VerifyRow& r = report->report.rows[index];
  *out = {r.target.c_str(), r.criterion.c_str(), r.achieved, r.required, r.pass,
          r.note.c_str()};
  last_error.clear();
  return PHC_OK;
}

int phc_verify_all_passed(const phc_verify_report* report) {
  return report && report->report.all_passed();
}

void phc_verify_report_free(phc_verify_report* report) { delete report; }

}  // extern "C"
