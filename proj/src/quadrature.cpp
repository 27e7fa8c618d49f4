#include "phc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>
#include <sstream>

#include "phc/errors.hpp"

namespace phc {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Kronrod 15-point abscissae (non-negative half) with weights; the Gauss
// 7-point rule uses the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a = 0;
  double b = 0;
  double value = 0;
  double err = 0;
  bool splittable = true;
};

double checked(const Integrand& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "non-finite integrand sample at x = " << x;
    throw Error(ErrorCode::QuadratureFailure, os.str());
  }
  return v;
}

Panel gauss_kronrod(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f, center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::abs(kronrod);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = checked(f, center - dx);
    const double f2 = checked(f, center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = kronrod * half;
  const double roundoff = 5.0 * kEps * abs_sum * std::abs(half);
  p.err = std::max(std::abs((kronrod - gauss) * half), roundoff);
  // A panel whose error is pure roundoff or whose width is at the
  // resolution of doubles cannot be improved by bisection.
  const double width_floor =
      100.0 * kEps * std::max({std::abs(a), std::abs(b), 1e-300});
  p.splittable = (b - a) > width_floor &&
                 std::abs((kronrod - gauss) * half) > roundoff;
  return p;
}

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const { return x.err < y.err; }
};

}  // namespace

void QuadSpec::validate() const {
  if (!(abs_tol > 0) || !(rel_tol > 0))
    throw Error(ErrorCode::Domain, "quadrature tolerances must be positive");
  if (max_subdivisions < 1)
    throw Error(ErrorCode::Domain, "max_subdivisions must be positive");
  if (sphere_polar_order < 8 || sphere_azimuth_order < 8 ||
      circle_points_per_sector < 8)
    throw Error(ErrorCode::Domain, "quadrature orders must be at least 8");
}

QuadSpec QuadSpec::with_tolerance(double abs, double rel) const {
  QuadSpec out = *this;
  out.abs_tol = abs;
  out.rel_tol = rel;
  return out;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t mid = values.size() / 2;
  return pairwise_sum(values.first(mid)) + pairwise_sum(values.subspan(mid));
}

QuadResult integrate_1d(const Integrand& f, double a, double b,
                        const QuadSpec& spec,
                        std::span<const double> breakpoints) {
  if (!(a < b)) {
    if (a == b) return {};
    throw Error(ErrorCode::Domain, "integrate_1d requires a < b");
  }
  std::vector<double> edges{a};
  for (double x : breakpoints)
    if (x > a && x < b) edges.push_back(x);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::priority_queue<Panel, std::vector<Panel>, ByError> open;
  std::vector<Panel> done;
  double total = 0;
  double total_err = 0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel p = gauss_kronrod(f, edges[i], edges[i + 1]);
    total += p.value;
    total_err += p.err;
    if (p.splittable)
      open.push(p);
    else
      done.push_back(p);
  }

  int panels = static_cast<int>(edges.size()) - 1;
  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total)) &&
         !open.empty()) {
    if (panels >= spec.max_subdivisions) {
      std::ostringstream os;
      os << "max subdivisions (" << spec.max_subdivisions
         << ") exceeded on [" << a << ", " << b << "], error estimate "
         << total_err;
      throw Error(ErrorCode::QuadratureFailure, os.str());
    }
    const Panel worst = open.top();
    open.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    ++panels;
    for (const Panel& p : {left, right}) {
      if (p.splittable)
        open.push(p);
      else
        done.push_back(p);
    }
  }

  while (!open.empty()) {
    done.push_back(open.top());
    open.pop();
  }
  // Deterministic final summation in panel order.
  std::sort(done.begin(), done.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  std::vector<double> values(done.size());
  std::vector<double> errs(done.size());
  for (std::size_t i = 0; i < done.size(); ++i) {
    values[i] = done[i].value;
    errs[i] = done[i].err;
  }
  QuadResult r{pairwise_sum(values), pairwise_sum(errs)};
  if (r.err > std::max(spec.abs_tol, spec.rel_tol * std::abs(r.value))) {
    std::ostringstream os;
    os << "roundoff prevents reaching tolerance on [" << a << ", " << b
       << "], error estimate " << r.err;
    throw Error(ErrorCode::QuadratureFailure, os.str());
  }
  return r;
}

DyadicResult integrate_dyadic(const Integrand& f, const QuadSpec& spec,
                              const DyadicOptions& options) {
  if (options.panels < 1 || options.panels > 1000)
    throw Error(ErrorCode::Domain, "dyadic panel count out of range");
  const int n = options.panels;
  DyadicResult out;
  out.panel_values.assign(n, 0.0);
  const QuadSpec panel_spec =
      spec.with_tolerance(spec.abs_tol / 4.0, spec.rel_tol);
  double err = 0;
  for (int k = 0; k < n; ++k) {
    const double hi = std::ldexp(1.0, -k);
    const double lo = std::ldexp(1.0, -(k + 1));
    double value = 0;
    if (options.exact_panel && options.exact_panel(lo, hi, value)) {
      out.panel_values[k] = value;
      continue;
    }
    const QuadResult r =
        integrate_1d(f, lo, hi, panel_spec, options.breakpoints);
    out.panel_values[k] = r.value;
    err += r.err;
  }
  double sum = 0;
  for (int k = n - 1; k >= 0; --k) sum += out.panel_values[k];
  out.value = sum;
  out.err = err;

  // Geometric decay in the tail, up to a roundoff floor.
  const double floor = 1e-15 * std::max(1.0, std::abs(sum));
  const int tail_start = std::min(8, n - 1);
  out.decaying = true;
  for (int k = tail_start; k + 1 < n; ++k) {
    const double cur = std::abs(out.panel_values[k]);
    const double next = std::abs(out.panel_values[k + 1]);
    if (next > 0.9 * cur + floor) {
      out.decaying = false;
      break;
    }
  }
  return out;
}

namespace {

GaussRule compute_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double gauss_panel(const Integrand& f, double a, double b, int order) {
  const GaussRule& rule = gauss_legendre(order);
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::vector<double> terms(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    terms[i] = rule.weights[i] * checked(f, c + h * rule.nodes[i]);
  return h * pairwise_sum(terms);
}

void circle_panel(const Integrand& f, double a, double b, int order,
                  double tol_density, int depth, std::vector<double>& values,
                  double& err) {
  const double coarse = gauss_panel(f, a, b, order);
  const double fine = gauss_panel(f, a, b, 2 * order);
  const double diff = std::abs(fine - coarse);
  const double allowed = tol_density * (b - a);
  if (diff <= allowed || depth >= 24) {
    if (diff > allowed)
      throw Error(ErrorCode::QuadratureFailure,
                  "circle quadrature did not converge under bisection");
    values.push_back(fine);
    err += diff;
    return;
  }
  const double mid = 0.5 * (a + b);
  circle_panel(f, a, mid, order, tol_density, depth + 1, values, err);
  circle_panel(f, mid, b, order, tol_density, depth + 1, values, err);
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1 || order > 8192)
    throw Error(ErrorCode::Domain, "Gauss-Legendre order out of range");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GaussRule>(compute_gauss_legendre(order));
  return *slot;
}

QuadResult integrate_circle(const Integrand& f, std::span<const double> kinks,
                            const QuadSpec& spec) {
  std::vector<double> cuts;
  for (double k : kinks) {
    if (!std::isfinite(k)) continue;
    double r = std::fmod(k, kTwoPi);
    if (r < 0) r += kTwoPi;
    if (kTwoPi - r < 1e-13) r = 0;
    cuts.push_back(r);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> unique_cuts;
  for (double c : cuts)
    if (unique_cuts.empty() || c - unique_cuts.back() > 1e-13)
      unique_cuts.push_back(c);
  if (unique_cuts.empty()) unique_cuts.push_back(0.0);

  // Rough magnitude for the relative tolerance.
  const int order = spec.circle_points_per_sector;
  double scale = 0;
  {
    const int probes = 64;
    for (int i = 0; i < probes; ++i)
      scale += std::abs(checked(f, (i + 0.5) * kTwoPi / probes));
    scale *= kTwoPi / probes;
  }
  const double tol = std::max(spec.abs_tol, spec.rel_tol * scale);
  const double tol_density = tol / kTwoPi;

  std::vector<double> values;
  double err = 0;
  const std::size_t m = unique_cuts.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double a = unique_cuts[i];
    const double b = (i + 1 < m) ? unique_cuts[i + 1] : unique_cuts[0] + kTwoPi;
    if (b - a <= 0) continue;
    circle_panel(f, a, b, order, tol_density, 0, values, err);
  }
  return {pairwise_sum(values), err};
}

namespace {

double sphere_rule(const std::function<double(const Vec3&)>& f, int polar,
                   int azimuth) {
  const GaussRule& rule = gauss_legendre(polar);
  std::vector<double> rows(polar);
  std::vector<double> ring(azimuth);
  for (int i = 0; i < polar; ++i) {
    const double z = rule.nodes[i];
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int j = 0; j < azimuth; ++j) {
      const double phi = kTwoPi * j / azimuth;
      const double v = f(Vec3{rho * std::cos(phi), rho * std::sin(phi), z});
      if (!std::isfinite(v))
        throw Error(ErrorCode::QuadratureFailure,
                    "non-finite integrand on the sphere");
      ring[j] = v;
    }
    rows[i] = rule.weights[i] * pairwise_sum(ring) * (kTwoPi / azimuth);
  }
  return pairwise_sum(rows);
}

}  // namespace

QuadResult integrate_sphere(const std::function<double(const Vec3&)>& f,
                            const QuadSpec& spec) {
  spec.validate();
  constexpr int kMaxOrder = 4096;
  if (2 * spec.sphere_polar_order > kMaxOrder ||
      2 * spec.sphere_azimuth_order > kMaxOrder)
    throw Error(ErrorCode::QuadratureFailure, "sphere rule order limit exceeded");
  const double coarse =
      sphere_rule(f, spec.sphere_polar_order, spec.sphere_azimuth_order);
  const double fine = sphere_rule(f, 2 * spec.sphere_polar_order,
                                  2 * spec.sphere_azimuth_order);
  return {fine, std::abs(fine - coarse)};
}

}  // namespace phc
