#include "phc/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "phc/errors.hpp"
#include "phc/kernel.hpp"

namespace phc {

namespace {

constexpr double kPi = std::numbers::pi;

QuadSpec tight_spec() {
  QuadSpec s;
  s.abs_tol = 1e-15;
  s.rel_tol = 1e-14;
  return s;
}

double ball_radial(int dim, double r) {
  const double s = 0.5 * r;
  if (s >= 1.0) return 0.0;
  const Dim d(dim);
  const double volume = unit_ball_volume(d);
  if (s <= 0.0) return volume;
  const double cap = 2.0 * unit_sphere_area_below(d) * theta_complement(dim, s);
  const double slab = 2.0 * s * unit_ball_volume_below(d) *
                      std::pow(1.0 - s * s, 0.5 * (dim - 1));
  return std::max(0.0, volume - cap - slab);
}

std::vector<Point2> clip(const std::vector<Point2>& poly, Point2 a, Point2 b) {
  std::vector<Point2> out;
  const Point2 e = b - a;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 cur = poly[i];
    const Point2 nxt = poly[(i + 1) % n];
    const double dc = cross(e, cur - a);
    const double dn = cross(e, nxt - a);
    if (dc >= 0) out.push_back(cur);
    if ((dc >= 0) != (dn >= 0)) {
      const double t = dc / (dc - dn);
      out.push_back(cur + t * (nxt - cur));
    }
  }
  return out;
}

double polygon_area(const std::vector<Point2>& v) {
  double s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * s;
}

// Ray r u against segment p + tau (q - p); collinear segments contribute
// their endpoints.
void ray_hits(const Segment& seg, Point2 u, std::vector<double>& hits) {
  const Point2 d = seg.q - seg.p;
  const double den = cross(u, d);
  const double len = norm(d);
  if (std::abs(den) <= 1e-14 * len) {
    if (std::abs(cross(u, seg.p)) <= 1e-12 * std::max(1.0, norm(seg.p))) {
      for (Point2 e : {seg.p, seg.q}) {
        const double r = dot(e, u);
        if (r > 0) hits.push_back(r);
      }
    }
    return;
  }
  const double r = cross(seg.p, d) / den;
  const double tau = cross(seg.p, u) / den;
  if (r > 0 && tau >= -1e-14 && tau <= 1 + 1e-14) hits.push_back(r);
}

}  // namespace

double theta_integral(int d, double z) {
  if (d < 2) throw Error(ErrorCode::Domain, "Theta needs d >= 2");
  if (!(z >= 0.0 && z <= 1.0))
    throw Error(ErrorCode::Domain, "Theta argument must lie in [0, 1]");
  if (d == 2) return 0.5 * (std::asin(z) + z * std::sqrt(1.0 - z * z));
  if (d == 3) return (1.0 - std::pow(1.0 - z * z, 1.5)) / 3.0;
  if (z == 0.0) return 0.0;
  return integrate_1d(
             [d](double th) {
               const double c = std::cos(th);
               return std::pow(std::sin(th), d - 2) * c * c;
             },
             0.0, std::asin(z), tight_spec())
      .value;
}

double theta_complement(int d, double s) {
  if (d < 2) throw Error(ErrorCode::Domain, "Theta needs d >= 2");
  if (!(s >= 0.0 && s <= 1.0))
    throw Error(ErrorCode::Domain, "Theta argument must lie in [0, 1]");
  if (d == 3) return s * s * s / 3.0;
  if (s == 0.0) return 0.0;
  // The integrand is an entire trigonometric polynomial on a bounded range;
  // a fixed Gauss rule is exact to rounding.
  const GaussRule& rule = gauss_legendre(32);
  const double b = std::asin(s);
  double sum = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double phi = 0.5 * b * (rule.nodes[i] + 1.0);
    const double sn = std::sin(phi);
    sum += rule.weights[i] * std::pow(std::cos(phi), d - 2) * sn * sn;
  }
  return 0.5 * b * sum;
}

double convex_intersection_area(std::span<const Point2> p,
                                std::span<const Point2> q) {
  std::vector<Point2> poly(p.begin(), p.end());
  for (std::size_t j = 0; j < q.size() && poly.size() >= 3; ++j)
    poly = clip(poly, q[j], q[(j + 1) % q.size()]);
  if (poly.size() < 3) return 0.0;
  const double area = polygon_area(poly);
  return area < 1e-14 ? 0.0 : area;
}

double radial_covariance(const Shape& shape, double r) {
  r = std::abs(r);
  if (const auto* b = std::get_if<UnitBall>(&shape.kind()))
    return ball_radial(b->dim, r);
  if (const auto* iv = std::get_if<Interval>(&shape.kind()))
    return std::max(0.0, (iv->b - iv->a) - r);
  throw Error(ErrorCode::Domain, "shape covariance is not radial");
}

double covariance(const Shape& shape, Point2 y) {
  if (shape.dim() != 2)
    throw Error(ErrorCode::DimensionMismatch, "2-D point for non-planar shape");
  const double pt[2] = {y.x, y.y};
  return covariance(shape, pt);
}

double covariance(const Shape& shape, std::span<const double> y) {
  if (static_cast<int>(y.size()) != shape.dim())
    throw Error(ErrorCode::DimensionMismatch,
                "covariance point has wrong dimension for shape");
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, UnitBall>) {
          double r2 = 0;
          for (double c : y) r2 += c * c;
          return ball_radial(k.dim, std::sqrt(r2));
        } else if constexpr (std::is_same_v<T, Rectangle>) {
          return std::max(0.0, 2.0 * k.half_widths[0] - std::abs(y[0])) *
                 std::max(0.0, 2.0 * k.half_widths[1] - std::abs(y[1]));
        } else if constexpr (std::is_same_v<T, ConvexPolygon>) {
          std::vector<Point2> shifted(k.vertices);
          for (Point2& v : shifted) v = v + Point2{y[0], y[1]};
          return convex_intersection_area(k.vertices, shifted);
        } else {
          return std::max(0.0, (k.b - k.a) - std::abs(y[0]));
        }
      },
      shape.kind());
}

double support_extent(const Shape& shape, Point2 u) {
  if (const auto* r = std::get_if<Rectangle>(&shape.kind())) {
    const double cx = std::abs(u.x);
    const double cy = std::abs(u.y);
    double ext = std::numeric_limits<double>::infinity();
    if (cx > 0) ext = std::min(ext, 2.0 * r->half_widths[0] / cx);
    if (cy > 0) ext = std::min(ext, 2.0 * r->half_widths[1] / cy);
    return ext;
  }
  const PolygonArrangement* arr = shape.arrangement();
  if (!arr) return shape.geometry().support_radius;
  std::vector<double> hits;
  for (const Segment& s : arr->segments) ray_hits(s, u, hits);
  double ext = 0;
  for (double h : hits) ext = std::max(ext, h);
  return std::min(ext, shape.geometry().support_radius);
}

std::vector<double> ray_breakpoints(const Shape& shape, Point2 u, double limit) {
  std::vector<double> out;
  const PolygonArrangement* arr = shape.arrangement();
  if (!arr) return out;
  std::vector<double> hits;
  for (const Segment& s : arr->segments) ray_hits(s, u, hits);
  for (double h : hits)
    if (h > 0 && h < limit) out.push_back(h);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> circle_breakpoints(const Shape& shape, double rho) {
  const PolygonArrangement* arr = shape.arrangement();
  if (!arr) return {};
  std::vector<double> out = arr->edge_angles;
  for (const Segment& s : arr->segments) {
    const Point2 d = s.q - s.p;
    const double a = dot(d, d);
    const double b = 2.0 * dot(s.p, d);
    const double c = dot(s.p, s.p) - rho * rho;
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0) continue;
    const double sq = std::sqrt(disc);
    for (double tau : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)}) {
      if (tau < 0 || tau > 1) continue;
      const Point2 p = s.p + tau * d;
      out.push_back(std::atan2(p.y, p.x));
    }
  }
  return out;
}

QuadResult polar_integral(const Shape& shape,
                          const std::function<double(double)>& weight,
                          const QuadSpec& quad,
                          std::span<const double> extra_radii) {
  if (shape.dim() != 2)
    throw Error(ErrorCode::Domain, "polar integral needs a 2-D shape");
  const PolygonArrangement* arr = shape.arrangement();
  std::vector<double> kinks;
  if (arr) {
    kinks = arr->edge_angles;
    kinks.insert(kinks.end(), arr->vertex_angles.begin(),
                 arr->vertex_angles.end());
  }
  const QuadSpec inner =
      quad.with_tolerance(quad.abs_tol * 1e-2, quad.rel_tol * 1e-2);
  auto ray = [&](double th) {
    const Point2 u{std::cos(th), std::sin(th)};
    const double ext = support_extent(shape, u);
    std::vector<double> breaks = ray_breakpoints(shape, u, ext);
    for (double r : extra_radii)
      if (r > 0 && r < ext) breaks.push_back(r);
    return integrate_1d(
               [&](double r) { return weight(r) * covariance(shape, r * u) * r; },
               0.0, ext, inner, breaks)
        .value;
  };
  return integrate_circle(ray, kinks, quad);
}

QuadResult covariance_integral(const Shape& shape, const QuadSpec& quad) {
  quad.validate();
  if (shape.is_ball() || shape.is_interval()) {
    const Dim d(shape.dim());
    const double area = unit_sphere_area(d);
    const double ell = shape.geometry().support_radius;
    const QuadResult r = integrate_1d(
        [&](double x) { return std::pow(x, d - 1) * radial_covariance(shape, x); },
        0.0, ell, quad.with_tolerance(quad.abs_tol * 1e-2, quad.rel_tol * 1e-2));
    return {area * r.value, area * r.err};
  }
  return polar_integral(shape, [](double) { return 1.0; }, quad);
}

bool CovarianceReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const PropertyCheck& c) { return c.passed; });
}

CovarianceReport covariance_self_checks(const Shape& shape,
                                        const QuadSpec& quad,
                                        std::uint64_t seed, int probes) {
  quad.validate();
  const int d = shape.dim();
  const double volume = shape.geometry().volume;
  const double ell = shape.geometry().support_radius;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  auto random_point = [&] {
    std::vector<double> y(d);
    for (double& c : y) c = ell * (2.0 * unit(rng) - 1.0);
    return y;
  };
  auto random_direction = [&] {
    std::vector<double> u(d);
    double n2 = 0;
    do {
      n2 = 0;
      for (double& c : u) {
        c = normal(rng);
        n2 += c * c;
      }
    } while (n2 == 0);
    for (double& c : u) c /= std::sqrt(n2);
    return u;
  };
  auto update = [](PropertyCheck& c, double violation,
                   const std::vector<double>& at) {
    if (violation > c.worst) {
      c.worst = violation;
      c.witness = at;
    }
  };

  CovarianceReport report;
  PropertyCheck range{"range: 0 <= g <= g(0) = |shape|", true, 0,
                      1e-12 * volume, {}};
  PropertyCheck symmetry{"symmetry: g(y) = g(-y)", true, 0, 1e-12 * volume, {}};
  PropertyCheck integral{"integral: int g = |shape|^2", true, 0, 1e-6, {}};
  PropertyCheck support{"support: g = 0 for |y| >= support radius", true, 0,
                        1e-14, {}};
  PropertyCheck slope{"Lipschitz slope: (g(0) - g(ru)) / r -> V_u / 2", true, 0,
                      1e-2, {}};

  const std::vector<double> origin(d, 0.0);
  update(range, std::abs(covariance(shape, origin) - volume), origin);
  for (int i = 0; i < probes; ++i) {
    const std::vector<double> y = random_point();
    const double g = covariance(shape, y);
    update(range, std::max(-g, g - volume), y);
    std::vector<double> minus(y);
    for (double& c : minus) c = -c;
    update(symmetry, std::abs(g - covariance(shape, minus)), y);

    std::vector<double> far = random_direction();
    const double radius = ell * (1.0 + 0.5 * unit(rng));
    for (double& c : far) c *= radius;
    update(support, std::abs(covariance(shape, far)), far);

    const std::vector<double> u = random_direction();
    auto quotient = [&](double r) {
      std::vector<double> p(u);
      for (double& c : p) c *= r;
      return (volume - covariance(shape, p)) / r;
    };
    const double q4 = quotient(1e-4);
    const double q5 = quotient(1e-5);
    const double half_variation = 0.5 * directional_variation(shape, u);
    const double scale = std::max(1.0, half_variation);
    update(slope, std::max(std::abs(q4 - q5), std::abs(q5 - half_variation)) / scale,
           u);
  }
  const QuadResult total = covariance_integral(shape, quad);
  integral.worst = std::abs(total.value - volume * volume) / (volume * volume);

  for (PropertyCheck* c : {&range, &symmetry, &integral, &support, &slope}) {
    c->passed = c->worst <= c->tolerance;
    report.checks.push_back(*c);
  }
  return report;
}

std::array<double, 8> square_I_terms(const QuadSpec& quad) {
  quad.validate();
  const double root2 = std::sqrt(2.0);
  std::array<double, 8> out{};
  for (int i = 0; i < 8; ++i) {
    const bool cos_sector = (i == 0 || i == 3 || i == 4 || i == 7);
    auto integrand = [&](double th) {
      const double c = std::abs(std::cos(th));
      const double s = std::abs(std::sin(th));
      const double eta = 2.0 / (cos_sector ? c : s);
      return c * s * eta + 2.0 * (c + s) * std::log(2.0 * root2 / eta) +
             root2 * (1.0 - 2.0 * root2 / eta);
    };
    out[i] = integrate_1d(integrand, kPi / 4.0 * i, kPi / 4.0 * (i + 1), quad).value;
  }
  return out;
}

}  // namespace phc
