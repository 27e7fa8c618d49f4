#include "phc/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "phc/errors.hpp"
#include "phc/kernel.hpp"

namespace phc {

namespace {

constexpr double kVertexTol = 1e-12;

double signed_area(const std::vector<Point2>& v) {
  double s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * s;
}

std::vector<Point2> drop_collinear(std::vector<Point2> v, double scale) {
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point2 prev = v[(i + v.size() - 1) % v.size()];
      const Point2 next = v[(i + 1) % v.size()];
      const Point2 a = v[i] - prev;
      const Point2 b = next - v[i];
      if (std::abs(cross(a, b)) <= kVertexTol * scale * scale &&
          dot(a, b) > 0) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return v;
}

void add_if_positive(std::vector<double>& out, double r) {
  if (r > 1e-14) out.push_back(r);
}

std::shared_ptr<PolygonArrangement> build_arrangement(
    const std::vector<Point2>& v) {
  auto arr = std::make_shared<PolygonArrangement>();
  arr->vertices = v;
  const std::size_t n = v.size();
  double scale = 0;
  for (const Point2& p : v) scale = std::max(scale, norm(p));
  const double origin_tol = 1e-12 * std::max(scale, 1.0);

  for (std::size_t j = 0; j < n; ++j) {
    const Point2 d = v[(j + 1) % n] - v[j];
    arr->edge_angles.push_back(std::atan2(d.y, d.x));
    arr->edge_angles.push_back(std::atan2(-d.y, -d.x));
  }
  // v_i + y on edge j of P, or v_j on edge i of P + y.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Segment s{v[j] - v[i], v[(j + 1) % n] - v[i]};
      arr->segments.push_back(s);
      arr->segments.push_back({-1.0 * s.p, -1.0 * s.q});
    }
  }

  double quadratic_radius = std::numeric_limits<double>::infinity();
  std::vector<Point2> points;
  for (const Segment& s : arr->segments) {
    points.push_back(s.p);
    points.push_back(s.q);
    const Point2 d = s.q - s.p;
    const double len2 = dot(d, d);
    const double tau = std::clamp(-dot(s.p, d) / len2, 0.0, 1.0);
    const Point2 foot = s.p + tau * d;
    const double dist = norm(foot);
    if (dist > origin_tol) {
      quadratic_radius = std::min(quadratic_radius, dist);
      if (tau > 0 && tau < 1) add_if_positive(arr->critical_radii, dist);
    }
  }
  for (std::size_t a = 0; a < arr->segments.size(); ++a) {
    for (std::size_t b = a + 1; b < arr->segments.size(); ++b) {
      const Segment& s1 = arr->segments[a];
      const Segment& s2 = arr->segments[b];
      const Point2 d1 = s1.q - s1.p;
      const Point2 d2 = s2.q - s2.p;
      const double den = cross(d1, d2);
      if (std::abs(den) < 1e-14 * std::sqrt(dot(d1, d1) * dot(d2, d2))) continue;
      const Point2 w = s2.p - s1.p;
      const double ta = cross(w, d2) / den;
      const double tb = cross(w, d1) / den;
      if (ta < 0 || ta > 1 || tb < 0 || tb > 1) continue;
      points.push_back(s1.p + ta * d1);
    }
  }
  for (const Point2& p : points) {
    const double r = norm(p);
    if (r > origin_tol) {
      arr->vertex_angles.push_back(std::atan2(p.y, p.x));
      add_if_positive(arr->critical_radii, r);
    }
  }
  auto dedupe = [](std::vector<double>& xs, double tol) {
    std::sort(xs.begin(), xs.end());
    std::vector<double> out;
    for (double x : xs)
      if (out.empty() || x - out.back() > tol) out.push_back(x);
    xs = std::move(out);
  };
  dedupe(arr->edge_angles, 1e-14);
  dedupe(arr->vertex_angles, 1e-14);
  dedupe(arr->critical_radii, 1e-14 * std::max(scale, 1.0));
  arr->quadratic_radius = quadratic_radius;
  return arr;
}

}  // namespace

double norm(Point2 a) { return std::hypot(a.x, a.y); }

Shape::Shape(ShapeKind kind, int dim) : kind_(std::move(kind)), dim_(dim) {}

Shape Shape::ball(int dim) {
  if (dim < 2 || dim > kMaxDim) {
    std::ostringstream os;
    os << "unit ball dimension " << dim << " outside [2, " << kMaxDim
       << "]; use an interval for d = 1";
    throw Error(ErrorCode::InvalidShape, os.str());
  }
  Shape s(UnitBall{dim}, dim);
  const Dim d(dim);
  s.geometry_ = {unit_ball_volume(d), unit_sphere_area(d), 2.0, dim};
  return s;
}

Shape Shape::rectangle(double hx, double hy) {
  if (!(hx > 0) || !(hy > 0) || !std::isfinite(hx) || !std::isfinite(hy))
    throw Error(ErrorCode::InvalidShape,
                "rectangle half-widths must be positive and finite");
  Shape s(Rectangle{{hx, hy}}, 2);
  s.geometry_ = {4.0 * hx * hy, 4.0 * (hx + hy), 2.0 * std::hypot(hx, hy), 2};
  s.arrangement_ =
      build_arrangement({{-hx, -hy}, {hx, -hy}, {hx, hy}, {-hx, hy}});
  return s;
}

Shape Shape::polygon(std::vector<Point2> v) {
  if (v.size() < 3)
    throw Error(ErrorCode::InvalidShape, "polygon needs at least 3 vertices");
  double scale = 0;
  for (const Point2& p : v) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw Error(ErrorCode::InvalidShape, "polygon vertex is not finite");
    scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  }
  scale = std::max(scale, 1.0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (norm(v[i] - v[j]) <= kVertexTol * scale)
        throw Error(ErrorCode::InvalidShape, "polygon has repeated vertices");
  v = drop_collinear(std::move(v), scale);
  if (v.size() < 3)
    throw Error(ErrorCode::InvalidShape, "polygon is degenerate");
  const double area = signed_area(v);
  if (area <= 0)
    throw Error(ErrorCode::InvalidShape,
                "polygon must be counterclockwise with positive area");
  double turning = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 a = v[i] - v[(i + v.size() - 1) % v.size()];
    const Point2 b = v[(i + 1) % v.size()] - v[i];
    if (cross(a, b) <= 0)
      throw Error(ErrorCode::InvalidShape, "polygon is not convex");
    turning += std::atan2(cross(a, b), dot(a, b));
  }
  if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-9)
    throw Error(ErrorCode::InvalidShape, "polygon is self-intersecting");

  double perimeter = 0;
  double diameter = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    perimeter += norm(v[(i + 1) % v.size()] - v[i]);
    for (std::size_t j = i + 1; j < v.size(); ++j)
      diameter = std::max(diameter, norm(v[i] - v[j]));
  }
  Shape s(ConvexPolygon{v}, 2);
  s.geometry_ = {area, perimeter, diameter, 2};
  s.arrangement_ = build_arrangement(v);
  return s;
}

Shape Shape::interval(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw Error(ErrorCode::InvalidShape, "interval needs finite a < b");
  Shape s(Interval{a, b}, 1);
  s.geometry_ = {b - a, 2.0, b - a, 1};
  return s;
}

bool Shape::is_square() const {
  const auto* r = std::get_if<Rectangle>(&kind_);
  return r && r->half_widths[0] == r->half_widths[1];
}

std::string Shape::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, UnitBall>) {
          os << "ball(d=" << k.dim << ")";
        } else if constexpr (std::is_same_v<T, Rectangle>) {
          os << "rectangle(" << k.half_widths[0] << ", " << k.half_widths[1]
             << ")";
        } else if constexpr (std::is_same_v<T, ConvexPolygon>) {
          os << "polygon(n=" << k.vertices.size() << ")";
        } else {
          os << "interval(" << k.a << ", " << k.b << ")";
        }
      },
      kind_);
  return os.str();
}

ShapeGeometry geometry(const Shape& shape) { return shape.geometry(); }

double directional_variation(const Shape& shape, std::span<const double> u) {
  if (static_cast<int>(u.size()) != shape.dim())
    throw Error(ErrorCode::DimensionMismatch,
                "direction has wrong dimension for shape");
  double n2 = 0;
  for (double c : u) n2 += c * c;
  if (std::abs(std::sqrt(n2) - 1.0) > 1e-12)
    throw Error(ErrorCode::NonUnitVector, "direction must be a unit vector");

  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, UnitBall>) {
          return 2.0 * unit_ball_volume_below(Dim(k.dim));
        } else if constexpr (std::is_same_v<T, Rectangle>) {
          return 4.0 * (k.half_widths[1] * std::abs(u[0]) +
                        k.half_widths[0] * std::abs(u[1]));
        } else if constexpr (std::is_same_v<T, ConvexPolygon>) {
          const Point2 dir{u[0], u[1]};
          double s = 0;
          const auto& v = k.vertices;
          for (std::size_t i = 0; i < v.size(); ++i)
            s += std::abs(cross(v[(i + 1) % v.size()] - v[i], dir));
          return s;
        } else {
          return 2.0;
        }
      },
      shape.kind());
}

std::vector<double> variation_kinks(const Shape& shape) {
  if (const PolygonArrangement* arr = shape.arrangement()) return arr->edge_angles;
  return {};
}

double perimeter_from_variations(const Shape& shape, const QuadSpec& quad) {
  quad.validate();
  const Dim d(shape.dim());
  const double norm_factor = 1.0 / (2.0 * unit_ball_volume_below(d));
  if (d == 1) {
    const double plus = 1.0;
    const double minus = -1.0;
    return norm_factor * (directional_variation(shape, {&plus, 1}) +
                          directional_variation(shape, {&minus, 1}));
  }
  if (d == 2) {
    const std::vector<double> kinks = variation_kinks(shape);
    const QuadResult r = integrate_circle(
        [&](double th) {
          const double u[2] = {std::cos(th), std::sin(th)};
          return directional_variation(shape, u);
        },
        kinks, quad);
    return norm_factor * r.value;
  }
  if (d == 3) {
    const QuadResult r = integrate_sphere(
        [&](const Vec3& u) { return directional_variation(shape, u); }, quad);
    return norm_factor * r.value;
  }
  throw Error(ErrorCode::Domain,
              "perimeter from variations needs sphere quadrature, d <= 3");
}

}  // namespace phc
