#pragma once

// Bounded convex shapes with exact geometry, and the polygon arrangement
// data that the covariance and gamma evaluators need.

#include <array>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "phc/quadrature.hpp"

namespace phc {

struct Point2 {
  double x = 0;
  double y = 0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double norm(Point2 a);

struct UnitBall {
  int dim = 2;
};
struct Rectangle {
  std::array<double, 2> half_widths{1.0, 1.0};
};
struct ConvexPolygon {
  std::vector<Point2> vertices;  // counterclockwise
};
struct Interval {
  double a = 0;
  double b = 1;
};

using ShapeKind = std::variant<UnitBall, Rectangle, ConvexPolygon, Interval>;

struct ShapeGeometry {
  double volume = 0;
  double perimeter = 0;
  double support_radius = 0;
  int dim = 0;
};

struct Segment {
  Point2 p;
  Point2 q;
};

// Precomputed structure of the covariance of a convex polygon. On the
// complement of the segments, g is a quadratic polynomial in y.
struct PolygonArrangement {
  std::vector<Point2> vertices;
  std::vector<Segment> segments;
  // Angles of the edge directions (both orientations).
  std::vector<double> edge_angles;
  // Angles of all segment endpoints and pairwise crossings.
  std::vector<double> vertex_angles;
  // Norms of segment endpoints, crossings and tangent points.
  std::vector<double> critical_radii;
  // Distance from the origin to the nearest segment not through it; inside
  // that radius g is exactly quadratic along every ray.
  double quadratic_radius = 0;
};

class Shape {
 public:
  static Shape ball(int dim);
  static Shape rectangle(double half_width_x, double half_width_y);
  static Shape square() { return rectangle(1.0, 1.0); }
  // Collinear vertices are dropped; clockwise, non-convex or degenerate
  // input throws Error(InvalidShape).
  static Shape polygon(std::vector<Point2> vertices);
  static Shape interval(double a, double b);

  const ShapeKind& kind() const { return kind_; }
  int dim() const { return dim_; }
  const ShapeGeometry& geometry() const { return geometry_; }
  std::string describe() const;

  bool is_ball() const { return std::holds_alternative<UnitBall>(kind_); }
  bool is_interval() const { return std::holds_alternative<Interval>(kind_); }
  // Rectangle with equal half-widths.
  bool is_square() const;
  // Polygon and rectangle shapes carry an arrangement.
  const PolygonArrangement* arrangement() const { return arrangement_.get(); }

 private:
  Shape(ShapeKind kind, int dim);

  ShapeKind kind_;
  int dim_ = 0;
  ShapeGeometry geometry_;
  std::shared_ptr<const PolygonArrangement> arrangement_;
};

ShapeGeometry geometry(const Shape& shape);

// V_u(shape); |u| must be 1 within 1e-12.
double directional_variation(const Shape& shape, std::span<const double> u);

// Angles at which u -> V_u has kinks (2-D shapes).
std::vector<double> variation_kinks(const Shape& shape);

// (1 / (2 w_{d-1})) * integral of V_u over the unit sphere.
double perimeter_from_variations(const Shape& shape, const QuadSpec& quad);

}  // namespace phc
