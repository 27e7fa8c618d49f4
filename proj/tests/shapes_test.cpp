#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "phc/covariance.hpp"
#include "phc/errors.hpp"
#include "phc/shapes.hpp"

using namespace phc;
using std::numbers::pi;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Domain;
}

}  // namespace

TEST_CASE("geometry of the supported shapes") {
  const ShapeGeometry b2 = Shape::ball(2).geometry();
  CHECK(b2.volume == doctest::Approx(pi));
  CHECK(b2.perimeter == doctest::Approx(2 * pi));
  CHECK(b2.support_radius == 2.0);

  const ShapeGeometry q = Shape::square().geometry();
  CHECK(q.volume == 4.0);
  CHECK(q.perimeter == 8.0);
  CHECK(q.support_radius == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-15));

  const ShapeGeometry tri = Shape::polygon({{0, 0}, {1, 0}, {0, 1}}).geometry();
  CHECK(tri.volume == doctest::Approx(0.5));
  CHECK(tri.perimeter == doctest::Approx(2 + std::sqrt(2.0)).epsilon(1e-15));
  CHECK(tri.support_radius == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  const ShapeGeometry iv = Shape::interval(-1, 2).geometry();
  CHECK(iv.volume == 3.0);
  CHECK(iv.perimeter == 2.0);
  CHECK(iv.support_radius == 3.0);
  CHECK(iv.dim == 1);

  const ShapeGeometry r = Shape::rectangle(1, 0.5).geometry();
  CHECK(r.volume == 2.0);
  CHECK(r.perimeter == 6.0);
  CHECK(r.support_radius == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("invalid shapes are rejected") {
  CHECK(code_of([] { Shape::ball(1); }) == ErrorCode::InvalidShape);
  CHECK(code_of([] { Shape::rectangle(0, 1); }) == ErrorCode::InvalidShape);
  CHECK(code_of([] { Shape::interval(1, 1); }) == ErrorCode::InvalidShape);
  // Clockwise.
  CHECK(code_of([] { Shape::polygon({{0, 0}, {0, 1}, {1, 0}}); }) == ErrorCode::InvalidShape);
  // Non-convex.
  CHECK(code_of([] { Shape::polygon({{0, 0}, {2, 0}, {1, 0.5}, {2, 2}, {0, 2}}); }) ==
        ErrorCode::InvalidShape);
  // Degenerate.
  CHECK(code_of([] { Shape::polygon({{0, 0}, {1, 0}, {2, 0}}); }) == ErrorCode::InvalidShape);
  CHECK(code_of([] { Shape::polygon({{0, 0}, {1, 0}, {1, 0}, {0, 1}}); }) ==
        ErrorCode::InvalidShape);
}

TEST_CASE("collinear polygon vertices are dropped") {
  const Shape s = Shape::polygon({{0, 0}, {0.5, 0}, {1, 0}, {0, 1}});
  CHECK(std::get<ConvexPolygon>(s.kind()).vertices.size() == 3);
  CHECK(s.geometry().volume == doctest::Approx(0.5));
}

TEST_CASE("directional variation") {
  const Shape q = Shape::square();
  for (double th : {0.0, 0.3, 1.0, 2.5, 4.0}) {
    const std::vector<double> u = {std::cos(th), std::sin(th)};
    CHECK(directional_variation(q, u) ==
          doctest::Approx(4 * (std::abs(u[0]) + std::abs(u[1]))).epsilon(1e-14));
  }
  const std::vector<double> ux = {1.0, 0.0};
  CHECK(directional_variation(Shape::ball(2), ux) == doctest::Approx(4.0));
  const Shape qp = Shape::polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  CHECK(directional_variation(qp, ux) == doctest::Approx(4.0));
  const std::vector<double> z = {0.0, 0.0, 1.0};
  CHECK(directional_variation(Shape::ball(3), z) == doctest::Approx(2 * pi));
  const std::vector<double> one = {-1.0};
  CHECK(directional_variation(Shape::interval(0, 5), one) == 2.0);

  const std::vector<double> bad = {1.0, 1e-5};
  CHECK(code_of([&] { directional_variation(q, bad); }) == ErrorCode::NonUnitVector);
  CHECK(code_of([&] { directional_variation(q, z); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("perimeter from directional variations") {
  const QuadSpec quad;
  CHECK(perimeter_from_variations(Shape::ball(2), quad) == doctest::Approx(2 * pi).epsilon(1e-10));
  CHECK(std::abs(perimeter_from_variations(Shape::square(), quad) - 8.0) < 1e-8);
  CHECK(std::abs(perimeter_from_variations(Shape::ball(3), quad) - 4 * pi) < 1e-8);
  const Shape tri = Shape::polygon({{0, 0}, {1, 0}, {0, 1}});
  CHECK(std::abs(perimeter_from_variations(tri, quad) - tri.geometry().perimeter) < 1e-8);
  const Shape hex = Shape::polygon({{1, 0}, {0.5, 0.9}, {-0.5, 0.8}, {-1, 0}, {-0.4, -0.9}, {0.6, -0.8}});
  CHECK(std::abs(perimeter_from_variations(hex, quad) - hex.geometry().perimeter) < 1e-8);
}

TEST_CASE("square as a polygon matches the rectangle closed form") {
  const Shape rect = Shape::square();
  const Shape poly = Shape::polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const Point2 y{u(rng), u(rng)};
    // Oracle: the product formula written out here.
    const double oracle =
        std::max(0.0, 2 - std::abs(y.x)) * std::max(0.0, 2 - std::abs(y.y));
    worst = std::max(worst, std::abs(covariance(poly, y) - oracle));
    worst = std::max(worst, std::abs(covariance(rect, y) - oracle));
  }
  CHECK(worst < 1e-10);
}
