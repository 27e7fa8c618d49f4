#include "phc/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "parallel.hpp"
#include "phc/errors.hpp"

namespace phc {

namespace {

constexpr int kRejectionCap = 1000;

struct Box {
  double x0, x1, y0, y1;
};

Box polygon_box(const std::vector<Point2>& v) {
  Box b{v[0].x, v[0].x, v[0].y, v[0].y};
  for (const Point2& p : v) {
    b.x0 = std::min(b.x0, p.x);
    b.x1 = std::max(b.x1, p.x);
    b.y0 = std::min(b.y0, p.y);
    b.y1 = std::max(b.y1, p.y);
  }
  return b;
}

void check_n(std::int64_t n) {
  if (n < 1000) throw Error(ErrorCode::Domain, "Monte Carlo needs n >= 1000");
}

// Runs count_block(rng, size) over all blocks and returns the total hits.
std::int64_t count_hits(
    std::int64_t n, std::uint64_t seed, unsigned workers,
    const std::function<std::int64_t(std::mt19937_64&, std::int64_t)>& count_block) {
  const std::int64_t blocks = (n + kMcBlock - 1) / kMcBlock;
  std::vector<std::int64_t> hits(blocks, 0);
  detail::parallel_for(
      static_cast<std::size_t>(blocks),
      [&](std::size_t b) {
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(b + 1)));
        const std::int64_t size =
            std::min<std::int64_t>(kMcBlock, n - static_cast<std::int64_t>(b) * kMcBlock);
        hits[b] = count_block(rng, size);
      },
      workers);
  std::int64_t total = 0;
  for (std::int64_t h : hits) total += h;
  return total;
}

McEstimate finish(const Shape& shape, std::int64_t hits, std::int64_t n,
                  std::uint64_t seed) {
  const double volume = shape.geometry().volume;
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  McEstimate e;
  e.mean = volume * p;
  e.std_error = volume * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  e.n = n;
  e.seed = seed;
  return e;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void sample_cauchy(int d, std::mt19937_64& rng, std::span<double> out) {
  std::normal_distribution<double> normal;
  double g0 = 0;
  while (g0 == 0) g0 = normal(rng);
  const double scale = 1.0 / std::abs(g0);
  for (int i = 0; i < d; ++i) out[i] = normal(rng) * scale;
}

void sample_uniform(const Shape& shape, std::mt19937_64& rng,
                    std::span<double> out) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (const auto* b = std::get_if<UnitBall>(&shape.kind())) {
    std::normal_distribution<double> normal;
    double r2 = 0;
    while (r2 == 0) {
      r2 = 0;
      for (int i = 0; i < b->dim; ++i) {
        out[i] = normal(rng);
        r2 += out[i] * out[i];
      }
    }
    const double radius = std::pow(unit(rng), 1.0 / b->dim) / std::sqrt(r2);
    for (int i = 0; i < b->dim; ++i) out[i] *= radius;
    return;
  }
  if (const auto* r = std::get_if<Rectangle>(&shape.kind())) {
    out[0] = r->half_widths[0] * (2.0 * unit(rng) - 1.0);
    out[1] = r->half_widths[1] * (2.0 * unit(rng) - 1.0);
    return;
  }
  if (const auto* iv = std::get_if<Interval>(&shape.kind())) {
    out[0] = iv->a + (iv->b - iv->a) * unit(rng);
    return;
  }
  const auto& poly = std::get<ConvexPolygon>(shape.kind());
  const Box box = polygon_box(poly.vertices);
  const double expected =
      (box.x1 - box.x0) * (box.y1 - box.y0) / shape.geometry().volume;
  const long cap = static_cast<long>(std::ceil(kRejectionCap * expected));
  for (long attempt = 0; attempt < cap; ++attempt) {
    out[0] = box.x0 + (box.x1 - box.x0) * unit(rng);
    out[1] = box.y0 + (box.y1 - box.y0) * unit(rng);
    if (contains(shape, out)) return;
  }
  throw Error(ErrorCode::SamplingFailure, "rejection cap exceeded for " + shape.describe());
}

bool contains(const Shape& shape, std::span<const double> x) {
  if (const auto* b = std::get_if<UnitBall>(&shape.kind())) {
    double r2 = 0;
    for (int i = 0; i < b->dim; ++i) r2 += x[i] * x[i];
    return r2 <= 1.0;
  }
  if (const auto* r = std::get_if<Rectangle>(&shape.kind()))
    return std::abs(x[0]) <= r->half_widths[0] && std::abs(x[1]) <= r->half_widths[1];
  if (const auto* iv = std::get_if<Interval>(&shape.kind()))
    return iv->a <= x[0] && x[0] <= iv->b;
  const auto& v = std::get<ConvexPolygon>(shape.kind()).vertices;
  const Point2 p{x[0], x[1]};
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 a = v[i];
    const Point2 b = v[(i + 1) % v.size()];
    if (cross(b - a, p - a) < 0) return false;
  }
  return true;
}

McEstimate mc_heat_content(const Shape& shape, double t, std::int64_t n,
                           std::uint64_t seed, unsigned workers) {
  if (!(t > 0) || !std::isfinite(t))
    throw Error(ErrorCode::Domain, "t must be positive and finite");
  check_n(n);
  const int d = shape.dim();
  const std::int64_t hits = count_hits(
      n, seed, workers, [&](std::mt19937_64& rng, std::int64_t size) {
        std::vector<double> x(d), w(d);
        std::int64_t h = 0;
        for (std::int64_t i = 0; i < size; ++i) {
          sample_uniform(shape, rng, x);
          sample_cauchy(d, rng, w);
          for (int k = 0; k < d; ++k) x[k] += t * w[k];
          h += contains(shape, x);
        }
        return h;
      });
  return finish(shape, hits, n, seed);
}

McEstimate mc_covariance(const Shape& shape, std::span<const double> y,
                         std::int64_t n, std::uint64_t seed, unsigned workers) {
  const int d = shape.dim();
  if (static_cast<int>(y.size()) != d)
    throw Error(ErrorCode::DimensionMismatch, "y has the wrong dimension");
  check_n(n);
  const std::vector<double> shift(y.begin(), y.end());
  const std::int64_t hits = count_hits(
      n, seed, workers, [&](std::mt19937_64& rng, std::int64_t size) {
        std::vector<double> x(d);
        std::int64_t h = 0;
        for (std::int64_t i = 0; i < size; ++i) {
          sample_uniform(shape, rng, x);
          for (int k = 0; k < d; ++k) x[k] -= shift[k];
          h += contains(shape, x);
        }
        return h;
      });
  return finish(shape, hits, n, seed);
}

}  // namespace phc
