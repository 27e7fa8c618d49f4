#pragma once

// Monte Carlo estimators of the heat content and the covariance, kept
// independent of the quadrature pipeline.
//
// Samples are drawn in blocks of kMcBlock; block b uses its own
// mt19937_64 stream seeded from splitmix64(seed, b), and only integer hit
// counts are reduced, so the estimate does not depend on the worker count.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "phc/shapes.hpp"

namespace phc {

inline constexpr std::int64_t kMcBlock = 65536;

struct McEstimate {
  double mean = 0;
  double std_error = 0;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

// G / |g0| with G a d-vector of standard normals; density p_1.
void sample_cauchy(int d, std::mt19937_64& rng, std::span<double> out);

// Uniform point of the shape (polar inversion for balls, rejection from the
// bounding box for polygons).
void sample_uniform(const Shape& shape, std::mt19937_64& rng,
                    std::span<double> out);

bool contains(const Shape& shape, std::span<const double> x);

// |shape| * P(X + t W in shape), X uniform on the shape, W ~ p_1.
// n >= 1000; workers = 0 uses the hardware concurrency.
McEstimate mc_heat_content(const Shape& shape, double t, std::int64_t n,
                           std::uint64_t seed, unsigned workers = 0);

// |shape| * P(X - y in shape).
McEstimate mc_covariance(const Shape& shape, std::span<const double> y,
                         std::int64_t n, std::uint64_t seed,
                         unsigned workers = 0);

}  // namespace phc
