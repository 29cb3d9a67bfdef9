#pragma once

// Distance metric, centroid, and the unit step shared by all pipeline stages.
//
// Numeric conventions:
//  - accumulation is always double, whatever the element type;
//  - summation order is index order (bit-reproducible);
//  - a *computed* centroid with near-zero norm compares as maximally distant
//    (2.0) instead of raising, so the denoising loops stay total; raw input
//    vectors with zero norm are rejected at ingestion.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>

#include "cion/types.hpp"

namespace cion {

inline constexpr double kZeroNormEps = 1e-12;

// 1 if x >= 0, else 0. The boundary sits at 1 so that "deviation >= sigma"
// counts as noise.
inline int unit_step(double x) { return x >= 0.0 ? 1 : 0; }

template <std::floating_point A, std::floating_point B>
double dot(std::span<const A> a, std::span<const B> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  return acc;
}

template <std::floating_point A>
double squared_norm(std::span<const A> a) {
  return dot(a, a);
}

template <std::floating_point A>
double norm(std::span<const A> a) {
  return std::sqrt(squared_norm(a));
}

// Kernel used by the hot loops: norms precomputed by the caller, degenerate
// (near-zero norm) operands map to the metric maximum.
template <std::floating_point A, std::floating_point B>
double cosine_distance_prenormed(std::span<const A> a, double norm_a,
                                 std::span<const B> b, double norm_b) {
  if (norm_a < kZeroNormEps || norm_b < kZeroNormEps) return 2.0;
  const double d = 1.0 - dot(a, b) / (norm_a * norm_b);
  return std::clamp(d, 0.0, 2.0);
}

// Strict form: rejects zero-norm operands. Use on user-supplied vectors.
template <std::floating_point A, std::floating_point B>
double cosine_distance(std::span<const A> a, std::span<const B> b) {
  if (a.size() != b.size()) throw ShapeMismatch("distance: dimension mismatch");
  const double na = norm(a);
  const double nb = norm(b);
  if (na < kZeroNormEps || nb < kZeroNormEps)
    throw ZeroNormVector("distance: operand with near-zero norm");
  const double d = 1.0 - dot(a, b) / (na * nb);
  return std::clamp(d, 0.0, 2.0);
}

inline double cosine_distance(const FeatureD& a, const FeatureD& b) {
  return cosine_distance(std::span<const double>(a), std::span<const double>(b));
}

// Element-wise arithmetic mean in index order. Not re-normalized: the cosine
// metric divides by the norm anyway.
FeatureD centroid(const std::vector<FeatureD>& members);

// Mean of the given rows of a float store, accumulated in double.
FeatureD centroid(const FeatureStore& fs, std::span<const std::uint32_t> rows);

// Accumulates rows into `sum` (index order); used by the incremental
// leave-one-out loops.
void add_rows(const FeatureStore& fs, std::span<const std::uint32_t> rows,
              FeatureD& sum);

// Centroid + max member distance of a row set.
Hypersphere bounding_sphere(const FeatureStore& fs,
                            std::span<const std::uint32_t> rows);

inline bool is_normalized(std::span<const float> v, double tol = 1e-6) {
  const double n = norm(v);
  return n >= 1.0 - tol && n <= 1.0 + tol;
}

}  // namespace cion
