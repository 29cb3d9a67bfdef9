#pragma once

// Serial reference implementations. Everything in this namespace is written
// naively — fresh recomputation, plain loops, no OpenMP, no incremental
// state — and stays independent of the production kernels it checks. Tests
// compare the two; the benchmark tool times them against each other.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cion/noise.hpp"
#include "cion/tracklet_denoise.hpp"
#include "cion/types.hpp"

namespace cion::ref {

// Term-by-term re-evaluation of the noise definition with naive loops.
NoiseReport overall_noise(const std::vector<FeatureD>& features,
                          std::span<const std::int64_t> cluster_ids,
                          const PipelineConfig& config);

// Single-tracklet denoising with O(m^2 * D) per iteration: the leave-one-out
// centroid of every candidate is recomputed from scratch.
TrackletDenoiseResult denoise_tracklet(const Dataset& ds, const Tracklet& t,
                                       double sigma_cst, int min_size = 2);

// Per-candidate leave-one-out deviations of a member set, fresh recomputation.
std::vector<double> loo_deviations(const Dataset& ds,
                                   std::span<const std::uint32_t> members);

// All-pairs linking (optionally restricted to |i - j| <= window). Serial.
struct PairLinks {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // i < j
  std::uint64_t predicate_evaluations = 0;
};
PairLinks all_pairs_links(const std::vector<FeatureD>& centroids, double sigma_drm,
                          std::optional<std::uint32_t> window = std::nullopt);

// Serial copy of the sliding-range sweep (same window enumeration, no OpenMP).
PairLinks sliding_links_serial(const std::vector<FeatureD>& centroids,
                               std::uint32_t half_width, double sigma_drm);

// Connected components by breadth-first search; labels are smallest member
// indices, matching the union-find convention.
std::vector<std::uint32_t> components_bfs(
    std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

// Scalar softmax in extended precision: (logits - center)/tau, max-subtracted.
std::vector<double> softmax_hp(const std::vector<double>& logits, double tau,
                               const std::vector<double>* center);

// Plain-loop cross entropy.
double cross_entropy(const std::vector<double>& p_t, const std::vector<double>& p_s);

// Central finite differences of H(p_t, softmax(z/tau)) with respect to z.
std::vector<double> grad_central_diff(const std::vector<double>& p_t,
                                      const std::vector<double>& logits, double tau,
                                      double h = 1e-5);

// Pairwise precision/recall/F1 and purity by explicit O(n^2) pair counting.
struct PairwiseCounts {
  double precision = 0.0, recall = 0.0, f1 = 0.0, purity = 0.0;
};
PairwiseCounts pairwise_metrics(std::span<const std::int64_t> predicted,
                                std::span<const std::int64_t> truth);

}  // namespace cion::ref
