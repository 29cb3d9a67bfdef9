#pragma once

// Noise quantities over a labeled sample set: a binary intra-consistency term
// per cluster (hypersphere radius vs sigma_cst), a binary inter-discrimination
// term per ordered cluster pair (centroid distance vs sigma_drm), and their
// sum normalized by the cluster count. The denoising stages exist to drive
// this number down.

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cion/core.hpp"
#include "cion/types.hpp"

namespace cion {

struct NoiseReport {
  // (cluster id, 0/1) sorted by cluster id; one entry per cluster.
  std::vector<std::pair<std::int64_t, int>> per_cluster_cst;
  // Unordered pairs {i, j} (i < j) whose inter-discrimination term fired.
  // The term is symmetric, so each stored pair stands for both ordered pairs.
  std::vector<std::pair<std::int64_t, std::int64_t>> noisy_pairs;
  std::int64_t cluster_count = 0;
  double overall = 0.0;

  std::int64_t cst_sum() const {
    std::int64_t s = 0;
    for (const auto& [id, v] : per_cluster_cst) s += v;
    return s;
  }
  // Ordered-pair sum: each unordered noisy pair counts twice.
  std::int64_t drm_sum() const {
    return 2 * static_cast<std::int64_t>(noisy_pairs.size());
  }
  // Symmetric lookup on the sparse pair set.
  int pair_drm(std::int64_t i, std::int64_t j) const {
    const auto p = std::minmax(i, j);
    return std::binary_search(noisy_pairs.begin(), noisy_pairs.end(),
                              std::make_pair(p.first, p.second))
               ? 1
               : 0;
  }
};

// Eq-level primitives.
int intra_noise(const std::vector<FeatureD>& cluster, double sigma_cst);
int inter_noise(const FeatureD& centroid_i, const FeatureD& centroid_j,
                double sigma_drm);

// Full report for (feature, cluster id) pairs. Per-cluster and per-pair terms
// are computed in parallel; the aggregation order is fixed, so the result is
// identical at any thread count.
NoiseReport overall_noise(const std::vector<FeatureD>& features,
                          std::span<const std::int64_t> cluster_ids,
                          const PipelineConfig& config);

// Same metric over dataset rows; `labels` gives the cluster id per sample and
// entries with label < 0 are skipped (dropped samples).
NoiseReport overall_noise(const Dataset& ds, std::span<const std::int64_t> labels,
                          const PipelineConfig& config);

}  // namespace cion
