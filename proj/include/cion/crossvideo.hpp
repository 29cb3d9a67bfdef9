#pragma once

// Cross-video identity linking. The concatenated tracklet sequence is swept
// by a window of half-width r_s; the Eq-6 merge predicate is evaluated only
// inside the window, giving O(N * r_s) predicate evaluations instead of
// O(N^2). Connected components of the resulting link graph ("closures")
// merge into single identities.

#include <cstdint>
#include <utility>
#include <vector>

#include "cion/types.hpp"

namespace cion {

struct SlidingRange {
  std::uint32_t center = 0;  // 0-based tracklet index
  std::uint32_t half_width = 1;

  std::uint32_t lo(std::uint32_t n) const {
    (void)n;
    return center >= half_width ? center - half_width : 0;
  }
  std::uint32_t hi(std::uint32_t n) const {
    return std::min<std::uint64_t>(n - 1, std::uint64_t(center) + half_width);
  }
};

struct LinkGraph {
  std::uint32_t n = 0;
  // Unordered pairs {i, c} with i < c and c - i <= half_width.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::uint32_t half_width = 0;
  // Exact number of predicate evaluations performed while building the graph;
  // equals sum over c of min(r_s, c) for 0-based c.
  std::uint64_t predicate_evaluations = 0;
};

struct ClosureMap {
  // Tracklet index -> closure id (the smallest member index of the closure).
  std::vector<std::uint32_t> assignment;
  std::uint32_t closure_count = 0;
};

// Window sweep over precomputed tracklet centroids. Each symmetric pair is
// evaluated once (i < c). Window evaluations run in parallel over c; the edge
// list is assembled in c order, so the output is thread-count independent.
LinkGraph sliding_range_links(const std::vector<FeatureD>& centroids,
                              std::uint32_t half_width, double sigma_drm);

// Connected components via union-find; closure ids are smallest member
// indices, singletons keep their own index.
ClosureMap closures(const LinkGraph& graph);

// One output tracklet per closure; members concatenated in input tracklet
// order; id and label become the closure id.
std::vector<Tracklet> merge_closures(const std::vector<Tracklet>& tracklets,
                                     const ClosureMap& map);

// Closed-form evaluation count for the sweep (exact, any N >= 1, r_s >= 1).
std::uint64_t sliding_eval_count(std::uint64_t n, std::uint64_t r_s);

}  // namespace cion
