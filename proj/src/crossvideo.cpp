#include "cion/crossvideo.hpp"

#include <algorithm>
#include <map>

#include <omp.h>

#include "cion/core.hpp"
#include "cion/union_find.hpp"

namespace cion {

std::uint64_t sliding_eval_count(std::uint64_t n, std::uint64_t r_s) {
  // sum_{c=0}^{n-1} min(r_s, c)
  if (n == 0) return 0;
  if (n - 1 <= r_s) return n * (n - 1) / 2;
  return n * r_s - r_s * (r_s + 1) / 2;
}

LinkGraph sliding_range_links(const std::vector<FeatureD>& centroids,
                              std::uint32_t half_width, double sigma_drm) {
  if (half_width < 1) throw InvalidSpec("sliding_range_links: half_width must be >= 1");
  const std::uint32_t n = static_cast<std::uint32_t>(centroids.size());
  LinkGraph graph;
  graph.n = n;
  graph.half_width = half_width;
  if (n == 0) return graph;

  std::vector<double> norms(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
    norms[i] = norm(std::span<const double>(centroids[i]));

  std::vector<std::vector<std::uint32_t>> fired(n);
  std::uint64_t evals = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : evals)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(n); ++c) {
    const std::uint32_t lo =
        c >= static_cast<std::int64_t>(half_width)
            ? static_cast<std::uint32_t>(c - half_width)
            : 0u;
    const auto cc = std::span<const double>(centroids[c]);
    for (std::uint32_t i = lo; i < static_cast<std::uint32_t>(c); ++i) {
      ++evals;
      const double d = cosine_distance_prenormed(
          std::span<const double>(centroids[i]), norms[i], cc, norms[c]);
      if (unit_step(sigma_drm - d)) fired[c].push_back(i);
    }
  }
  graph.predicate_evaluations = evals;

  for (std::uint32_t c = 0; c < n; ++c)
    for (std::uint32_t i : fired[c]) graph.edges.emplace_back(i, c);
  return graph;
}

ClosureMap closures(const LinkGraph& graph) {
  UnionFind uf(graph.n);
  for (const auto& [i, c] : graph.edges) uf.unite(i, c);
  ClosureMap map;
  map.assignment = uf.smallest_member_labels();
  map.closure_count = static_cast<std::uint32_t>(uf.component_count());
  return map;
}

std::vector<Tracklet> merge_closures(const std::vector<Tracklet>& tracklets,
                                     const ClosureMap& map) {
  if (map.assignment.size() != tracklets.size())
    throw ShapeMismatch("merge_closures: closure map does not cover all tracklets");

  std::vector<Tracklet> merged;
  merged.reserve(map.closure_count);
  std::map<std::uint32_t, std::size_t> out_index;
  for (std::size_t k = 0; k < tracklets.size(); ++k) {
    const std::uint32_t c = map.assignment[k];
    auto it = out_index.find(c);
    if (it == out_index.end()) {
      out_index.emplace(c, merged.size());
      Tracklet t;
      t.id = static_cast<std::int64_t>(c);
      t.label = static_cast<std::int64_t>(c);
      t.members = tracklets[k].members;
      merged.push_back(std::move(t));
    } else {
      Tracklet& t = merged[it->second];
      t.members.insert(t.members.end(), tracklets[k].members.begin(),
                       tracklets[k].members.end());
    }
  }
  return merged;
}

}  // namespace cion
