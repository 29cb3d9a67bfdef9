#include "cion/video_denoise.hpp"

#include <algorithm>
#include <map>

#include <omp.h>

#include "cion/core.hpp"
#include "cion/union_find.hpp"

namespace cion {

void reallocate(const Dataset& ds, std::vector<TrackletDenoiseResult>& video,
                double sigma_cst, std::vector<std::uint32_t>& discarded,
                std::vector<Reallocation>& reallocations) {
  if (video.empty()) return;
  const std::size_t n = video.size();

  // Frozen centroids of the denoised tracklets.
  std::vector<FeatureD> centroids(n);
  std::vector<double> cnorms(n);
  for (std::size_t k = 0; k < n; ++k) {
    centroids[k] = centroid(ds.features, video[k].kept.members);
    cnorms[k] = norm(std::span<const double>(centroids[k]));
  }

  struct Pending {
    std::uint32_t sample;
    std::size_t from;
    std::ptrdiff_t to;  // -1 = discard
  };
  std::vector<Pending> pending;
  for (std::size_t k = 0; k < n; ++k)
    for (std::uint32_t s : video[k].excluded)
      pending.push_back({s, k, -1});

#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < static_cast<std::int64_t>(pending.size()); ++p) {
    const auto x = ds.features.row(pending[p].sample);
    const double nx = norm(x);
    double best = 2.0 + 1.0;
    std::ptrdiff_t best_k = -1;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == pending[p].from) continue;
      const double d = cosine_distance_prenormed(
          x, nx, std::span<const double>(centroids[r]), cnorms[r]);
      // Tie broken by lowest tracklet id == lowest index (ingestion order).
      if (d < best) {
        best = d;
        best_k = static_cast<std::ptrdiff_t>(r);
      }
    }
    if (best_k >= 0 && best < sigma_cst) pending[p].to = best_k;
  }

  // Batch application, in exclusion order.
  for (const Pending& p : pending) {
    if (p.to < 0) {
      discarded.push_back(p.sample);
    } else {
      video[static_cast<std::size_t>(p.to)].kept.members.push_back(p.sample);
      reallocations.push_back({p.sample, video[p.from].kept.id,
                               video[static_cast<std::size_t>(p.to)].kept.id});
    }
  }
}

std::vector<Tracklet> merge_tracklets_once(const Dataset& ds,
                                           const std::vector<Tracklet>& tracklets,
                                           double sigma_drm,
                                           std::vector<std::vector<std::int64_t>>* merges) {
  const std::size_t n = tracklets.size();
  if (n == 0) return {};

  std::vector<FeatureD> centroids(n);
  std::vector<double> cnorms(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k) {
    centroids[k] = centroid(ds.features, tracklets[k].members);
    cnorms[k] = norm(std::span<const double>(centroids[k]));
  }

  std::vector<std::vector<std::uint32_t>> fired(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t p = 0; p < static_cast<std::int64_t>(n); ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const double d = cosine_distance_prenormed(
          std::span<const double>(centroids[p]), cnorms[p],
          std::span<const double>(centroids[q]), cnorms[q]);
      if (unit_step(sigma_drm - d)) fired[p].push_back(static_cast<std::uint32_t>(q));
    }
  }

  UnionFind uf(n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::uint32_t q : fired[p]) uf.unite(p, q);

  const std::vector<std::uint32_t> comp = uf.smallest_member_labels();

  std::vector<Tracklet> merged;
  std::map<std::uint32_t, std::size_t> out_index;
  std::map<std::uint32_t, std::vector<std::int64_t>> group_ids;
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint32_t c = comp[k];
    auto it = out_index.find(c);
    if (it == out_index.end()) {
      out_index.emplace(c, merged.size());
      Tracklet t;
      t.id = tracklets[k].id;        // smallest id: components labeled by
      t.label = tracklets[k].label;  // smallest member, visited in order
      t.members = tracklets[k].members;
      merged.push_back(std::move(t));
    } else {
      Tracklet& t = merged[it->second];
      t.id = std::min(t.id, tracklets[k].id);
      t.label = std::min(t.label, tracklets[k].label);
      t.members.insert(t.members.end(), tracklets[k].members.begin(),
                       tracklets[k].members.end());
    }
    group_ids[c].push_back(tracklets[k].id);
  }

  if (merges) {
    for (auto& [c, ids] : group_ids)
      if (ids.size() >= 2) merges->push_back(std::move(ids));
  }
  return merged;
}

VideoDenoiseResult denoise_video(const Dataset& ds,
                                 std::vector<TrackletDenoiseResult> video,
                                 double sigma_cst, double sigma_drm) {
  VideoDenoiseResult result;
  if (video.empty()) return result;

  reallocate(ds, video, sigma_cst, result.discarded, result.reallocations);

  std::vector<Tracklet> current;
  current.reserve(video.size());
  for (auto& r : video) current.push_back(std::move(r.kept));

  // id -> set of original ids it absorbed, composed across fixpoint passes.
  std::map<std::int64_t, std::vector<std::int64_t>> absorbed;
  const std::size_t max_passes = current.size();
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    std::vector<std::vector<std::int64_t>> pass_merges;
    std::vector<Tracklet> next =
        merge_tracklets_once(ds, current, sigma_drm, &pass_merges);
    if (next.size() == current.size()) {
      current = std::move(next);
      break;
    }
    for (auto& group : pass_merges) {
      std::vector<std::int64_t> expanded;
      for (std::int64_t id : group) {
        auto it = absorbed.find(id);
        if (it != absorbed.end()) {
          expanded.insert(expanded.end(), it->second.begin(), it->second.end());
          absorbed.erase(it);
        } else {
          expanded.push_back(id);
        }
      }
      std::sort(expanded.begin(), expanded.end());
      absorbed[expanded.front()] = std::move(expanded);
    }
    current = std::move(next);
  }

  for (auto& [id, group] : absorbed)
    if (group.size() >= 2) result.merges.push_back(std::move(group));

  result.tracklets = std::move(current);
  return result;
}

}  // namespace cion
