#include "cion/noise.hpp"

#include <map>

#include <omp.h>

namespace cion {

int intra_noise(const std::vector<FeatureD>& cluster, double sigma_cst) {
  if (cluster.empty()) throw EmptySet("intra_noise: empty cluster");
  const FeatureD c = centroid(cluster);
  const double nc = norm(std::span<const double>(c));
  double radius = 0.0;
  for (const FeatureD& x : cluster) {
    radius = std::max(radius,
                      cosine_distance_prenormed(std::span<const double>(x),
                                                norm(std::span<const double>(x)),
                                                std::span<const double>(c), nc));
  }
  return unit_step(radius - sigma_cst);
}

int inter_noise(const FeatureD& centroid_i, const FeatureD& centroid_j,
                double sigma_drm) {
  if (centroid_i.size() != centroid_j.size())
    throw ShapeMismatch("inter_noise: dimension mismatch");
  const double d = cosine_distance_prenormed(
      std::span<const double>(centroid_i), norm(std::span<const double>(centroid_i)),
      std::span<const double>(centroid_j), norm(std::span<const double>(centroid_j)));
  return unit_step(sigma_drm - d);
}

namespace {

// Shared implementation: clusters given as (id, centroid, radius).
NoiseReport assemble(std::vector<std::pair<std::int64_t, Hypersphere>> spheres,
                     const PipelineConfig& config) {
  const std::int64_t m = static_cast<std::int64_t>(spheres.size());
  NoiseReport report;
  report.cluster_count = m;
  report.per_cluster_cst.reserve(spheres.size());
  for (const auto& [id, s] : spheres)
    report.per_cluster_cst.emplace_back(id, unit_step(s.radius - config.sigma_cst));

  std::vector<double> norms(spheres.size());
  for (std::size_t i = 0; i < spheres.size(); ++i)
    norms[i] = norm(std::span<const double>(spheres[i].second.centroid));

  // Unordered pairs, collected per-i and concatenated in i order.
  std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> fired(spheres.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < m; ++i) {
    const auto ci = std::span<const double>(spheres[i].second.centroid);
    for (std::int64_t j = i + 1; j < m; ++j) {
      const double d = cosine_distance_prenormed(
          ci, norms[i], std::span<const double>(spheres[j].second.centroid), norms[j]);
      if (unit_step(config.sigma_drm - d))
        fired[i].emplace_back(spheres[i].first, spheres[j].first);
    }
  }
  for (auto& f : fired)
    report.noisy_pairs.insert(report.noisy_pairs.end(), f.begin(), f.end());
  std::sort(report.noisy_pairs.begin(), report.noisy_pairs.end());

  report.overall =
      static_cast<double>(report.cst_sum() + report.drm_sum()) / static_cast<double>(m);
  return report;
}

}  // namespace

NoiseReport overall_noise(const std::vector<FeatureD>& features,
                          std::span<const std::int64_t> cluster_ids,
                          const PipelineConfig& config) {
  if (features.empty()) throw EmptySet("overall_noise: no samples");
  if (features.size() != cluster_ids.size())
    throw ShapeMismatch("overall_noise: label count mismatch");

  std::map<std::int64_t, std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < features.size(); ++i)
    clusters[cluster_ids[i]].push_back(i);

  std::vector<std::pair<std::int64_t, Hypersphere>> spheres;
  spheres.reserve(clusters.size());
  for (const auto& [id, members] : clusters) {
    std::vector<FeatureD> vecs;
    vecs.reserve(members.size());
    for (std::size_t i : members) vecs.push_back(features[i]);
    Hypersphere s;
    s.centroid = centroid(vecs);
    const double nc = norm(std::span<const double>(s.centroid));
    for (const FeatureD& x : vecs)
      s.radius = std::max(
          s.radius, cosine_distance_prenormed(std::span<const double>(x),
                                              norm(std::span<const double>(x)),
                                              std::span<const double>(s.centroid), nc));
    spheres.emplace_back(id, std::move(s));
  }
  return assemble(std::move(spheres), config);
}

NoiseReport overall_noise(const Dataset& ds, std::span<const std::int64_t> labels,
                          const PipelineConfig& config) {
  if (ds.size() != labels.size())
    throw ShapeMismatch("overall_noise: label count mismatch");

  std::map<std::int64_t, std::vector<std::uint32_t>> clusters;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] >= 0) clusters[labels[i]].push_back(static_cast<std::uint32_t>(i));
  if (clusters.empty()) throw EmptySet("overall_noise: no samples");

  std::vector<std::pair<std::int64_t, Hypersphere>> spheres(clusters.size());
  std::vector<std::pair<std::int64_t, const std::vector<std::uint32_t>*>> ordered;
  ordered.reserve(clusters.size());
  for (const auto& [id, members] : clusters) ordered.emplace_back(id, &members);

#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(ordered.size()); ++k) {
    spheres[k] = {ordered[k].first, bounding_sphere(ds.features, *ordered[k].second)};
  }
  return assemble(std::move(spheres), config);
}

}  // namespace cion
