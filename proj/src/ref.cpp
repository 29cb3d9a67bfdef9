#include "cion/ref.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

namespace cion::ref {

namespace {

double naive_cosine(const FeatureD& a, const FeatureD& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  na = std::sqrt(na);
  nb = std::sqrt(nb);
  if (na < kZeroNormEps || nb < kZeroNormEps) return 2.0;
  double d = 1.0 - dot / (na * nb);
  if (d < 0.0) d = 0.0;
  if (d > 2.0) d = 2.0;
  return d;
}

double naive_cosine_rows(const Dataset& ds, std::uint32_t row, const FeatureD& c) {
  const auto x = ds.features.row(row);
  FeatureD xd(x.begin(), x.end());
  return naive_cosine(xd, c);
}

}  // namespace

NoiseReport overall_noise(const std::vector<FeatureD>& features,
                          std::span<const std::int64_t> cluster_ids,
                          const PipelineConfig& config) {
  if (features.empty()) throw EmptySet("ref::overall_noise: no samples");

  std::map<std::int64_t, std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < features.size(); ++i)
    clusters[cluster_ids[i]].push_back(i);

  std::vector<std::int64_t> ids;
  std::vector<FeatureD> cents;
  NoiseReport report;
  for (const auto& [id, members] : clusters) {
    FeatureD c(features.front().size(), 0.0);
    for (std::size_t i : members)
      for (std::size_t d = 0; d < c.size(); ++d) c[d] += features[i][d];
    for (double& x : c) x /= static_cast<double>(members.size());
    double radius = 0.0;
    for (std::size_t i : members)
      radius = std::max(radius, naive_cosine(features[i], c));
    report.per_cluster_cst.emplace_back(id, unit_step(radius - config.sigma_cst));
    ids.push_back(id);
    cents.push_back(std::move(c));
  }

  for (std::size_t i = 0; i < cents.size(); ++i)
    for (std::size_t j = i + 1; j < cents.size(); ++j)
      if (unit_step(config.sigma_drm - naive_cosine(cents[i], cents[j])))
        report.noisy_pairs.emplace_back(ids[i], ids[j]);

  report.cluster_count = static_cast<std::int64_t>(clusters.size());
  report.overall = static_cast<double>(report.cst_sum() + report.drm_sum()) /
                   static_cast<double>(report.cluster_count);
  return report;
}

std::vector<double> loo_deviations(const Dataset& ds,
                                   std::span<const std::uint32_t> members) {
  const std::size_t m = members.size();
  std::vector<double> devs(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    FeatureD c(ds.dim(), 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      const auto v = ds.features.row(members[j]);
      for (std::size_t d = 0; d < c.size(); ++d) c[d] += v[d];
    }
    for (double& x : c) x /= static_cast<double>(m - 1);
    devs[i] = naive_cosine_rows(ds, members[i], c);
  }
  return devs;
}

TrackletDenoiseResult denoise_tracklet(const Dataset& ds, const Tracklet& t,
                                       double sigma_cst, int min_size) {
  if (t.empty()) throw EmptyTracklet("ref::denoise_tracklet: empty tracklet");

  TrackletDenoiseResult result;
  result.kept.id = t.id;
  result.kept.label = t.label;
  std::vector<std::uint32_t> members = t.members;

  while (members.size() > 1) {
    const std::vector<double> devs = loo_deviations(ds, members);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < members.size(); ++i) {
      if (devs[i] > devs[arg] ||
          (devs[i] == devs[arg] && ds.samples[members[i]].frame_index <
                                       ds.samples[members[arg]].frame_index)) {
        arg = i;
      }
    }
    if (devs[arg] < sigma_cst) break;
    if (static_cast<int>(members.size()) <= min_size) {
      result.saturated = true;
      break;
    }
    result.excluded.push_back(members[arg]);
    members.erase(members.begin() + static_cast<std::ptrdiff_t>(arg));
    ++result.iterations;
  }

  result.kept.members = std::move(members);
  return result;
}

PairLinks all_pairs_links(const std::vector<FeatureD>& centroids, double sigma_drm,
                          std::optional<std::uint32_t> window) {
  PairLinks links;
  const std::size_t n = centroids.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (window && j - i > *window) continue;
      ++links.predicate_evaluations;
      if (unit_step(sigma_drm - naive_cosine(centroids[i], centroids[j])))
        links.edges.emplace_back(static_cast<std::uint32_t>(i),
                                 static_cast<std::uint32_t>(j));
    }
  }
  return links;
}

PairLinks sliding_links_serial(const std::vector<FeatureD>& centroids,
                               std::uint32_t half_width, double sigma_drm) {
  PairLinks links;
  const std::uint32_t n = static_cast<std::uint32_t>(centroids.size());
  for (std::uint32_t c = 0; c < n; ++c) {
    const std::uint32_t lo = c >= half_width ? c - half_width : 0u;
    for (std::uint32_t i = lo; i < c; ++i) {
      ++links.predicate_evaluations;
      if (unit_step(sigma_drm - naive_cosine(centroids[i], centroids[c])))
        links.edges.emplace_back(i, c);
    }
  }
  return links;
}

std::vector<std::uint32_t> components_bfs(
    std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<std::uint32_t> label(n, n);
  for (std::uint32_t start = 0; start < n; ++start) {
    if (label[start] != n) continue;
    std::deque<std::uint32_t> queue{start};
    label[start] = start;  // start is the smallest unvisited index
    while (!queue.empty()) {
      const std::uint32_t u = queue.front();
      queue.pop_front();
      for (std::uint32_t v : adj[u]) {
        if (label[v] == n) {
          label[v] = start;
          queue.push_back(v);
        }
      }
    }
  }
  return label;
}

std::vector<double> softmax_hp(const std::vector<double>& logits, double tau,
                               const std::vector<double>* center) {
  const std::size_t k = logits.size();
  std::vector<long double> z(k);
  for (std::size_t i = 0; i < k; ++i) {
    long double v = logits[i];
    if (center) v -= (*center)[i];
    z[i] = v / static_cast<long double>(tau);
  }
  long double zmax = z[0];
  for (long double v : z) zmax = std::max(zmax, v);
  long double sum = 0.0L;
  std::vector<long double> e(k);
  for (std::size_t i = 0; i < k; ++i) {
    e[i] = expl(z[i] - zmax);
    sum += e[i];
  }
  std::vector<double> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = static_cast<double>(e[i] / sum);
  return out;
}

double cross_entropy(const std::vector<double>& p_t, const std::vector<double>& p_s) {
  double h = 0.0;
  for (std::size_t i = 0; i < p_t.size(); ++i) h -= p_t[i] * std::log(p_s[i]);
  return h;
}

std::vector<double> grad_central_diff(const std::vector<double>& p_t,
                                      const std::vector<double>& logits, double tau,
                                      double h) {
  std::vector<double> grad(logits.size());
  for (std::size_t k = 0; k < logits.size(); ++k) {
    std::vector<double> zp = logits, zm = logits;
    zp[k] += h;
    zm[k] -= h;
    const double fp = cross_entropy(p_t, softmax_hp(zp, tau, nullptr));
    const double fm = cross_entropy(p_t, softmax_hp(zm, tau, nullptr));
    grad[k] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

PairwiseCounts pairwise_metrics(std::span<const std::int64_t> predicted,
                                std::span<const std::int64_t> truth) {
  const std::size_t n = predicted.size();
  std::uint64_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool same_pred = predicted[i] == predicted[j];
      const bool same_true = truth[i] == truth[j];
      if (same_pred && same_true) ++tp;
      else if (same_pred && !same_true) ++fp;
      else if (!same_pred && same_true) ++fn;
    }
  }
  PairwiseCounts out;
  out.precision = tp + fp == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  out.recall = tp + fn == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  out.f1 = out.precision + out.recall == 0.0
               ? 0.0
               : 2.0 * out.precision * out.recall / (out.precision + out.recall);

  std::map<std::int64_t, std::map<std::int64_t, std::uint64_t>> table;
  for (std::size_t i = 0; i < n; ++i) ++table[predicted[i]][truth[i]];
  std::uint64_t best_sum = 0;
  for (const auto& [p, row] : table) {
    std::uint64_t best = 0;
    for (const auto& [t, cnt] : row) best = std::max(best, cnt);
    best_sum += best;
  }
  out.purity = n == 0 ? 1.0 : static_cast<double>(best_sum) / static_cast<double>(n);
  return out;
}

}  // namespace cion::ref
