#include "cion/synthworld.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include <omp.h>

#include "cion/core.hpp"
#include "cion/pipeline.hpp"
#include "cion/ref.hpp"
#include "cion/tracklet_denoise.hpp"
#include "cion/video_denoise.hpp"

namespace cion {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(splitmix64(seed ^ splitmix64(a)) ^ splitmix64(b ^ 0xabcdef12ULL));
}

FeatureD random_unit(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  FeatureD v(dim);
  double n = 0.0;
  do {
    n = 0.0;
    for (double& x : v) {
      x = gauss(rng);
      n += x * x;
    }
  } while (n < 1e-24);
  n = std::sqrt(n);
  for (double& x : v) x /= n;
  return v;
}

// Unit vector near `direction`: direction + spread * g with g ~ N(0, I/D).
FeatureD perturbed_unit(std::mt19937_64& rng, const FeatureD& direction,
                        double spread) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t dim = direction.size();
  const double scale = spread / std::sqrt(static_cast<double>(dim));
  FeatureD v(dim);
  double n = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    v[d] = direction[d] + scale * gauss(rng);
    n += v[d] * v[d];
  }
  n = std::sqrt(n);
  if (n < 1e-24) return direction;
  for (double& x : v) x /= n;
  return v;
}

}  // namespace

void WorldSpec::validate() const {
  if (n_identities < 1 || n_videos < 1 || tracklets_per_video < 1 ||
      samples_per_tracklet < 1 || dim < 1)
    throw InvalidSpec("WorldSpec: all counts must be >= 1");
  if (intra_spread < 0.0) throw InvalidSpec("WorldSpec: intra_spread must be >= 0");
  if (contamination_rate < 0.0 || contamination_rate > 1.0)
    throw InvalidSpec("WorldSpec: contamination_rate must be in [0, 1]");
  if (cross_video_recurrence < 0.0 || cross_video_recurrence > 1.0)
    throw InvalidSpec("WorldSpec: cross_video_recurrence must be in [0, 1]");
}

World generate(const WorldSpec& spec) {
  spec.validate();
  World world;

  {
    std::mt19937_64 rng(mix(spec.seed, 0x1de27));
    world.identity_directions.reserve(spec.n_identities);
    for (int i = 0; i < spec.n_identities; ++i)
      world.identity_directions.push_back(random_unit(rng, spec.dim));
  }

  // Identity per tracklet: the first video draws fresh identities; later
  // videos reuse an identity seen in an earlier video with probability
  // cross_video_recurrence, otherwise draw fresh until the pool runs dry.
  const int n_tracklets = spec.n_videos * spec.tracklets_per_video;
  world.tracklet_identity.resize(n_tracklets);
  {
    std::mt19937_64 rng(mix(spec.seed, 0xa5516));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<int> unused(spec.n_identities);
    for (int i = 0; i < spec.n_identities; ++i) unused[i] = i;
    std::vector<int> seen_earlier;  // identities present in earlier videos
    std::set<int> seen_all;
    for (int v = 0; v < spec.n_videos; ++v) {
      std::vector<int> this_video;
      for (int t = 0; t < spec.tracklets_per_video; ++t) {
        int id;
        const bool recur = v > 0 && !seen_earlier.empty() &&
                           unif(rng) < spec.cross_video_recurrence;
        if (recur) {
          std::uniform_int_distribution<std::size_t> pick(0, seen_earlier.size() - 1);
          id = seen_earlier[pick(rng)];
        } else if (!unused.empty()) {
          std::uniform_int_distribution<std::size_t> pick(0, unused.size() - 1);
          const std::size_t k = pick(rng);
          id = unused[k];
          unused.erase(unused.begin() + static_cast<std::ptrdiff_t>(k));
        } else {
          std::vector<int> pool(seen_all.begin(), seen_all.end());
          std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
          id = pool[pick(rng)];
        }
        world.tracklet_identity[v * spec.tracklets_per_video + t] = id;
        this_video.push_back(id);
        seen_all.insert(id);
      }
      for (int id : this_video)
        if (std::find(seen_earlier.begin(), seen_earlier.end(), id) ==
            seen_earlier.end())
          seen_earlier.push_back(id);
    }
  }

  const std::size_t total =
      static_cast<std::size_t>(n_tracklets) * spec.samples_per_tracklet;
  world.dataset.features = FeatureStore(spec.dim);
  world.dataset.features.resize_rows(total);
  world.dataset.samples.resize(total);
  world.truth.resize(total);

#pragma omp parallel for schedule(dynamic, 4)
  for (int g = 0; g < n_tracklets; ++g) {
    const int v = g / spec.tracklets_per_video;
    const int t = g % spec.tracklets_per_video;
    std::mt19937_64 rng(mix(spec.seed, 0x7ac1e7, (std::uint64_t(v) << 24) | std::uint64_t(t)));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int own_id = world.tracklet_identity[g];
    for (int j = 0; j < spec.samples_per_tracklet; ++j) {
      int sample_id = own_id;
      if (spec.n_identities > 1 && unif(rng) < spec.contamination_rate) {
        std::uniform_int_distribution<int> pick(0, spec.n_identities - 2);
        int other = pick(rng);
        if (other >= own_id) ++other;
        sample_id = other;
      }
      const FeatureD x =
          perturbed_unit(rng, world.identity_directions[sample_id], spec.intra_spread);
      const std::size_t row =
          static_cast<std::size_t>(g) * spec.samples_per_tracklet + j;
      auto dst = world.dataset.features.row_mut(row);
      for (std::size_t d = 0; d < spec.dim; ++d) dst[d] = static_cast<float>(x[d]);
      world.dataset.samples[row] = {
          static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(t),
          static_cast<std::uint32_t>(t * spec.samples_per_tracklet + j)};
      world.truth[row] = sample_id;
    }
  }
  return world;
}

CorrelateResult brute_force_correlate(const Dataset& ds, const PipelineConfig& config,
                                      std::size_t max_tracklets) {
  config.validate();
  std::vector<Tracklet> tracklets = ingest_tracklets(ds);
  if (tracklets.size() > max_tracklets)
    throw InstanceTooLarge("brute_force_correlate: " + std::to_string(tracklets.size()) +
                           " tracklets exceeds cap " + std::to_string(max_tracklets));

  CorrelateResult result;
  result.tracklet_count = tracklets.size();

  // Stage 1 everywhere, then one global reallocation pass with every tracklet
  // treated as a sibling (the single ultra-long video view).
  std::vector<TrackletDenoiseResult> denoised;
  denoised.reserve(tracklets.size());
  for (const Tracklet& t : tracklets)
    denoised.push_back(ref::denoise_tracklet(ds, t, config.sigma_cst,
                                             config.min_tracklet_size));

  std::vector<std::uint32_t> discarded;
  std::vector<Reallocation> reallocations;
  reallocate(ds, denoised, config.sigma_cst, discarded, reallocations);

  std::vector<FeatureD> centroids;
  centroids.reserve(denoised.size());
  for (const auto& r : denoised)
    centroids.push_back(centroid(ds.features, r.kept.members));

  const ref::PairLinks links = ref::all_pairs_links(centroids, config.sigma_drm);
  const std::vector<std::uint32_t> comp =
      ref::components_bfs(static_cast<std::uint32_t>(centroids.size()), links.edges);

  result.labels.assign(ds.size(), -1);
  for (std::size_t k = 0; k < denoised.size(); ++k)
    for (std::uint32_t s : denoised[k].kept.members)
      result.labels[s] = static_cast<std::int64_t>(comp[k]);
  return result;
}

EvalReport evaluate(const Dataset& ds, std::span<const std::int64_t> predicted,
                    std::span<const std::int64_t> truth, const PipelineConfig& config) {
  if (predicted.size() != truth.size() || predicted.size() != ds.size())
    throw UniverseMismatch("evaluate: predicted/truth/dataset sizes differ");

  std::vector<std::size_t> universe;
  for (std::size_t i = 0; i < predicted.size(); ++i)
    if (predicted[i] >= 0) universe.push_back(i);
  if (universe.empty()) throw EmptySet("evaluate: no predicted samples");

  // Contingency table over the evaluated universe.
  std::map<std::int64_t, std::map<std::int64_t, std::uint64_t>> table;
  std::map<std::int64_t, std::uint64_t> pred_sizes, true_sizes;
  for (std::size_t i : universe) {
    ++table[predicted[i]][truth[i]];
    ++pred_sizes[predicted[i]];
    ++true_sizes[truth[i]];
  }

  const auto pairs2 = [](std::uint64_t c) { return c * (c - 1) / 2; };
  std::uint64_t tp = 0, pred_pairs = 0, true_pairs = 0, best_sum = 0;
  for (const auto& [p, row] : table) {
    std::uint64_t best = 0;
    for (const auto& [t, cnt] : row) {
      tp += pairs2(cnt);
      best = std::max(best, cnt);
    }
    best_sum += best;
  }
  for (const auto& [p, c] : pred_sizes) pred_pairs += pairs2(c);
  for (const auto& [t, c] : true_sizes) true_pairs += pairs2(c);

  EvalReport report;
  report.pairwise_precision =
      pred_pairs == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(pred_pairs);
  report.pairwise_recall =
      true_pairs == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(true_pairs);
  report.pairwise_f1 =
      report.pairwise_precision + report.pairwise_recall == 0.0
          ? 0.0
          : 2.0 * report.pairwise_precision * report.pairwise_recall /
                (report.pairwise_precision + report.pairwise_recall);
  report.cluster_purity =
      static_cast<double>(best_sum) / static_cast<double>(universe.size());
  report.identity_count_found = static_cast<std::int64_t>(pred_sizes.size());
  report.identity_count_true = static_cast<std::int64_t>(true_sizes.size());

  std::vector<std::int64_t> truth_masked(ds.size(), -1);
  for (std::size_t i : universe) truth_masked[i] = truth[i];
  report.noise_before = overall_noise(ds, truth_masked, config);
  report.noise_after = overall_noise(ds, predicted, config);
  return report;
}

IdentityDataset make_identity_dataset(int n_identities, int train_per_identity,
                                      int heldout_per_identity, std::size_t dim,
                                      double spread, std::uint64_t seed) {
  if (n_identities < 2) throw InvalidSpec("make_identity_dataset: need >= 2 identities");
  if (train_per_identity < 1 || heldout_per_identity < 0 || dim < 1)
    throw InvalidSpec("make_identity_dataset: bad counts");

  IdentityDataset out;
  out.dim = dim;
  out.n_identities = n_identities;
  std::mt19937_64 dir_rng(mix(seed, 0xd11));
  for (int id = 0; id < n_identities; ++id) {
    const FeatureD u = random_unit(dir_rng, dim);
    std::mt19937_64 rng(mix(seed, 0x5a3p1e, static_cast<std::uint64_t>(id)));
    for (int j = 0; j < train_per_identity; ++j) {
      out.train_features.push_back(perturbed_unit(rng, u, spread));
      out.train_labels.push_back(id);
    }
    for (int j = 0; j < heldout_per_identity; ++j) {
      out.heldout_features.push_back(perturbed_unit(rng, u, spread));
      out.heldout_labels.push_back(id);
    }
  }
  return out;
}

}  // namespace cion
