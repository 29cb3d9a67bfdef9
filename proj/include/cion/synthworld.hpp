#pragma once

// Synthetic "internet video" worlds: planted identities on the unit sphere,
// tracklets contaminated with wrong-identity samples, identities recurring
// across videos. Ground truth is kept alongside, so every pipeline stage can
// be scored. Also hosts the all-pairs oracle correlator and the evaluation
// metrics.

#include <cstdint>
#include <span>
#include <vector>

#include "cion/noise.hpp"
#include "cion/types.hpp"

namespace cion {

struct WorldSpec {
  int n_identities = 10;
  int n_videos = 5;
  int tracklets_per_video = 4;
  int samples_per_tracklet = 20;
  std::size_t dim = 64;
  double intra_spread = 0.15;          // angular noise within an identity
  double contamination_rate = 0.0;     // wrong-identity fraction per tracklet
  double cross_video_recurrence = 0.5; // P(identity reappears in a later video)
  std::uint64_t seed = 0;

  void validate() const;
};

struct World {
  Dataset dataset;
  std::vector<std::int64_t> truth;          // identity per sample
  std::vector<int> tracklet_identity;       // planted identity per global tracklet
  std::vector<FeatureD> identity_directions;
};

// Deterministic for a given spec at any thread count: every tracklet draws
// from its own sub-seeded generator and writes a preallocated row slice.
// Sample order is video-major, then tracklet, then frame; frame_index is
// unique within a video, so (video_id, frame_index) is a stable sample key.
World generate(const WorldSpec& spec);

struct CorrelateResult {
  std::vector<std::int64_t> labels;  // per sample; -1 = dropped
  std::size_t tracklet_count = 0;
};

// Oracle correlator: tracklet denoising, one global reallocation pass over
// all tracklets at once, then full unwindowed all-pairs linking + closure.
// Quadratic in the tracklet count; refuses instances above the cap.
CorrelateResult brute_force_correlate(const Dataset& ds, const PipelineConfig& config,
                                      std::size_t max_tracklets = 5000);

struct EvalReport {
  double pairwise_precision = 0.0;
  double pairwise_recall = 0.0;
  double pairwise_f1 = 0.0;
  double cluster_purity = 0.0;
  std::int64_t identity_count_found = 0;
  std::int64_t identity_count_true = 0;
  NoiseReport noise_before;  // truth labeling, over the evaluated samples
  NoiseReport noise_after;   // predicted labeling, over the evaluated samples
};

// Pairwise precision/recall/F1 and purity via contingency counts. Samples
// with predicted label < 0 (dropped by the pipeline) are excluded from the
// evaluated universe.
EvalReport evaluate(const Dataset& ds, std::span<const std::int64_t> predicted,
                    std::span<const std::int64_t> truth, const PipelineConfig& config);

// Small labeled embedding set for the distillation trainer: train/held-out
// split per identity, same angular noise model as generate().
struct IdentityDataset {
  std::size_t dim = 0;
  int n_identities = 0;
  std::vector<FeatureD> train_features;
  std::vector<int> train_labels;
  std::vector<FeatureD> heldout_features;
  std::vector<int> heldout_labels;
};

IdentityDataset make_identity_dataset(int n_identities, int train_per_identity,
                                      int heldout_per_identity, std::size_t dim,
                                      double spread, std::uint64_t seed);

}  // namespace cion
