#pragma once

// Domain types shared by every stage of the identity-correlation pipeline.
//
// Feature storage is float32 (matching the on-disk format); all arithmetic
// that feeds a threshold comparison is done in double. Centroids are double
// vectors so that repeated subtract/add cycles in the denoising loops do not
// drift relative to a fresh recomputation.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cion {

using FeatureD = std::vector<double>;

// ---- Errors ----------------------------------------------------------------

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroNormVector : Error {
  explicit ZeroNormVector(const std::string& msg = "vector has near-zero norm")
      : Error(msg) {}
};

struct EmptySet : Error {
  explicit EmptySet(const std::string& msg = "empty sample set") : Error(msg) {}
};

struct EmptyTracklet : Error {
  explicit EmptyTracklet(const std::string& msg = "empty tracklet") : Error(msg) {}
};

struct ShapeMismatch : Error {
  explicit ShapeMismatch(const std::string& msg = "shape mismatch") : Error(msg) {}
};

struct NonFiniteLogits : Error {
  explicit NonFiniteLogits(const std::string& msg = "non-finite logits") : Error(msg) {}
};

struct EmptyIdentitySet : Error {
  explicit EmptyIdentitySet(const std::string& msg = "empty identity set") : Error(msg) {}
};

struct InvalidSpec : Error {
  explicit InvalidSpec(const std::string& msg) : Error(msg) {}
};

struct UniverseMismatch : Error {
  explicit UniverseMismatch(const std::string& msg) : Error(msg) {}
};

struct InstanceTooLarge : Error {
  explicit InstanceTooLarge(const std::string& msg) : Error(msg) {}
};

struct IoError : Error {
  explicit IoError(const std::string& msg) : Error(msg) {}
};

// ---- Feature storage -------------------------------------------------------

// Flat row-major float32 store. Row i holds the embedding of sample i.
class FeatureStore {
 public:
  FeatureStore() = default;
  explicit FeatureStore(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : data_.size() / dim_; }

  std::span<const float> row(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<float> row_mut(std::size_t i) {
    return {data_.data() + i * dim_, dim_};
  }

  // Appends one row; rejects dimension mismatch and non-finite entries.
  std::size_t append(std::span<const float> v);

  // Preallocates n uninitialized rows (filled in place by generators).
  void resize_rows(std::size_t n) { data_.resize(n * dim_); }

  const std::vector<float>& raw() const { return data_; }

 private:
  std::size_t dim_ = 0;
  std::vector<float> data_;
};

// ---- Samples, tracklets, datasets -------------------------------------------

// Provenance of one sample. The feature lives at the same index in the
// dataset's FeatureStore.
struct SampleMeta {
  std::uint32_t video_id = 0;
  std::uint32_t tracklet_id = 0;
  std::uint32_t frame_index = 0;
};

struct Dataset {
  FeatureStore features;
  std::vector<SampleMeta> samples;  // samples[i] <-> features.row(i)

  std::size_t size() const { return samples.size(); }
  std::size_t dim() const { return features.dim(); }
};

// One provisional identity: an ordered set of sample indices into a Dataset.
// `id` is the global tracklet index assigned at ingestion; `label` is the
// current identity label (starts equal to `id`, rewritten by merges).
struct Tracklet {
  std::int64_t id = 0;
  std::int64_t label = 0;
  std::vector<std::uint32_t> members;

  bool empty() const { return members.empty(); }
  std::size_t size() const { return members.size(); }
};

// Centroid + max member distance summary of one sample group.
struct Hypersphere {
  FeatureD centroid;
  double radius = 0.0;  // in [0, 2] under cosine distance
};

// ---- Configuration -----------------------------------------------------------

enum class DistanceMetric { kCosine };

struct PipelineConfig {
  double sigma_cst = 0.2;        // intra-consistency criterion
  double sigma_drm = 0.18;       // inter-discrimination criterion
  int sliding_half_width = 1000; // r_s
  int min_tracklet_size = 2;     // denoising stops excluding at this size
  DistanceMetric distance = DistanceMetric::kCosine;

  void validate() const {
    if (!(sigma_cst > 0.0 && sigma_cst <= 2.0))
      throw InvalidSpec("sigma_cst must be in (0, 2]");
    if (!(sigma_drm > 0.0 && sigma_drm <= 2.0))
      throw InvalidSpec("sigma_drm must be in (0, 2]");
    if (sliding_half_width < 1)
      throw InvalidSpec("sliding_half_width must be >= 1");
    if (min_tracklet_size < 1)
      throw InvalidSpec("min_tracklet_size must be >= 1");
  }
};

}  // namespace cion
