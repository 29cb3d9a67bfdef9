#include "cion/tracklet_denoise.hpp"

#include "cion/core.hpp"

namespace cion {

TrackletDenoiseResult denoise_tracklet(const Dataset& ds, const Tracklet& t,
                                       double sigma_cst, int min_size) {
  if (t.empty()) throw EmptyTracklet("denoise_tracklet: tracklet " +
                                     std::to_string(t.id) + " is empty");
  if (min_size < 1) throw InvalidSpec("denoise_tracklet: min_size must be >= 1");

  TrackletDenoiseResult result;
  result.kept.id = t.id;
  result.kept.label = t.label;

  std::vector<std::uint32_t> members = t.members;
  const std::size_t dim = ds.dim();

  FeatureD sum(dim, 0.0);
  add_rows(ds.features, members, sum);

  FeatureD loo(dim, 0.0);
  while (true) {
    const std::size_t m = members.size();
    if (m <= 1) break;  // leave-one-out undefined for a singleton

    double max_dev = -1.0;
    std::size_t arg = 0;
    std::uint32_t arg_frame = 0;
    const double inv = 1.0 / static_cast<double>(m - 1);
    for (std::size_t i = 0; i < m; ++i) {
      const auto x = ds.features.row(members[i]);
      for (std::size_t d = 0; d < dim; ++d) loo[d] = (sum[d] - x[d]) * inv;
      const double dev =
          cosine_distance_prenormed(x, norm(x), std::span<const double>(loo),
                                    norm(std::span<const double>(loo)));
      const std::uint32_t frame = ds.samples[members[i]].frame_index;
      if (dev > max_dev || (dev == max_dev && frame < arg_frame)) {
        max_dev = dev;
        arg = i;
        arg_frame = frame;
      }
    }

    if (max_dev < sigma_cst) break;
    if (static_cast<int>(m) <= min_size) {
      result.saturated = true;
      break;
    }

    const std::uint32_t dev_row = members[arg];
    const auto x = ds.features.row(dev_row);
    for (std::size_t d = 0; d < dim; ++d) sum[d] -= x[d];
    members.erase(members.begin() + static_cast<std::ptrdiff_t>(arg));
    result.excluded.push_back(dev_row);
    ++result.iterations;
  }

  result.kept.members = std::move(members);
  return result;
}

}  // namespace cion
