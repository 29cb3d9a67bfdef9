#pragma once

// Single-tracklet denoising: iteratively eject the sample with the largest
// leave-one-out deviation until every remaining sample sits within sigma_cst
// of the centroid of the others, or the tracklet has shrunk to min_size.

#include <cstdint>
#include <vector>

#include "cion/types.hpp"

namespace cion {

struct TrackletDenoiseResult {
  Tracklet kept;
  std::vector<std::uint32_t> excluded;  // sample indices, in removal order
  int iterations = 0;
  // True when the loop stopped at min_size with a deviation still >= sigma_cst.
  bool saturated = false;
};

// Leave-one-out centroids come from a maintained sum vector: O(m * D) per
// iteration instead of O(m^2 * D). Ties on the max deviation go to the lowest
// frame_index.
TrackletDenoiseResult denoise_tracklet(const Dataset& ds, const Tracklet& t,
                                       double sigma_cst, int min_size = 2);

}  // namespace cion
