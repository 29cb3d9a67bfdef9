#pragma once

// Single-video denoising, two stages:
//  1. reallocate each tracklet's excluded samples to the nearest *other*
//     tracklet (strictly under sigma_cst) or discard them;
//  2. merge tracklets whose centroids sit within sigma_drm of each other,
//     transitively, repeated to fixpoint on the recomputed centroids.

#include <cstdint>
#include <vector>

#include "cion/tracklet_denoise.hpp"
#include "cion/types.hpp"

namespace cion {

struct Reallocation {
  std::uint32_t sample;       // dataset row
  std::int64_t from_tracklet; // origin tracklet id
  std::int64_t to_tracklet;   // destination tracklet id
};

struct VideoDenoiseResult {
  std::vector<Tracklet> tracklets;           // post-merge
  std::vector<std::uint32_t> discarded;      // dataset rows
  std::vector<Reallocation> reallocations;
  // Sets of original tracklet ids that ended up merged; each set has >= 2
  // members. Singleton components are not listed.
  std::vector<std::vector<std::int64_t>> merges;
};

// Eq-5 stage. Destination centroids are those of the denoised tracklets,
// frozen for the whole pass; assignments are applied in batch afterwards, so
// the processing order of excluded samples cannot matter. Ties on the argmin
// go to the lowest tracklet id. A video with a single tracklet discards all
// of its exclusions.
void reallocate(const Dataset& ds, std::vector<TrackletDenoiseResult>& video,
                double sigma_cst, std::vector<std::uint32_t>& discarded,
                std::vector<Reallocation>& reallocations);

// Eq-6 stage on explicit tracklets: single merge pass on the current
// centroids (pairwise predicate + transitive closure). The merged tracklet
// keeps the smallest original id/label and concatenates members in input
// tracklet order.
std::vector<Tracklet> merge_tracklets_once(const Dataset& ds,
                                           const std::vector<Tracklet>& tracklets,
                                           double sigma_drm,
                                           std::vector<std::vector<std::int64_t>>* merges);

// Full single-video pass: reallocate, then merge to fixpoint (at most one
// pass per input tracklet; asserted). Accumulates merge sets across passes.
VideoDenoiseResult denoise_video(const Dataset& ds,
                                 std::vector<TrackletDenoiseResult> video,
                                 double sigma_cst, double sigma_drm);

}  // namespace cion
