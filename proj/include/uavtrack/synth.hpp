// Copyright 2026 The uavtrack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

#include "uavtrack/tracker.hpp"
#include "uavtrack/types.hpp"

namespace uavtrack {

/// Detector-noise model applied on top of the ground truth.
struct NoiseConfig {
  double jitter_sigma = 0.0;     // Gaussian sigma, px, applied to corner and size
  double dropout_rate = 0.0;     // probability per visible frame of starting a burst
  int dropout_burst_max = 1;     // max consecutive missed frames per burst
  double spurious_rate = 0.0;    // expected false boxes per frame (Poisson)
  double conf_low = 0.5;         // sampled confidence range [low, high)
  double conf_high = 1.0;
};

/// How many instances of one class to place and how big their boxes are.
struct ClassPopulation {
  ClassId cls = 0;
  int count = 0;
  double min_size = 24.0;  // px, uniform per side
  double max_size = 96.0;
};

/// A deterministic scene: world-static boxes swept across the image by the
/// camera velocity. Identical (config, seed) reproduces bit-identical output.
struct SceneConfig {
  double image_width = 3840.0;
  double image_height = 2160.0;
  FrameIndex n_frames = 0;
  double fps = 24.0;  // metadata only; frames are the time unit throughout
  Vec2 camera_velocity{0.0, 0.0};
  std::vector<ClassPopulation> population;
  NoiseConfig noise;
  std::uint64_t seed = 0;
  std::size_t num_classes = 6;  // vocabulary size for spurious class sampling
};

/// Ground truth plus noise-corrupted detections. dropped_frames[i] records
/// exactly which of instance i's visible frames the dropout model removed
/// (including the rare jittered box that clipped to nothing), so window
/// oracles can reason about gaps without re-deriving the noise.
struct SynthResult {
  std::vector<GroundTruthInstance> ground_truth;
  std::vector<Detection> detections;
  std::vector<std::vector<FrameIndex>> dropped_frames;
};

/// Generates a scene. Instances are placed visible and pairwise disjoint at
/// frame 0, then translated by camera_velocity each frame and clipped to the
/// image; ground truth records every frame with positive visible area.
/// Detections are the ground truth boxes with jitter, dropout bursts, and
/// spurious boxes applied, sorted by frame. Throws Error on a zero-area
/// image or when instances cannot be placed disjointly.
SynthResult generate(const SceneConfig& config);

/// Independent window oracle: for each instance, the number of maximal runs
/// of observed frames (visible minus dropped) separated by gaps strictly
/// greater than params.time_window — the track count an ideal window-limited
/// tracker must produce. Pure frame arithmetic; params.match_iou is unused.
std::vector<std::int64_t> oracle_expected_tracks(
    std::span<const GroundTruthInstance> gt,
    std::span<const std::vector<FrameIndex>> dropped_frames,
    const TrackerParams& params);

}  // namespace uavtrack
