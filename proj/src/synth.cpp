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

#include "uavtrack/synth.hpp"

#include <algorithm>
#include <cmath>

#include "uavtrack/error.hpp"
#include "uavtrack/rng.hpp"

namespace uavtrack {

namespace {

constexpr int kMaxPlacementTries = 1000;
constexpr double kMinBoxSide = 1e-3;
constexpr double kSpuriousMinSize = 16.0;
constexpr double kSpuriousMaxSize = 96.0;

// An instance counts as visible while at least this fraction of its box is
// inside the image. Without the floor, exits produce sub-pixel slivers that
// neither a detector nor IOU matching could ever follow.
constexpr double kMinVisibleFraction = 0.25;

// Clips a box to [0, W] x [0, H]. A box fully outside comes back with
// non-positive w or h.
BBox clip_to_image(const BBox& b, double width, double height) {
  const double x0 = std::max(b.x, 0.0);
  const double y0 = std::max(b.y, 0.0);
  const double x1 = std::min(b.x + b.w, width);
  const double y1 = std::min(b.y + b.h, height);
  return {x0, y0, x1 - x0, y1 - y0};
}

bool boxes_overlap(const BBox& a, const BBox& b, double margin) {
  const BBox ai{a.x - margin, a.y - margin, a.w + 2 * margin, a.h + 2 * margin};
  return iou(ai, b) > 0.0;
}

}  // namespace

SynthResult generate(const SceneConfig& config) {
  if (config.image_width <= 0.0 || config.image_height <= 0.0)
    throw Error("scene: image has zero area");
  for (const ClassPopulation& pop : config.population) {
    if (pop.count < 0) throw Error("scene: negative instance count");
    if (pop.min_size <= 0.0 || pop.max_size < pop.min_size)
      throw Error("scene: invalid size range");
  }

  SplitMix64 root(config.seed);
  SplitMix64 placement_rng = root.split();

  // Instances keep their relative layout (camera motion moves everything
  // together), so disjoint placement at frame 0 stays disjoint forever.
  // The margin keeps jittered neighbors from overlapping into NMS range.
  struct Seed {
    ClassId cls;
    BBox box;
  };
  std::vector<Seed> seeds;
  const double margin = 8.0 + 4.0 * config.noise.jitter_sigma;
  for (const ClassPopulation& pop : config.population) {
    for (int i = 0; i < pop.count; ++i) {
      bool placed = false;
      for (int attempt = 0; attempt < kMaxPlacementTries && !placed; ++attempt) {
        const double w = placement_rng.uniform(pop.min_size, pop.max_size);
        const double h = placement_rng.uniform(pop.min_size, pop.max_size);
        if (w > config.image_width || h > config.image_height) continue;
        const BBox box{placement_rng.uniform(0.0, config.image_width - w),
                       placement_rng.uniform(0.0, config.image_height - h), w, h};
        const bool collides =
            std::any_of(seeds.begin(), seeds.end(),
                        [&](const Seed& s) { return boxes_overlap(s.box, box, margin); });
        if (!collides) {
          seeds.push_back({pop.cls, box});
          placed = true;
        }
      }
      if (!placed) throw Error("scene: could not place instances disjointly; too crowded");
    }
  }

  std::vector<SplitMix64> noise_rngs;
  noise_rngs.reserve(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) noise_rngs.push_back(root.split());
  SplitMix64 spurious_rng = root.split();

  SynthResult result;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    GroundTruthInstance inst;
    inst.id = static_cast<TrackId>(i);
    inst.cls = seeds[i].cls;
    const double full_area = seeds[i].box.w * seeds[i].box.h;
    for (FrameIndex f = 0; f < config.n_frames; ++f) {
      const double fd = static_cast<double>(f);
      const BBox moved{seeds[i].box.x + config.camera_velocity.dx * fd,
                       seeds[i].box.y + config.camera_velocity.dy * fd,
                       seeds[i].box.w, seeds[i].box.h};
      const BBox visible = clip_to_image(moved, config.image_width, config.image_height);
      if (visible.w > 0.0 && visible.h > 0.0 &&
          visible.w * visible.h >= kMinVisibleFraction * full_area)
        inst.points.push_back({f, visible});
    }
    if (!inst.points.empty()) result.ground_truth.push_back(std::move(inst));
  }
  // Re-number densely in case an instance never became visible.
  for (std::size_t i = 0; i < result.ground_truth.size(); ++i)
    result.ground_truth[i].id = static_cast<TrackId>(i);

  result.dropped_frames.resize(result.ground_truth.size());
  const NoiseConfig& noise = config.noise;
  for (std::size_t i = 0; i < result.ground_truth.size(); ++i) {
    SplitMix64& rng = noise_rngs[i];
    const GroundTruthInstance& inst = result.ground_truth[i];
    std::int64_t burst_left = 0;
    for (const GroundTruthPoint& p : inst.points) {
      if (burst_left > 0) {
        --burst_left;
        result.dropped_frames[i].push_back(p.frame);
        continue;
      }
      if (noise.dropout_rate > 0.0 && rng.next_double() < noise.dropout_rate) {
        burst_left = rng.uniform_int(1, std::max(1, noise.dropout_burst_max)) - 1;
        result.dropped_frames[i].push_back(p.frame);
        continue;
      }
      BBox box = p.bbox;
      if (noise.jitter_sigma > 0.0) {
        box.x += rng.normal(0.0, noise.jitter_sigma);
        box.y += rng.normal(0.0, noise.jitter_sigma);
        box.w = std::max(box.w + rng.normal(0.0, noise.jitter_sigma), kMinBoxSide);
        box.h = std::max(box.h + rng.normal(0.0, noise.jitter_sigma), kMinBoxSide);
        box = clip_to_image(box, config.image_width, config.image_height);
        if (box.w <= 0.0 || box.h <= 0.0) {
          // Jitter pushed the box off the image; treat as a missed frame.
          result.dropped_frames[i].push_back(p.frame);
          continue;
        }
      }
      const double conf = rng.uniform(noise.conf_low, noise.conf_high);
      result.detections.push_back({p.frame, inst.cls, conf, box});
    }
  }

  if (noise.spurious_rate > 0.0 && config.num_classes > 0) {
    for (FrameIndex f = 0; f < config.n_frames; ++f) {
      const std::int64_t n = spurious_rng.poisson(noise.spurious_rate);
      for (std::int64_t s = 0; s < n; ++s) {
        const ClassId cls = static_cast<ClassId>(
            spurious_rng.uniform_int(0, static_cast<std::int64_t>(config.num_classes) - 1));
        double min_size = kSpuriousMinSize, max_size = kSpuriousMaxSize;
        for (const ClassPopulation& pop : config.population) {
          if (pop.cls == cls) {
            min_size = pop.min_size;
            max_size = pop.max_size;
            break;
          }
        }
        const double w = std::min(spurious_rng.uniform(min_size, max_size), config.image_width);
        const double h = std::min(spurious_rng.uniform(min_size, max_size), config.image_height);
        const BBox box{spurious_rng.uniform(0.0, config.image_width - w),
                       spurious_rng.uniform(0.0, config.image_height - h), w, h};
        const double conf = spurious_rng.uniform(noise.conf_low, noise.conf_high);
        result.detections.push_back({f, cls, conf, box});
      }
    }
  }

  std::stable_sort(result.detections.begin(), result.detections.end(),
                   [](const Detection& a, const Detection& b) { return a.frame < b.frame; });
  return result;
}

std::vector<std::int64_t> oracle_expected_tracks(
    std::span<const GroundTruthInstance> gt,
    std::span<const std::vector<FrameIndex>> dropped_frames,
    const TrackerParams& params) {
  if (gt.size() != dropped_frames.size())
    throw Error("oracle_expected_tracks: dropout list count does not match instances");

  std::vector<std::int64_t> out;
  out.reserve(gt.size());
  for (std::size_t i = 0; i < gt.size(); ++i) {
    const std::vector<FrameIndex>& dropped = dropped_frames[i];
    std::int64_t runs = 0;
    FrameIndex prev = 0;
    bool any = false;
    for (const GroundTruthPoint& p : gt[i].points) {
      if (std::binary_search(dropped.begin(), dropped.end(), p.frame)) continue;
      if (!any || p.frame - prev > params.time_window) ++runs;
      prev = p.frame;
      any = true;
    }
    out.push_back(runs);
  }
  return out;
}

}  // namespace uavtrack
