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

#include "uavtrack/classes.hpp"
#include "uavtrack/geometry.hpp"

namespace uavtrack {

using FrameIndex = std::int64_t;
using TrackId = std::int64_t;

/// One frame-local observation emitted by a detector.
struct Detection {
  FrameIndex frame = 0;
  ClassId cls = 0;
  double conf = 0.0;
  BBox bbox;

  friend bool operator==(const Detection&, const Detection&) = default;
};

/// One observed point of a track. Frames within a track are strictly
/// increasing; gaps are real (missed frames are never interpolated).
struct TrackPoint {
  FrameIndex frame = 0;
  BBox bbox;
  double conf = 0.0;

  friend bool operator==(const TrackPoint&, const TrackPoint&) = default;
};

/// A unique tracked instance: stable id, one class, observed points only.
struct Track {
  TrackId id = 0;
  ClassId cls = 0;
  std::vector<TrackPoint> points;

  FrameIndex first_frame() const { return points.front().frame; }
  FrameIndex last_frame() const { return points.back().frame; }
  const BBox& first_box() const { return points.front().bbox; }
  const BBox& last_box() const { return points.back().bbox; }

  friend bool operator==(const Track&, const Track&) = default;
};

struct GroundTruthPoint {
  FrameIndex frame = 0;
  BBox bbox;

  friend bool operator==(const GroundTruthPoint&, const GroundTruthPoint&) = default;
};

/// A labeled instance, same shape as Track minus confidences.
struct GroundTruthInstance {
  TrackId id = 0;
  ClassId cls = 0;
  std::vector<GroundTruthPoint> points;

  FrameIndex first_frame() const { return points.front().frame; }
  FrameIndex last_frame() const { return points.back().frame; }
  const BBox& first_box() const { return points.front().bbox; }
  const BBox& last_box() const { return points.back().bbox; }

  friend bool operator==(const GroundTruthInstance&, const GroundTruthInstance&) = default;
};

/// Top-left corner delta between the last-sight and first-sight boxes.
/// Depends only on the endpoints; a single-point instance yields (0, 0).
inline Vec2 displacement(const Track& t) {
  return {t.last_box().x - t.first_box().x, t.last_box().y - t.first_box().y};
}

inline Vec2 displacement(const GroundTruthInstance& g) {
  return {g.last_box().x - g.first_box().x, g.last_box().y - g.first_box().y};
}

}  // namespace uavtrack
