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

#include <algorithm>
#include <cmath>

namespace uavtrack {

/// Axis-aligned box in image coordinates: (x, y) is the top-left corner,
/// y grows downward, units are pixels. w >= 0 and h >= 0; a zero-area box
/// is legal but has IOU 0 with everything.
struct BBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  friend bool operator==(const BBox&, const BBox&) = default;
};

/// Pixel-space displacement.
struct Vec2 {
  double dx = 0.0;
  double dy = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double area(const BBox& b) { return b.w * b.h; }

/// Intersection over union. Returns 0 when the union has zero area (two
/// degenerate boxes). Areas are derived from the same rounded corners as the
/// intersection so that iou(a, a) is exactly 1.
inline double iou(const BBox& a, const BBox& b) {
  const double ax1 = a.x + a.w, ay1 = a.y + a.h;
  const double bx1 = b.x + b.w, by1 = b.y + b.h;
  const double iw = std::min(ax1, bx1) - std::max(a.x, b.x);
  const double ih = std::min(ay1, by1) - std::max(a.y, b.y);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = (ax1 - a.x) * (ay1 - a.y) + (bx1 - b.x) * (by1 - b.y) - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

/// Magnitudes below this count as "no displacement" in cosine_distance.
inline constexpr double kStationaryEps = 1e-6;

/// 1 - cosine similarity, in [0, 2]. Two near-zero vectors compare equal
/// (distance 0, a static object must stay matchable against its own label);
/// exactly one near-zero vector is maximally distant (2).
inline double cosine_distance(const Vec2& u, const Vec2& v) {
  const double nu = std::sqrt(u.dx * u.dx + u.dy * u.dy);
  const double nv = std::sqrt(v.dx * v.dx + v.dy * v.dy);
  const bool u_still = nu < kStationaryEps;
  const bool v_still = nv < kStationaryEps;
  if (u_still && v_still) return 0.0;
  if (u_still || v_still) return 2.0;
  const double c = (u.dx * v.dx + u.dy * v.dy) / (nu * nv);
  return std::clamp(1.0 - c, 0.0, 2.0);
}

}  // namespace uavtrack
