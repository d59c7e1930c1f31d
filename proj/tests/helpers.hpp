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

// Test-only oracles and generators. Everything here is deliberately
// independent of the library's implementation paths: the IOU oracle counts
// pixels, the NMS oracle enumerates subsets, the matching oracles search
// exhaustively.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "uavtrack/rng.hpp"
#include "uavtrack/types.hpp"

namespace uavtrack::test {

/// Pixel-counting IOU for integer-coordinate boxes: rasterize both boxes on
/// the unit grid, count intersection and union cells.
inline double raster_iou(const BBox& a, const BBox& b) {
  const auto ax = static_cast<std::int64_t>(a.x), ay = static_cast<std::int64_t>(a.y);
  const auto aw = static_cast<std::int64_t>(a.w), ah = static_cast<std::int64_t>(a.h);
  const auto bx = static_cast<std::int64_t>(b.x), by = static_cast<std::int64_t>(b.y);
  const auto bw = static_cast<std::int64_t>(b.w), bh = static_cast<std::int64_t>(b.h);
  const std::int64_t x0 = std::min(ax, bx), x1 = std::max(ax + aw, bx + bw);
  const std::int64_t y0 = std::min(ay, by), y1 = std::max(ay + ah, by + bh);
  std::int64_t inter = 0, uni = 0;
  for (std::int64_t y = y0; y < y1; ++y) {
    for (std::int64_t x = x0; x < x1; ++x) {
      const bool in_a = x >= ax && x < ax + aw && y >= ay && y < ay + ah;
      const bool in_b = x >= bx && x < bx + bw && y >= by && y < by + bh;
      if (in_a && in_b) ++inter;
      if (in_a || in_b) ++uni;
    }
  }
  if (uni == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

/// NMS oracle: enumerate all accept/reject subsets and return the single
/// greedy-consistent one — a detection is in the subset iff no
/// higher-priority accepted detection of the same class overlaps it at or
/// above the threshold. Priority order matches the production tie-break
/// (conf desc, then smaller x, then smaller y, then input order).
inline std::vector<Detection> nms_subset_oracle(const std::vector<Detection>& dets,
                                                double nms_iou) {
  if (dets.size() > 16) throw std::invalid_argument("oracle is exponential; keep inputs small");
  std::vector<std::size_t> order(dets.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (dets[a].conf != dets[b].conf) return dets[a].conf > dets[b].conf;
    if (dets[a].bbox.x != dets[b].bbox.x) return dets[a].bbox.x < dets[b].bbox.x;
    return dets[a].bbox.y < dets[b].bbox.y;
  });

  std::vector<Detection> result;
  bool found = false;
  for (std::uint32_t mask = 0; mask < (1u << dets.size()); ++mask) {
    bool consistent = true;
    for (std::size_t k = 0; k < order.size() && consistent; ++k) {
      const std::size_t d = order[k];
      bool blocked = false;
      for (std::size_t j = 0; j < k && !blocked; ++j) {
        const std::size_t a = order[j];
        if (!(mask & (1u << a))) continue;
        if (dets[a].cls == dets[d].cls && iou(dets[a].bbox, dets[d].bbox) >= nms_iou)
          blocked = true;
      }
      const bool accepted = (mask & (1u << d)) != 0;
      if (accepted == blocked) consistent = false;
    }
    if (!consistent) continue;
    if (found) throw std::logic_error("more than one greedy-consistent subset");
    found = true;
    for (std::size_t k = 0; k < order.size(); ++k)
      if (mask & (1u << order[k])) result.push_back(dets[order[k]]);
  }
  if (!found) throw std::logic_error("no greedy-consistent subset");
  return result;
}

/// Maximum-cardinality bipartite matching (Kuhn's algorithm) over an
/// adjacency list from left to right nodes.
class BipartiteMatcher {
 public:
  BipartiteMatcher(std::vector<std::vector<std::size_t>> adjacency, std::size_t n_right)
      : adjacency_(std::move(adjacency)), match_right_(n_right, kNone) {}

  std::size_t max_matching() {
    std::size_t matched = 0;
    for (std::size_t left = 0; left < adjacency_.size(); ++left) {
      visited_.assign(match_right_.size(), false);
      if (try_augment(left)) ++matched;
    }
    return matched;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  bool try_augment(std::size_t left) {
    for (std::size_t right : adjacency_[left]) {
      if (visited_[right]) continue;
      visited_[right] = true;
      if (match_right_[right] == kNone || try_augment(match_right_[right])) {
        match_right_[right] = left;
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::size_t> match_right_;
  std::vector<bool> visited_;
};

/// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("uavtrack_test_" + std::to_string(counter.fetch_add(1)) + "_" +
             std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline BBox random_box(SplitMix64& rng, double max_coord = 100.0, double max_side = 50.0) {
  return {rng.uniform(0.0, max_coord), rng.uniform(0.0, max_coord),
          rng.uniform(0.0, max_side), rng.uniform(0.0, max_side)};
}

inline BBox random_int_box(SplitMix64& rng, std::int64_t max_coord = 64,
                           std::int64_t max_side = 64) {
  return {static_cast<double>(rng.uniform_int(0, max_coord)),
          static_cast<double>(rng.uniform_int(0, max_coord)),
          static_cast<double>(rng.uniform_int(0, max_side)),
          static_cast<double>(rng.uniform_int(0, max_side))};
}

}  // namespace uavtrack::test
