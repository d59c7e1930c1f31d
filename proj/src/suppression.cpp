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

#include "uavtrack/suppression.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace uavtrack {

std::vector<Detection> confidence_filter(std::span<const Detection> dets,
                                         double conf_thresh) {
  std::vector<Detection> out;
  out.reserve(dets.size());
  for (const Detection& d : dets) {
    if (d.conf >= conf_thresh) out.push_back(d);
  }
  return out;
}

std::vector<Detection> nms(std::span<const Detection> frame_dets, double nms_iou) {
  if (frame_dets.empty()) return {};
  for (const Detection& d : frame_dets) {
    if (d.frame != frame_dets.front().frame)
      throw std::invalid_argument("nms: detections span more than one frame");
  }

  std::vector<std::size_t> order(frame_dets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Detection& da = frame_dets[a];
    const Detection& db = frame_dets[b];
    if (da.conf != db.conf) return da.conf > db.conf;
    if (da.bbox.x != db.bbox.x) return da.bbox.x < db.bbox.x;
    return da.bbox.y < db.bbox.y;
  });

  std::vector<Detection> accepted;
  accepted.reserve(frame_dets.size());
  for (std::size_t idx : order) {
    const Detection& d = frame_dets[idx];
    bool suppressed = false;
    for (const Detection& a : accepted) {
      if (a.cls == d.cls && iou(a.bbox, d.bbox) >= nms_iou) {
        suppressed = true;
        break;
      }
    }
    if (!suppressed) accepted.push_back(d);
  }
  return accepted;
}

std::vector<Detection> suppress_stream(std::span<const Detection> dets,
                                       const SuppressionParams& params) {
  std::map<FrameIndex, std::vector<Detection>> frames;
  for (const Detection& d : dets) frames[d.frame].push_back(d);

  std::vector<Detection> out;
  out.reserve(dets.size());
  for (auto& [frame, frame_dets] : frames) {
    const std::vector<Detection> kept = confidence_filter(frame_dets, params.conf_thresh);
    for (Detection& d : nms(kept, params.nms_iou)) out.push_back(std::move(d));
  }
  return out;
}

}  // namespace uavtrack
