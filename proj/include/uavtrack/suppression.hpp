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

#include <span>
#include <vector>

#include "uavtrack/types.hpp"

namespace uavtrack {

/// Detector post-processing thresholds. Comparisons are inclusive:
/// conf >= conf_thresh survives the filter, IOU >= nms_iou suppresses.
struct SuppressionParams {
  double conf_thresh = 0.5;
  double nms_iou = 0.5;
};

/// Keeps exactly the detections with conf >= conf_thresh, order preserved.
std::vector<Detection> confidence_filter(std::span<const Detection> dets,
                                         double conf_thresh);

/// Greedy class-aware NMS over one frame's detections: sort by confidence
/// descending (ties: smaller x, then smaller y, then input order), accept a
/// detection iff its IOU with every already-accepted detection of the same
/// class is < nms_iou. Boxes of different classes never suppress each other.
/// Output is in the sorted order. Throws std::invalid_argument if the input
/// spans more than one frame.
std::vector<Detection> nms(std::span<const Detection> frame_dets, double nms_iou);

/// Groups by frame, applies confidence_filter then nms per frame, and
/// concatenates in ascending frame order.
std::vector<Detection> suppress_stream(std::span<const Detection> dets,
                                       const SuppressionParams& params);

}  // namespace uavtrack
