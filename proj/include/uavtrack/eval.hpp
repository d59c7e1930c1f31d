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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uavtrack/types.hpp"

namespace uavtrack {

/// Instance-matching thresholds. Note the operators: the frame tolerance is
/// strict (<), the sight IOU and cosine distance are inclusive (>=, <=).
struct InstanceMatchParams {
  FrameIndex frame_tol = 45;
  double sight_iou = 0.1;
  double max_dcos = 1e-2;
};

/// Everything match_instance_pair looked at, one value per criterion.
struct PairDiagnostics {
  bool same_class = false;
  FrameIndex first_frame_delta = 0;
  FrameIndex last_frame_delta = 0;
  double first_iou = 0.0;
  double last_iou = 0.0;
  double dcos = 0.0;
  bool match = false;
};

/// A labeled instance matches a predicted track iff all four hold:
///  1. equal class;
///  2. |first-sight frame delta| < frame_tol and |last-sight delta| < frame_tol;
///  3. IOU of the first-sight boxes >= sight_iou, same for the last-sight boxes;
///  4. cosine distance of the displacement vectors <= max_dcos.
PairDiagnostics match_instance_pair(const GroundTruthInstance& gt, const Track& pred,
                                    const InstanceMatchParams& params);

struct InstanceCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;

  friend bool operator==(const InstanceCounts&, const InstanceCounts&) = default;
};

struct InstanceMatch {
  TrackId gt_id = 0;
  TrackId pred_id = 0;
  double first_iou = 0.0;
  double last_iou = 0.0;
  double dcos = 0.0;

  friend bool operator==(const InstanceMatch&, const InstanceMatch&) = default;
};

/// Per-class TP/FP/FN plus the committed (gt, pred) pairs with diagnostics.
/// per_class[c].tp + per_class[c].fn == number of ground-truth instances of
/// class c, and tp + fp == number of predicted tracks of class c.
struct InstanceReport {
  std::vector<InstanceCounts> per_class;
  std::vector<InstanceMatch> matches;

  friend bool operator==(const InstanceReport&, const InstanceReport&) = default;
};

/// One-to-one instance assignment: among all pairs passing
/// match_instance_pair, commit greedily by descending first-sight IOU
/// (ties: lower gt id, then lower pred id). Matched pairs count as TP,
/// unmatched predictions as FP, unmatched ground truth as FN.
/// num_classes sizes the per-class table; every class id must be below it.
InstanceReport match_instances(std::span<const GroundTruthInstance> gts,
                               std::span<const Track> preds,
                               const InstanceMatchParams& params,
                               std::size_t num_classes);

/// (K+1) x (K+1) counts; rows are ground-truth classes, columns predicted
/// classes, the extra last row/column is the background pseudo-class for
/// unmatched boxes. The background/background cell is never counted.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t num_classes)
      : k_(num_classes), counts_((num_classes + 1) * (num_classes + 1), 0) {}

  std::size_t num_classes() const { return k_; }
  std::size_t dim() const { return k_ + 1; }
  std::size_t background() const { return k_; }

  std::int64_t at(std::size_t row, std::size_t col) const {
    return counts_[row * dim() + col];
  }
  std::int64_t& at(std::size_t row, std::size_t col) {
    return counts_[row * dim() + col];
  }

  std::int64_t total() const;

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  std::size_t k_;
  std::vector<std::int64_t> counts_;
};

/// Each row divided by its sum; all-zero rows stay zero.
std::vector<std::vector<double>> normalize_rows(const ConfusionMatrix& m);

/// One box of one frame, for the frame-level protocol.
struct FrameBox {
  FrameIndex frame = 0;
  ClassId cls = 0;
  BBox bbox;
};

std::vector<FrameBox> to_frame_boxes(std::span<const GroundTruthInstance> gts);
std::vector<FrameBox> to_frame_boxes(std::span<const Track> tracks);

/// Frame-level confusion: per frame, class-agnostic one-to-one greedy
/// spatial matching by descending IOU (IOU >= frame_iou qualifies); each
/// matched pair increments counts[gt_class][pred_class], unmatched ground
/// truth goes to the background column, unmatched predictions to the
/// background row. Frames aggregate by summation.
ConfusionMatrix frame_confusion(std::span<const FrameBox> gt_boxes,
                                std::span<const FrameBox> pred_boxes,
                                double frame_iou, std::size_t num_classes);

/// A full evaluation result, self-contained for serialization: class labels,
/// the parameters used, and whichever protocol sections were run.
struct EvalReport {
  std::string tool_version;
  std::vector<std::string> class_names;
  InstanceMatchParams instance_params;
  double frame_iou = 0.5;
  std::optional<InstanceReport> instance;
  std::optional<ConfusionMatrix> frame;
};

}  // namespace uavtrack
