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

#include "uavtrack/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>

#include "uavtrack/error.hpp"

namespace uavtrack {

PairDiagnostics match_instance_pair(const GroundTruthInstance& gt, const Track& pred,
                                    const InstanceMatchParams& params) {
  PairDiagnostics d;
  d.same_class = gt.cls == pred.cls;
  d.first_frame_delta = std::abs(gt.first_frame() - pred.first_frame());
  d.last_frame_delta = std::abs(gt.last_frame() - pred.last_frame());
  d.first_iou = iou(gt.first_box(), pred.first_box());
  d.last_iou = iou(gt.last_box(), pred.last_box());
  d.dcos = cosine_distance(displacement(gt), displacement(pred));
  d.match = d.same_class &&
            d.first_frame_delta < params.frame_tol &&
            d.last_frame_delta < params.frame_tol &&
            d.first_iou >= params.sight_iou &&
            d.last_iou >= params.sight_iou &&
            d.dcos <= params.max_dcos;
  return d;
}

InstanceReport match_instances(std::span<const GroundTruthInstance> gts,
                               std::span<const Track> preds,
                               const InstanceMatchParams& params,
                               std::size_t num_classes) {
  struct Qualifier {
    double first_iou;
    TrackId gt_id;
    TrackId pred_id;
    std::size_t gt_idx;
    std::size_t pred_idx;
    PairDiagnostics diag;
  };
  std::vector<Qualifier> qualifiers;
  for (std::size_t g = 0; g < gts.size(); ++g) {
    for (std::size_t p = 0; p < preds.size(); ++p) {
      const PairDiagnostics diag = match_instance_pair(gts[g], preds[p], params);
      if (diag.match)
        qualifiers.push_back({diag.first_iou, gts[g].id, preds[p].id, g, p, diag});
    }
  }
  std::sort(qualifiers.begin(), qualifiers.end(), [](const Qualifier& a, const Qualifier& b) {
    if (a.first_iou != b.first_iou) return a.first_iou > b.first_iou;
    if (a.gt_id != b.gt_id) return a.gt_id < b.gt_id;
    return a.pred_id < b.pred_id;
  });

  InstanceReport report;
  report.per_class.resize(num_classes);
  std::vector<char> gt_used(gts.size(), 0);
  std::vector<char> pred_used(preds.size(), 0);
  for (const Qualifier& q : qualifiers) {
    if (gt_used[q.gt_idx] || pred_used[q.pred_idx]) continue;
    gt_used[q.gt_idx] = 1;
    pred_used[q.pred_idx] = 1;
    const ClassId cls = gts[q.gt_idx].cls;
    if (cls < 0 || static_cast<std::size_t>(cls) >= num_classes)
      throw Error("class id out of range in instance matching: " + std::to_string(cls));
    report.per_class[static_cast<std::size_t>(cls)].tp += 1;
    report.matches.push_back(
        {q.gt_id, q.pred_id, q.diag.first_iou, q.diag.last_iou, q.diag.dcos});
  }
  for (std::size_t g = 0; g < gts.size(); ++g) {
    if (gt_used[g]) continue;
    const ClassId cls = gts[g].cls;
    if (cls < 0 || static_cast<std::size_t>(cls) >= num_classes)
      throw Error("class id out of range in instance matching: " + std::to_string(cls));
    report.per_class[static_cast<std::size_t>(cls)].fn += 1;
  }
  for (std::size_t p = 0; p < preds.size(); ++p) {
    if (pred_used[p]) continue;
    const ClassId cls = preds[p].cls;
    if (cls < 0 || static_cast<std::size_t>(cls) >= num_classes)
      throw Error("class id out of range in instance matching: " + std::to_string(cls));
    report.per_class[static_cast<std::size_t>(cls)].fp += 1;
  }
  return report;
}

std::int64_t ConfusionMatrix::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
}

std::vector<std::vector<double>> normalize_rows(const ConfusionMatrix& m) {
  std::vector<std::vector<double>> out(m.dim(), std::vector<double>(m.dim(), 0.0));
  for (std::size_t r = 0; r < m.dim(); ++r) {
    std::int64_t sum = 0;
    for (std::size_t c = 0; c < m.dim(); ++c) sum += m.at(r, c);
    if (sum == 0) continue;
    for (std::size_t c = 0; c < m.dim(); ++c)
      out[r][c] = static_cast<double>(m.at(r, c)) / static_cast<double>(sum);
  }
  return out;
}

std::vector<FrameBox> to_frame_boxes(std::span<const GroundTruthInstance> gts) {
  std::vector<FrameBox> out;
  for (const GroundTruthInstance& g : gts)
    for (const GroundTruthPoint& p : g.points) out.push_back({p.frame, g.cls, p.bbox});
  return out;
}

std::vector<FrameBox> to_frame_boxes(std::span<const Track> tracks) {
  std::vector<FrameBox> out;
  for (const Track& t : tracks)
    for (const TrackPoint& p : t.points) out.push_back({p.frame, t.cls, p.bbox});
  return out;
}

ConfusionMatrix frame_confusion(std::span<const FrameBox> gt_boxes,
                                std::span<const FrameBox> pred_boxes,
                                double frame_iou, std::size_t num_classes) {
  ConfusionMatrix m(num_classes);
  const std::size_t bg = m.background();

  const auto check_cls = [&](ClassId cls) {
    if (cls < 0 || static_cast<std::size_t>(cls) >= num_classes)
      throw Error("class id out of range in frame confusion: " + std::to_string(cls));
    return static_cast<std::size_t>(cls);
  };

  std::map<FrameIndex, std::pair<std::vector<const FrameBox*>, std::vector<const FrameBox*>>>
      frames;
  for (const FrameBox& b : gt_boxes) frames[b.frame].first.push_back(&b);
  for (const FrameBox& b : pred_boxes) frames[b.frame].second.push_back(&b);

  struct Pair {
    double iou;
    std::size_t gt_idx;
    std::size_t pred_idx;
  };
  for (const auto& [frame, lists] : frames) {
    const auto& [gt, pred] = lists;
    std::vector<Pair> pairs;
    for (std::size_t g = 0; g < gt.size(); ++g) {
      for (std::size_t p = 0; p < pred.size(); ++p) {
        const double v = iou(gt[g]->bbox, pred[p]->bbox);
        if (v >= frame_iou) pairs.push_back({v, g, p});
      }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      if (a.iou != b.iou) return a.iou > b.iou;
      if (a.gt_idx != b.gt_idx) return a.gt_idx < b.gt_idx;
      return a.pred_idx < b.pred_idx;
    });
    std::vector<char> gt_used(gt.size(), 0), pred_used(pred.size(), 0);
    for (const Pair& p : pairs) {
      if (gt_used[p.gt_idx] || pred_used[p.pred_idx]) continue;
      gt_used[p.gt_idx] = 1;
      pred_used[p.pred_idx] = 1;
      m.at(check_cls(gt[p.gt_idx]->cls), check_cls(pred[p.pred_idx]->cls)) += 1;
    }
    for (std::size_t g = 0; g < gt.size(); ++g)
      if (!gt_used[g]) m.at(check_cls(gt[g]->cls), bg) += 1;
    for (std::size_t p = 0; p < pred.size(); ++p)
      if (!pred_used[p]) m.at(bg, check_cls(pred[p]->cls)) += 1;
  }
  return m;
}

}  // namespace uavtrack
