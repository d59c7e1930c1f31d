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

#include "uavtrack/tracker.hpp"

#include <algorithm>
#include <stdexcept>

namespace uavtrack {

void CandidateRegistry::evict_stale(FrameIndex frame, FrameIndex time_window) {
  for (auto it = active_.begin(); it != active_.end();) {
    if (frame - it->second.last_seen_frame > time_window)
      it = active_.erase(it);
    else
      ++it;
  }
}

TrackId CandidateRegistry::insert_new(ClassId cls, FrameIndex frame, const BBox& box) {
  const TrackId id = next_id_++;
  active_.emplace(id, Candidate{cls, frame, box});
  return id;
}

void CandidateRegistry::touch(TrackId id, FrameIndex frame, const BBox& box) {
  Candidate& c = active_.at(id);
  c.last_seen_frame = frame;
  c.last_seen_box = box;
}

std::vector<Association> associate(std::span<const Detection> frame_dets,
                                   CandidateRegistry& registry,
                                   const TrackerParams& params) {
  if (frame_dets.empty()) return {};
  const FrameIndex frame = frame_dets.front().frame;
  for (const Detection& d : frame_dets) {
    if (d.frame != frame)
      throw std::invalid_argument("associate: detections span more than one frame");
  }

  registry.evict_stale(frame, params.time_window);

  struct Pair {
    double iou;
    TrackId candidate_id;
    std::size_t det_idx;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < frame_dets.size(); ++i) {
    for (const auto& [id, cand] : registry.active()) {
      if (cand.cls != frame_dets[i].cls) continue;
      const double v = iou(frame_dets[i].bbox, cand.last_seen_box);
      if (v >= params.match_iou) pairs.push_back({v, id, i});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.iou != b.iou) return a.iou > b.iou;
    if (a.candidate_id != b.candidate_id) return a.candidate_id < b.candidate_id;
    return a.det_idx < b.det_idx;
  });

  constexpr TrackId kUnassigned = -1;
  std::vector<TrackId> assigned(frame_dets.size(), kUnassigned);
  std::vector<TrackId> taken;
  for (const Pair& p : pairs) {
    if (assigned[p.det_idx] != kUnassigned) continue;
    if (std::find(taken.begin(), taken.end(), p.candidate_id) != taken.end()) continue;
    assigned[p.det_idx] = p.candidate_id;
    taken.push_back(p.candidate_id);
  }

  std::vector<Association> out;
  out.reserve(frame_dets.size());
  for (std::size_t i = 0; i < frame_dets.size(); ++i) {
    const Detection& d = frame_dets[i];
    if (assigned[i] != kUnassigned) {
      registry.touch(assigned[i], frame, d.bbox);
      out.push_back({d, assigned[i], false});
    } else {
      const TrackId id = registry.insert_new(d.cls, frame, d.bbox);
      out.push_back({d, id, true});
    }
  }
  return out;
}

std::vector<Track> track_video(std::span<const Detection> dets,
                               const TrackerParams& params) {
  std::vector<Detection> sorted(dets.begin(), dets.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Detection& a, const Detection& b) { return a.frame < b.frame; });

  CandidateRegistry registry;
  std::map<TrackId, Track> tracks;
  std::size_t begin = 0;
  while (begin < sorted.size()) {
    std::size_t end = begin;
    while (end < sorted.size() && sorted[end].frame == sorted[begin].frame) ++end;
    const std::span<const Detection> frame_dets(sorted.data() + begin, end - begin);
    for (const Association& a : associate(frame_dets, registry, params)) {
      if (a.is_new) tracks.emplace(a.track_id, Track{a.track_id, a.det.cls, {}});
      tracks.at(a.track_id).points.push_back({a.det.frame, a.det.bbox, a.det.conf});
    }
    begin = end;
  }

  std::vector<Track> out;
  out.reserve(tracks.size());
  for (auto& [id, t] : tracks) out.push_back(std::move(t));
  return out;
}

}  // namespace uavtrack
