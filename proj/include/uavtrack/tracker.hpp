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

#include <map>
#include <span>
#include <vector>

#include "uavtrack/types.hpp"

namespace uavtrack {

/// Association thresholds. A candidate stays alive while
/// current_frame - last_seen_frame <= time_window; matching requires equal
/// class and IOU >= match_iou against the candidate's last seen box.
struct TrackerParams {
  FrameIndex time_window = 45;
  double match_iou = 0.1;
};

/// Per-video association state: the live candidates (one entry per track,
/// holding only its last seen box) and the id counter. Ids are never reused
/// within a video. Not shareable across threads mid-video.
class CandidateRegistry {
 public:
  struct Candidate {
    ClassId cls = 0;
    FrameIndex last_seen_frame = 0;
    BBox last_seen_box;
  };

  /// Drops every candidate with frame - last_seen_frame > time_window.
  void evict_stale(FrameIndex frame, FrameIndex time_window);

  TrackId insert_new(ClassId cls, FrameIndex frame, const BBox& box);
  void touch(TrackId id, FrameIndex frame, const BBox& box);

  const std::map<TrackId, Candidate>& active() const { return active_; }
  TrackId next_id() const { return next_id_; }

 private:
  std::map<TrackId, Candidate> active_;
  TrackId next_id_ = 0;
};

struct Association {
  Detection det;
  TrackId track_id = 0;
  bool is_new = false;
};

/// Associates one frame's detections with the registry's candidates.
/// Stale candidates are evicted first. Matching is one-to-one greedy by
/// descending IOU over all (detection, candidate) pairs of equal class with
/// IOU >= match_iou; ties break to the older (smaller) candidate id, then to
/// detection input order. Unmatched detections get fresh ids in input order.
/// Results are in detection input order. Throws std::invalid_argument on
/// mixed-frame input.
std::vector<Association> associate(std::span<const Detection> frame_dets,
                                   CandidateRegistry& registry,
                                   const TrackerParams& params);

/// Runs associate frame by frame over a detection stream sorted by frame
/// and accumulates the per-id point lists. Returns all tracks, including
/// single-point ones, ordered by id.
std::vector<Track> track_video(std::span<const Detection> dets,
                               const TrackerParams& params);

}  // namespace uavtrack
