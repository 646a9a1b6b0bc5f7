// src/overlap.cc

// Copyright 2026  The diarkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "diarkit/overlap.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "diarkit/error.h"

namespace diarkit {

Hypothesis AssignOverlapSecondSpeaker(const Hypothesis &diarization,
                                      std::span<const TimeInterval> regions) {
  if (!IsSortedDisjoint(regions))
    throw ArgumentError("overlap regions must be sorted and disjoint");
  const std::vector<std::string> speakers = diarization.Speakers();
  if (speakers.size() < 2 || regions.empty()) return diarization;

  // Segment boundaries per speaker, for the distance search.
  std::map<std::string, std::vector<double>> bounds;
  std::vector<double> cuts;
  for (const auto &s : diarization.segments()) {
    bounds[s.speaker].push_back(s.interval.start());
    bounds[s.speaker].push_back(s.interval.end());
    cuts.push_back(s.interval.start());
    cuts.push_back(s.interval.end());
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<LabeledSegment> out = diarization.segments();
  for (const TimeInterval &region : regions) {
    const double center = region.Center();
    std::vector<double> edges{region.start()};
    for (double c : cuts)
      if (c > region.start() && c < region.end()) edges.push_back(c);
    edges.push_back(region.end());

    for (size_t p = 0; p + 1 < edges.size(); ++p) {
      const TimeInterval piece(edges[p], edges[p + 1]);
      const double mid = piece.Center();
      const std::string *only = nullptr;
      int active = 0;
      for (const auto &s : diarization.segments()) {
        if (s.interval.start() > mid) break;
        if (mid < s.interval.end()) {
          ++active;
          only = &s.speaker;
        }
      }
      if (active != 1) continue;

      const std::string *best = nullptr;
      double best_dist = std::numeric_limits<double>::infinity();
      for (const auto &spk : speakers) {  // sorted, so ties keep the smaller
        if (spk == *only) continue;
        double d = std::numeric_limits<double>::infinity();
        for (double b : bounds[spk]) d = std::min(d, std::abs(b - center));
        if (d < best_dist) {
          best_dist = d;
          best = &spk;
        }
      }
      if (best != nullptr) out.push_back({piece, *best});
    }
  }
  return Hypothesis(diarization.recording_id(), std::move(out));
}

}  // namespace diarkit
