// include/diarkit/frontend.h

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

#ifndef DIARKIT_FRONTEND_H_
#define DIARKIT_FRONTEND_H_

// Speech / overlap detection back-end: posterior fusion, hysteresis
// binarization and F-beta driven tuning of the binarizer.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "diarkit/timeline.h"

namespace diarkit {

// Uniform-rate frame probabilities.  Frame k covers [k/rate, (k+1)/rate).
struct PosteriorTrack {
  std::string recording_id;
  double frame_rate = 100.0;
  std::vector<double> values;

  void Validate() const;
  double Duration() const { return values.size() / frame_rate; }
};

struct BinarizerConfig {
  double onset = 0.5;
  double offset = 0.5;
  double min_on = 0.0;   // seconds; shorter regions are deleted
  double min_off = 0.0;  // seconds; shorter gaps are filled
  double pad = 0.0;      // seconds added on both sides

  void Validate() const;
  friend bool operator==(const BinarizerConfig &,
                         const BinarizerConfig &) = default;
};

struct FBetaConfig {
  double beta = 1.0;
};

// Element-wise mean.  All tracks must share recording id, frame rate and
// length.
PosteriorTrack FusePosteriors(std::span<const PosteriorTrack> tracks);

// Hysteresis decoding: a region opens at the first frame >= onset and
// closes at the first later frame < offset.  Then, in this order: regions
// shorter than min_on are removed, gaps shorter than min_off are filled,
// and every region is padded by `pad` and clipped to the track.
std::vector<TimeInterval> Binarize(const PosteriorTrack &track,
                                   const BinarizerConfig &cfg);

// (1 + b^2) P R / (b^2 P + R); 0 when the denominator vanishes.
double FBeta(double precision, double recall, const FBetaConfig &cfg);

struct DetectionScore {
  double precision = 0.0;
  double recall = 0.0;
  double f_beta = 0.0;
};

// Frame-level detection score on the grid of `track`: a frame counts as
// active when its center lies inside an interval.
DetectionScore FrameDetectionScore(const PosteriorTrack &track,
                                   std::span<const TimeInterval> predicted,
                                   std::span<const TimeInterval> reference,
                                   const FBetaConfig &cfg);

// Grid element with the highest frame-level F-beta; first one wins ties.
BinarizerConfig TuneBinarizer(const PosteriorTrack &track,
                              std::span<const TimeInterval> reference,
                              std::span<const BinarizerConfig> grid,
                              const FBetaConfig &beta);

// onset/offset over {0.3, ..., 0.7} with offset <= onset; other fields
// copied from `base`.
std::vector<BinarizerConfig> DefaultBinarizerGrid(const BinarizerConfig &base);

// "POST v1 <recording_id> <frame_rate> <n_frames>" followed by one value
// per line.
PosteriorTrack ReadPosteriors(std::istream &is);
void WritePosteriors(std::ostream &os, const PosteriorTrack &track);

}  // namespace diarkit

#endif  // DIARKIT_FRONTEND_H_
