// include/diarkit/timeline.h

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

#ifndef DIARKIT_TIMELINE_H_
#define DIARKIT_TIMELINE_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace diarkit {

// Half-open span of time [start, end) in seconds.  Construction enforces
// 0 <= start < end with both ends finite.
class TimeInterval {
 public:
  TimeInterval(double start, double end);

  double start() const { return start_; }
  double end() const { return end_; }
  double Duration() const { return end_ - start_; }
  double Center() const { return 0.5 * (start_ + end_); }

  bool Intersects(const TimeInterval &o) const {
    return start_ < o.end_ && o.start_ < end_;
  }
  double OverlapWith(const TimeInterval &o) const;

  friend auto operator<=>(const TimeInterval &, const TimeInterval &) = default;

 private:
  double start_;
  double end_;
};

struct LabeledSegment {
  TimeInterval interval;
  std::string speaker;

  friend bool operator==(const LabeledSegment &,
                         const LabeledSegment &) = default;
};

// Speaker-labeled timeline of one recording.  Always canonical: segments
// are sorted by (start, end, speaker) and same-speaker segments that
// overlap or touch are merged.  Different speakers may overlap.
class Hypothesis {
 public:
  Hypothesis() = default;
  Hypothesis(std::string recording_id, std::vector<LabeledSegment> segments);

  const std::string &recording_id() const { return recording_id_; }
  const std::vector<LabeledSegment> &segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }

  // Sorted, distinct speaker labels.
  std::vector<std::string> Speakers() const;
  // Disjoint sorted intervals of `speaker`.
  std::vector<TimeInterval> SpeakerIntervals(const std::string &speaker) const;
  // Sum of segment durations (overlapped speech counted per speaker).
  double TotalSpeakerTime() const;
  // Union of all segments regardless of speaker.
  std::vector<TimeInterval> SpeechRegions() const;

  friend bool operator==(const Hypothesis &, const Hypothesis &) = default;

 private:
  std::string recording_id_;
  std::vector<LabeledSegment> segments_;
};

// Sliding-window layout used for embedding extraction.
struct WindowingConfig {
  double segment_len = 1.5;
  double hop_len = 0.75;
  double min_tail = 0.375;

  // min_tail defaults to half the hop.
  static WindowingConfig Make(double segment_len, double hop_len);
  static WindowingConfig Make(double segment_len, double hop_len,
                              double min_tail);
  void Validate() const;
};

// RTTM I/O.  Lines starting with ";;" and blank lines are skipped; the
// channel field is ignored.  One Hypothesis per recording id, ordered by
// id.  Throws ParseError naming the offending line.
std::vector<Hypothesis> ParseRttm(std::istream &is);
std::vector<Hypothesis> ParseRttm(const std::string &text);

// Writes "SPEAKER <rec> 1 <onset> <dur> <NA> <NA> <spk> <NA> <NA>" lines
// with 3-decimal times, ordered by (recording id, start).
void WriteRttm(std::ostream &os, std::span<const Hypothesis> hyps);
std::string WriteRttm(std::span<const Hypothesis> hyps);

// Windows of cfg.segment_len stepped by cfg.hop_len inside each region.
// The last window of a region is clipped to the region end and kept only
// if it is at least cfg.min_tail long.  Regions must be sorted and
// pairwise disjoint.
std::vector<TimeInterval> WindowSpeech(std::span<const TimeInterval> regions,
                                       const WindowingConfig &cfg);

// --- interval-set helpers -------------------------------------------------

// Sorts and merges overlapping or touching intervals.
std::vector<TimeInterval> MergeIntervals(std::vector<TimeInterval> intervals);
// Intersection of two merged interval sets.
std::vector<TimeInterval> IntersectIntervals(std::span<const TimeInterval> a,
                                             std::span<const TimeInterval> b);
double TotalDuration(std::span<const TimeInterval> intervals);
// True when sorted by start and pairwise disjoint (touching allowed).
bool IsSortedDisjoint(std::span<const TimeInterval> intervals);

}  // namespace diarkit

#endif  // DIARKIT_TIMELINE_H_
