// src/timeline.cc

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

#include "diarkit/timeline.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "diarkit/error.h"
#include "diarkit/textio.h"

namespace diarkit {

TimeInterval::TimeInterval(double start, double end) : start_(start), end_(end) {
  if (!std::isfinite(start) || !std::isfinite(end))
    throw ArgumentError("time interval endpoints must be finite");
  if (start < 0.0)
    throw ArgumentError("time interval starts before 0: " + FormatReal(start));
  if (!(end > start))
    throw ArgumentError("time interval is empty: [" + FormatReal(start) + ", " +
                        FormatReal(end) + ")");
}

double TimeInterval::OverlapWith(const TimeInterval &o) const {
  return std::max(0.0, std::min(end_, o.end_) - std::max(start_, o.start_));
}

std::vector<TimeInterval> MergeIntervals(std::vector<TimeInterval> intervals) {
  std::sort(intervals.begin(), intervals.end());
  std::vector<TimeInterval> out;
  out.reserve(intervals.size());
  for (const auto &iv : intervals) {
    if (!out.empty() && iv.start() <= out.back().end()) {
      if (iv.end() > out.back().end())
        out.back() = TimeInterval(out.back().start(), iv.end());
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

std::vector<TimeInterval> IntersectIntervals(std::span<const TimeInterval> a,
                                             std::span<const TimeInterval> b) {
  std::vector<TimeInterval> out;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    double lo = std::max(a[i].start(), b[j].start());
    double hi = std::min(a[i].end(), b[j].end());
    if (hi > lo) out.emplace_back(lo, hi);
    if (a[i].end() < b[j].end())
      ++i;
    else
      ++j;
  }
  return out;
}

double TotalDuration(std::span<const TimeInterval> intervals) {
  double total = 0.0;
  for (const auto &iv : intervals) total += iv.Duration();
  return total;
}

bool IsSortedDisjoint(std::span<const TimeInterval> intervals) {
  for (size_t i = 1; i < intervals.size(); ++i)
    if (intervals[i].start() < intervals[i - 1].end()) return false;
  return true;
}

namespace {

void CheckLabel(const std::string &speaker) {
  if (speaker.empty())
    throw ArgumentError("speaker label must be non-empty");
  for (char c : speaker)
    if (std::isspace(static_cast<unsigned char>(c)))
      throw ArgumentError("speaker label contains whitespace: '" + speaker +
                          "'");
}

bool SegmentLess(const LabeledSegment &a, const LabeledSegment &b) {
  if (a.interval != b.interval) return a.interval < b.interval;
  return a.speaker < b.speaker;
}

}  // namespace

Hypothesis::Hypothesis(std::string recording_id,
                       std::vector<LabeledSegment> segments)
    : recording_id_(std::move(recording_id)) {
  std::map<std::string, std::vector<TimeInterval>> by_speaker;
  for (auto &seg : segments) {
    CheckLabel(seg.speaker);
    by_speaker[seg.speaker].push_back(seg.interval);
  }
  for (auto &[speaker, ivs] : by_speaker)
    for (const auto &iv : MergeIntervals(std::move(ivs)))
      segments_.push_back({iv, speaker});
  std::sort(segments_.begin(), segments_.end(), SegmentLess);
}

std::vector<std::string> Hypothesis::Speakers() const {
  std::vector<std::string> out;
  for (const auto &s : segments_) out.push_back(s.speaker);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<TimeInterval> Hypothesis::SpeakerIntervals(
    const std::string &speaker) const {
  std::vector<TimeInterval> out;
  for (const auto &s : segments_)
    if (s.speaker == speaker) out.push_back(s.interval);
  return out;
}

double Hypothesis::TotalSpeakerTime() const {
  double total = 0.0;
  for (const auto &s : segments_) total += s.interval.Duration();
  return total;
}

std::vector<TimeInterval> Hypothesis::SpeechRegions() const {
  std::vector<TimeInterval> all;
  for (const auto &s : segments_) all.push_back(s.interval);
  return MergeIntervals(std::move(all));
}

WindowingConfig WindowingConfig::Make(double segment_len, double hop_len) {
  return Make(segment_len, hop_len, 0.5 * hop_len);
}

WindowingConfig WindowingConfig::Make(double segment_len, double hop_len,
                                      double min_tail) {
  WindowingConfig cfg{segment_len, hop_len, min_tail};
  cfg.Validate();
  return cfg;
}

void WindowingConfig::Validate() const {
  if (!(hop_len > 0.0) || !(hop_len <= segment_len) ||
      !std::isfinite(segment_len))
    throw ArgumentError("windowing needs 0 < hop_len <= segment_len, got " +
                        FormatReal(segment_len) + "/" + FormatReal(hop_len));
  if (!(min_tail >= 0.0))
    throw ArgumentError("windowing min_tail must be >= 0");
}

std::vector<Hypothesis> ParseRttm(std::istream &is) {
  std::map<std::string, std::vector<LabeledSegment>> by_recording;
  LineReader reader(is);
  std::string line;
  while (reader.Next(&line)) {
    auto fields = SplitFields(line);
    if (fields.empty()) continue;
    if (fields[0].starts_with(";;")) continue;
    const int n = reader.line();
    if (fields.size() < 9)
      throw ParseError("RTTM line needs at least 9 fields, got " +
                           std::to_string(fields.size()),
                       n);
    if (fields[0] != "SPEAKER")
      throw ParseError("RTTM record type must be SPEAKER, got '" +
                           std::string(fields[0]) + "'",
                       n);
    double onset = ParseReal(fields[3], n);
    double dur = ParseReal(fields[4], n);
    if (!(dur > 0.0))
      throw ParseError("RTTM duration must be positive", n);
    if (onset < 0.0) throw ParseError("RTTM onset must be non-negative", n);
    std::string speaker(fields[7]);
    by_recording[std::string(fields[1])].push_back(
        {TimeInterval(onset, onset + dur), std::move(speaker)});
  }
  std::vector<Hypothesis> out;
  for (auto &[rec, segs] : by_recording) out.emplace_back(rec, std::move(segs));
  return out;
}

std::vector<Hypothesis> ParseRttm(const std::string &text) {
  std::istringstream is(text);
  return ParseRttm(is);
}

void WriteRttm(std::ostream &os, std::span<const Hypothesis> hyps) {
  std::vector<const Hypothesis *> order;
  for (const auto &h : hyps) order.push_back(&h);
  std::stable_sort(order.begin(), order.end(),
                   [](const Hypothesis *a, const Hypothesis *b) {
                     return a->recording_id() < b->recording_id();
                   });
  for (const Hypothesis *h : order) {
    for (const auto &seg : h->segments()) {
      // Whole milliseconds; pieces that round to nothing are dropped.
      const long long a = std::llround(seg.interval.start() * 1000.0);
      const long long b = std::llround(seg.interval.end() * 1000.0);
      if (b <= a) continue;
      os << "SPEAKER " << h->recording_id() << " 1 " << FormatFixed(a / 1000.0, 3)
         << ' ' << FormatFixed((b - a) / 1000.0, 3) << " <NA> <NA> " << seg.speaker
         << " <NA> <NA>\n";
    }
  }
}

std::string WriteRttm(std::span<const Hypothesis> hyps) {
  std::ostringstream os;
  WriteRttm(os, hyps);
  return os.str();
}

std::vector<TimeInterval> WindowSpeech(std::span<const TimeInterval> regions,
                                       const WindowingConfig &cfg) {
  cfg.Validate();
  if (!IsSortedDisjoint(regions))
    throw ArgumentError("speech regions must be sorted and disjoint");
  // Slack for accumulated rounding in k * hop.
  constexpr double kEps = 1e-9;
  std::vector<TimeInterval> out;
  for (const auto &r : regions) {
    const double len = r.Duration();
    const long last =
        static_cast<long>(std::ceil(std::max(len - cfg.segment_len, 0.0) /
                                        cfg.hop_len -
                                    kEps));
    for (long k = 0; k <= last; ++k) {
      const double start = r.start() + k * cfg.hop_len;
      const double end = std::min(start + cfg.segment_len, r.end());
      if (end - start < cfg.segment_len - kEps && end - start < cfg.min_tail)
        continue;
      if (end > start) out.emplace_back(start, end);
    }
  }
  return out;
}

}  // namespace diarkit
