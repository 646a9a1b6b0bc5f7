// src/frontend.cc

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

#include "diarkit/frontend.h"

#include <cmath>
#include <istream>
#include <ostream>

#include "diarkit/error.h"
#include "diarkit/textio.h"

namespace diarkit {

void PosteriorTrack::Validate() const {
  if (!(frame_rate > 0.0) || !std::isfinite(frame_rate))
    throw ArgumentError("posterior frame rate must be positive");
  for (double v : values)
    if (!(v >= 0.0 && v <= 1.0))
      throw ArgumentError("posterior value outside [0,1]: " + FormatReal(v));
}

void BinarizerConfig::Validate() const {
  if (!(0.0 <= offset && offset <= onset && onset <= 1.0))
    throw ArgumentError("binarizer needs 0 <= offset <= onset <= 1");
  if (!(min_on >= 0.0 && min_off >= 0.0 && pad >= 0.0))
    throw ArgumentError("binarizer durations must be non-negative");
}

PosteriorTrack FusePosteriors(std::span<const PosteriorTrack> tracks) {
  if (tracks.empty()) throw ArgumentError("fusion needs at least one track");
  const PosteriorTrack &first = tracks.front();
  for (const auto &t : tracks) {
    t.Validate();
    if (t.recording_id != first.recording_id)
      throw ArgumentError("fusion: recording ids differ ('" +
                          first.recording_id + "' vs '" + t.recording_id +
                          "')");
    if (t.frame_rate != first.frame_rate)
      throw ArgumentError("fusion: frame rates differ");
    if (t.values.size() != first.values.size())
      throw ArgumentError("fusion: track lengths differ (" +
                          std::to_string(first.values.size()) + " vs " +
                          std::to_string(t.values.size()) + ")");
  }
  PosteriorTrack out{first.recording_id, first.frame_rate,
                     std::vector<double>(first.values.size(), 0.0)};
  for (size_t k = 0; k < out.values.size(); ++k) {
    double sum = 0.0;
    for (const auto &t : tracks) sum += t.values[k];
    out.values[k] = std::min(1.0, sum / tracks.size());
  }
  return out;
}

std::vector<TimeInterval> Binarize(const PosteriorTrack &track,
                                   const BinarizerConfig &cfg) {
  track.Validate();
  cfg.Validate();
  const double rate = track.frame_rate;
  const size_t n = track.values.size();

  // Raw hysteresis regions in frame units.
  std::vector<std::pair<size_t, size_t>> raw;
  bool active = false;
  size_t open = 0;
  for (size_t k = 0; k < n; ++k) {
    const double v = track.values[k];
    if (!active && v >= cfg.onset) {
      active = true;
      open = k;
    } else if (active && v < cfg.offset) {
      active = false;
      raw.emplace_back(open, k);
    }
  }
  if (active) raw.emplace_back(open, n);

  std::vector<std::pair<double, double>> regions;
  for (auto [a, b] : raw) {
    double s = a / rate, e = b / rate;
    if (e - s >= cfg.min_on) regions.emplace_back(s, e);
  }

  std::vector<std::pair<double, double>> filled;
  for (const auto &r : regions) {
    if (!filled.empty() && r.first - filled.back().second < cfg.min_off)
      filled.back().second = r.second;
    else
      filled.push_back(r);
  }

  const double total = track.Duration();
  std::vector<TimeInterval> out;
  for (const auto &[s, e] : filled) {
    double ps = std::max(0.0, s - cfg.pad);
    double pe = std::min(total, e + cfg.pad);
    if (pe > ps) out.emplace_back(ps, pe);
  }
  return MergeIntervals(std::move(out));
}

double FBeta(double precision, double recall, const FBetaConfig &cfg) {
  if (!(cfg.beta >= 0.0)) throw ArgumentError("beta must be non-negative");
  const double b2 = cfg.beta * cfg.beta;
  const double denom = b2 * precision + recall;
  if (denom <= 0.0) return 0.0;
  return (1.0 + b2) * precision * recall / denom;
}

namespace {

std::vector<char> FrameMask(size_t n, double rate,
                            std::span<const TimeInterval> intervals) {
  std::vector<char> mask(n, 0);
  for (const auto &iv : intervals) {
    // Frames whose center (k + 0.5) / rate lies in [start, end).
    double lo = std::ceil(iv.start() * rate - 0.5);
    double hi = std::ceil(iv.end() * rate - 0.5);
    size_t a = static_cast<size_t>(std::max(0.0, lo));
    size_t b = static_cast<size_t>(std::clamp(hi, 0.0, static_cast<double>(n)));
    for (size_t k = a; k < b; ++k) mask[k] = 1;
  }
  return mask;
}

}  // namespace

DetectionScore FrameDetectionScore(const PosteriorTrack &track,
                                   std::span<const TimeInterval> predicted,
                                   std::span<const TimeInterval> reference,
                                   const FBetaConfig &cfg) {
  const size_t n = track.values.size();
  auto pred = FrameMask(n, track.frame_rate, predicted);
  auto ref = FrameMask(n, track.frame_rate, reference);
  size_t tp = 0, np = 0, nr = 0;
  for (size_t k = 0; k < n; ++k) {
    tp += pred[k] && ref[k];
    np += pred[k];
    nr += ref[k];
  }
  DetectionScore s;
  if (np == 0 && nr == 0) {
    s.precision = s.recall = s.f_beta = 1.0;
    return s;
  }
  s.precision = np ? static_cast<double>(tp) / np : 0.0;
  s.recall = nr ? static_cast<double>(tp) / nr : 0.0;
  s.f_beta = FBeta(s.precision, s.recall, cfg);
  return s;
}

BinarizerConfig TuneBinarizer(const PosteriorTrack &track,
                              std::span<const TimeInterval> reference,
                              std::span<const BinarizerConfig> grid,
                              const FBetaConfig &beta) {
  if (grid.empty()) throw ArgumentError("binarizer grid is empty");
  size_t best = 0;
  double best_f = -1.0;
  for (size_t i = 0; i < grid.size(); ++i) {
    auto pred = Binarize(track, grid[i]);
    double f = FrameDetectionScore(track, pred, reference, beta).f_beta;
    if (f > best_f) {
      best_f = f;
      best = i;
    }
  }
  return grid[best];
}

std::vector<BinarizerConfig> DefaultBinarizerGrid(const BinarizerConfig &base) {
  std::vector<BinarizerConfig> grid;
  for (int on = 3; on <= 7; ++on) {
    for (int off = 3; off <= on; ++off) {
      BinarizerConfig c = base;
      c.onset = on / 10.0;
      c.offset = off / 10.0;
      grid.push_back(c);
    }
  }
  return grid;
}

PosteriorTrack ReadPosteriors(std::istream &is) {
  LineReader reader(is);
  auto header = ReadHeader(reader, "POST", 5);
  PosteriorTrack track;
  track.recording_id = header[2];
  track.frame_rate = ParseReal(header[3], reader.line());
  long long n = ParseInt(header[4], reader.line());
  if (n < 0) throw ParseError("negative frame count", reader.line());
  if (!(track.frame_rate > 0.0))
    throw ParseError("frame rate must be positive", reader.line());
  track.values.reserve(n);
  for (long long k = 0; k < n; ++k) {
    std::string line = reader.Require("posterior value");
    auto fields = SplitFields(line);
    if (fields.size() != 1)
      throw ParseError("expected one value per line", reader.line());
    double v = ParseReal(fields[0], reader.line());
    if (v < 0.0 || v > 1.0)
      throw ParseError("posterior outside [0,1]", reader.line());
    track.values.push_back(v);
  }
  return track;
}

void WritePosteriors(std::ostream &os, const PosteriorTrack &track) {
  os << "POST v1 " << track.recording_id << ' ' << FormatReal(track.frame_rate)
     << ' ' << track.values.size() << '\n';
  for (double v : track.values) os << FormatReal(v) << '\n';
}

}  // namespace diarkit
