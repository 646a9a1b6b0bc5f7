// src/metrics.cc

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

#include "diarkit/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "diarkit/error.h"

namespace diarkit {

std::vector<int> MaxWeightAssignment(const Eigen::MatrixXd &weights) {
  const Eigen::Index rows = weights.rows(), cols = weights.cols();
  if (rows == 0 || cols == 0) return std::vector<int>(rows, -1);
  if (rows > cols) {
    std::vector<int> by_col = MaxWeightAssignment(weights.transpose());
    std::vector<int> out(rows, -1);
    for (Eigen::Index c = 0; c < cols; ++c)
      if (by_col[c] >= 0) out[by_col[c]] = static_cast<int>(c);
    return out;
  }
  // Shortest augmenting path Hungarian on cost = -weight, 1-based.
  const double inf = std::numeric_limits<double>::infinity();
  const Eigen::Index n = rows, m = cols;
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<Eigen::Index> p(m + 1, 0), way(m + 1, 0);
  for (Eigen::Index i = 1; i <= n; ++i) {
    p[0] = i;
    Eigen::Index j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const Eigen::Index i0 = p[j0];
      double delta = inf;
      Eigen::Index j1 = 0;
      for (Eigen::Index j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = -weights(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (Eigen::Index j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const Eigen::Index j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> out(rows, -1);
  for (Eigen::Index j = 1; j <= m; ++j)
    if (p[j] > 0) out[p[j] - 1] = static_cast<int>(j - 1);
  return out;
}

namespace {

void CheckSameRecording(const Hypothesis &ref, const Hypothesis &hyp) {
  if (ref.recording_id() != hyp.recording_id())
    throw ArgumentError("scoring: recording ids differ ('" + ref.recording_id() +
                        "' vs '" + hyp.recording_id() + "')");
}

std::vector<TimeInterval> NoScoreZones(const Hypothesis &ref, double collar) {
  if (!(collar >= 0.0)) throw ArgumentError("collar must be non-negative");
  std::vector<TimeInterval> zones;
  if (collar == 0.0) return zones;
  for (const auto &seg : ref.segments()) {
    for (double b : {seg.interval.start(), seg.interval.end()})
      zones.emplace_back(std::max(0.0, b - collar), b + collar);
  }
  return MergeIntervals(std::move(zones));
}

// Elementary pieces of the timeline with the speakers active on each.
struct Lattice {
  std::vector<double> times;
  std::vector<char> scored;                // per piece
  std::vector<std::vector<int>> ref_on;    // per piece, ref speaker ids
  std::vector<std::vector<int>> hyp_on;    // per piece, hyp speaker ids
  std::vector<std::string> ref_speakers;
  std::vector<std::string> hyp_speakers;

  size_t pieces() const { return times.empty() ? 0 : times.size() - 1; }
  double length(size_t k) const { return times[k + 1] - times[k]; }
};

void Mark(const std::vector<double> &times, const TimeInterval &iv, int id,
          std::vector<std::vector<int>> *on) {
  auto lo = std::lower_bound(times.begin(), times.end(), iv.start()) - times.begin();
  auto hi = std::lower_bound(times.begin(), times.end(), iv.end()) - times.begin();
  for (auto k = lo; k < hi; ++k) (*on)[k].push_back(id);
}

Lattice BuildLattice(const Hypothesis &ref, const Hypothesis &hyp, double collar) {
  Lattice lat;
  const auto zones = NoScoreZones(ref, collar);
  for (const auto *h : {&ref, &hyp})
    for (const auto &seg : h->segments()) {
      lat.times.push_back(seg.interval.start());
      lat.times.push_back(seg.interval.end());
    }
  for (const auto &z : zones) {
    lat.times.push_back(z.start());
    lat.times.push_back(z.end());
  }
  std::sort(lat.times.begin(), lat.times.end());
  lat.times.erase(std::unique(lat.times.begin(), lat.times.end()), lat.times.end());

  const size_t n = lat.pieces();
  lat.ref_on.resize(n);
  lat.hyp_on.resize(n);
  lat.scored.assign(n, 1);
  std::vector<std::vector<int>> zone_on(n);
  for (const auto &z : zones) Mark(lat.times, z, 0, &zone_on);
  for (size_t k = 0; k < n; ++k) lat.scored[k] = zone_on[k].empty();

  lat.ref_speakers = ref.Speakers();
  lat.hyp_speakers = hyp.Speakers();
  auto index_of = [](const std::vector<std::string> &names, const std::string &s) {
    return static_cast<int>(std::lower_bound(names.begin(), names.end(), s) -
                            names.begin());
  };
  for (const auto &seg : ref.segments())
    Mark(lat.times, seg.interval, index_of(lat.ref_speakers, seg.speaker),
         &lat.ref_on);
  for (const auto &seg : hyp.segments())
    Mark(lat.times, seg.interval, index_of(lat.hyp_speakers, seg.speaker),
         &lat.hyp_on);
  return lat;
}

Eigen::MatrixXd OverlapMatrix(const Lattice &lat) {
  Eigen::MatrixXd m =
      Eigen::MatrixXd::Zero(lat.ref_speakers.size(), lat.hyp_speakers.size());
  for (size_t k = 0; k < lat.pieces(); ++k) {
    if (!lat.scored[k]) continue;
    const double d = lat.length(k);
    for (int r : lat.ref_on[k])
      for (int h : lat.hyp_on[k]) m(r, h) += d;
  }
  return m;
}

void FinishDer(DerBreakdown *b) {
  if (b->total_reference > 0.0) {
    b->der = 100.0 * b->errors() / b->total_reference;
  } else {
    b->degenerate = true;
    b->der = b->false_alarm > 0.0 ? 100.0 : 0.0;
  }
}

}  // namespace

DerBreakdown ComputeDer(const Hypothesis &reference, const Hypothesis &hypothesis,
                        double collar) {
  CheckSameRecording(reference, hypothesis);
  const Lattice lat = BuildLattice(reference, hypothesis, collar);
  const std::vector<int> mapping = MaxWeightAssignment(OverlapMatrix(lat));

  DerBreakdown b;
  for (size_t k = 0; k < lat.pieces(); ++k) {
    if (!lat.scored[k]) continue;
    const double d = lat.length(k);
    const auto &rs = lat.ref_on[k];
    const auto &hs = lat.hyp_on[k];
    const double n_ref = rs.size(), n_hyp = hs.size();
    double n_corr = 0.0;
    for (int r : rs)
      if (mapping[r] >= 0 && std::find(hs.begin(), hs.end(), mapping[r]) != hs.end())
        n_corr += 1.0;
    b.total_reference += d * n_ref;
    b.missed += d * std::max(0.0, n_ref - n_hyp);
    b.false_alarm += d * std::max(0.0, n_hyp - n_ref);
    b.confusion += d * (std::min(n_ref, n_hyp) - n_corr);
  }
  FinishDer(&b);
  return b;
}

JerResult ComputeJer(const Hypothesis &reference, const Hypothesis &hypothesis) {
  CheckSameRecording(reference, hypothesis);
  JerResult out;
  if (reference.empty()) return out;
  const Lattice lat = BuildLattice(reference, hypothesis, 0.0);
  const Eigen::MatrixXd overlap = OverlapMatrix(lat);
  const std::vector<int> mapping = MaxWeightAssignment(overlap);
  double sum = 0.0;
  for (size_t r = 0; r < lat.ref_speakers.size(); ++r) {
    const std::string &name = lat.ref_speakers[r];
    double err = 100.0;
    if (mapping[r] >= 0) {
      const std::string &h = lat.hyp_speakers[mapping[r]];
      const double inter = overlap(r, mapping[r]);
      const double uni = TotalDuration(reference.SpeakerIntervals(name)) +
                         TotalDuration(hypothesis.SpeakerIntervals(h)) - inter;
      if (uni > 0.0) err = 100.0 * (1.0 - inter / uni);
    }
    out.per_speaker[name] = err;
    sum += err;
  }
  out.jer = sum / static_cast<double>(lat.ref_speakers.size());
  return out;
}

namespace {

// Best total count over injective maps ref -> hyp, by DP over subsets of
// hypothesis speakers.
long long BestMappingCount(const std::vector<std::vector<long long>> &counts,
                           size_t n_hyp) {
  if (n_hyp > 20) throw ArgumentError("frame oracle: too many hypothesis speakers");
  const size_t full = size_t{1} << n_hyp;
  std::vector<long long> best(full, -1);
  best[0] = 0;
  for (const auto &row : counts) {
    std::vector<long long> next = best;  // ref speaker left unmapped
    for (size_t mask = 0; mask < full; ++mask) {
      if (best[mask] < 0) continue;
      for (size_t h = 0; h < n_hyp; ++h) {
        if (mask & (size_t{1} << h)) continue;
        const size_t m2 = mask | (size_t{1} << h);
        next[m2] = std::max(next[m2], best[mask] + row[h]);
      }
    }
    best = std::move(next);
  }
  return *std::max_element(best.begin(), best.end());
}

}  // namespace

DerBreakdown FrameDerOracle(const Hypothesis &reference,
                            const Hypothesis &hypothesis, double collar,
                            double grid) {
  CheckSameRecording(reference, hypothesis);
  if (!(grid > 0.0)) throw ArgumentError("frame oracle: grid must be positive");
  if (!(collar >= 0.0)) throw ArgumentError("collar must be non-negative");
  double t_end = 0.0;
  for (const auto *h : {&reference, &hypothesis})
    for (const auto &s : h->segments()) t_end = std::max(t_end, s.interval.end());
  const long long n_frames = static_cast<long long>(std::ceil(t_end / grid)) + 1;

  std::vector<double> boundaries;
  for (const auto &s : reference.segments()) {
    boundaries.push_back(s.interval.start());
    boundaries.push_back(s.interval.end());
  }
  const auto ref_names = reference.Speakers();
  const auto hyp_names = hypothesis.Speakers();
  auto active = [](const Hypothesis &h, const std::vector<std::string> &names,
                   double t) {
    std::vector<int> on;
    for (const auto &s : h.segments())
      if (s.interval.start() <= t && t < s.interval.end())
        on.push_back(static_cast<int>(
            std::find(names.begin(), names.end(), s.speaker) - names.begin()));
    return on;
  };

  std::vector<std::vector<long long>> counts(ref_names.size(),
                                             std::vector<long long>(hyp_names.size(), 0));
  long long total = 0, missed = 0, fa = 0, paired = 0;
  for (long long k = 0; k < n_frames; ++k) {
    const double t = (k + 0.5) * grid;
    bool scored = true;
    for (double b : boundaries)
      if (std::abs(t - b) < collar) scored = false;
    if (!scored) continue;
    const auto rs = active(reference, ref_names, t);
    const auto hs = active(hypothesis, hyp_names, t);
    for (int r : rs)
      for (int h : hs) ++counts[r][h];
    const long long nr = rs.size(), nh = hs.size();
    total += nr;
    missed += std::max(0LL, nr - nh);
    fa += std::max(0LL, nh - nr);
    paired += std::min(nr, nh);
  }
  const long long correct = BestMappingCount(counts, hyp_names.size());
  DerBreakdown b;
  b.total_reference = total * grid;
  b.missed = missed * grid;
  b.false_alarm = fa * grid;
  b.confusion = (paired - correct) * grid;
  FinishDer(&b);
  return b;
}

CorpusScore AggregateScores(std::span<const DerBreakdown> ders,
                            std::span<const JerResult> jers) {
  CorpusScore c;
  for (const auto &d : ders) {
    c.pooled.missed += d.missed;
    c.pooled.false_alarm += d.false_alarm;
    c.pooled.confusion += d.confusion;
    c.pooled.total_reference += d.total_reference;
    c.mean_der += d.der;
  }
  if (!ders.empty()) c.mean_der /= static_cast<double>(ders.size());
  FinishDer(&c.pooled);
  for (const auto &j : jers) c.mean_jer += j.jer;
  if (!jers.empty()) c.mean_jer /= static_cast<double>(jers.size());
  return c;
}

}  // namespace diarkit
