// src/ensemble.cc

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

#include "diarkit/ensemble.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "diarkit/error.h"
#include "diarkit/metrics.h"

namespace diarkit {

namespace {

void CheckRecordings(std::span<const Hypothesis> hyps) {
  for (const auto &h : hyps)
    if (h.recording_id() != hyps.front().recording_id())
      throw ArgumentError("ensemble: recording ids differ ('" +
                          hyps.front().recording_id() + "' vs '" +
                          h.recording_id() + "')");
}

// Input indices ordered by weight (descending) and then by content, so
// that processing does not depend on the order inputs were given in.
std::vector<size_t> CanonicalOrder(std::span<const RankedHypothesis> ranked) {
  std::vector<std::string> text(ranked.size());
  for (size_t i = 0; i < ranked.size(); ++i)
    text[i] = WriteRttm(std::span<const Hypothesis>(&ranked[i].hypothesis, 1));
  std::vector<size_t> order(ranked.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (ranked[a].weight != ranked[b].weight)
      return ranked[a].weight > ranked[b].weight;
    return text[a] < text[b];
  });
  return order;
}

double IntervalSetOverlap(const std::vector<TimeInterval> &a,
                          const std::vector<TimeInterval> &b) {
  return TotalDuration(IntersectIntervals(a, b));
}

}  // namespace

std::vector<RankedHypothesis> RankWeights(std::span<const Hypothesis> hyps,
                                          double exponent) {
  if (hyps.size() < 2) throw ArgumentError("rank_weights needs at least 2 hypotheses");
  if (!(exponent > 0.0)) throw ArgumentError("rank exponent must be positive");
  CheckRecordings(hyps);
  const size_t k = hyps.size();
  std::vector<double> mean_der(k, 0.0);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j)
      if (i != j) mean_der[i] += ComputeDer(hyps[j], hyps[i], 0.0).der;
    mean_der[i] /= static_cast<double>(k - 1);
  }
  std::vector<size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return mean_der[a] < mean_der[b]; });
  std::vector<double> rank(k);
  for (size_t p = 0; p < k;) {
    size_t q = p;
    while (q + 1 < k &&
           std::abs(mean_der[order[q + 1]] - mean_der[order[p]]) <= 1e-9)
      ++q;
    const double shared = 0.5 * ((p + 1) + (q + 1));
    for (size_t r = p; r <= q; ++r) rank[order[r]] = shared;
    p = q + 1;
  }
  std::vector<RankedHypothesis> out;
  double total = 0.0;
  for (size_t i = 0; i < k; ++i) {
    out.push_back({hyps[i], std::pow(rank[i], -exponent)});
    total += out.back().weight;
  }
  for (auto &r : out) r.weight /= total;
  return out;
}

std::vector<Hypothesis> MapLabels(std::span<const RankedHypothesis> ranked) {
  if (ranked.size() < 2) throw ArgumentError("map_labels needs at least 2 hypotheses");
  std::vector<Hypothesis> plain;
  for (const auto &r : ranked) plain.push_back(r.hypothesis);
  CheckRecordings(plain);

  const std::vector<size_t> order = CanonicalOrder(ranked);
  struct Node {
    size_t hyp;  // position in canonical order
    std::string label;
    std::vector<TimeInterval> intervals;
    int global = -1;
  };
  std::vector<Node> nodes;
  for (size_t p = 0; p < order.size(); ++p) {
    const Hypothesis &h = ranked[order[p]].hypothesis;
    for (const auto &spk : h.Speakers())
      nodes.push_back({p, spk, h.SpeakerIntervals(spk), -1});
  }
  const size_t n = nodes.size();
  std::vector<std::vector<double>> overlap(n, std::vector<double>(n, 0.0));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b)
      if (nodes[a].hyp != nodes[b].hyp)
        overlap[a][b] = overlap[b][a] =
            IntervalSetOverlap(nodes[a].intervals, nodes[b].intervals);

  std::vector<std::vector<size_t>> members;    // per global label
  std::vector<std::set<size_t>> used_by;       // hyps present in a global label
  std::vector<std::string> names;
  size_t remaining = n;
  while (remaining > 0) {
    double best = 0.0;
    size_t best_node = n;
    int best_global = -1;
    for (size_t a = 0; a < n; ++a) {
      if (nodes[a].global >= 0) continue;
      for (size_t g = 0; g < members.size(); ++g) {
        if (used_by[g].count(nodes[a].hyp)) continue;
        double score = 0.0;
        for (size_t m : members[g]) score += overlap[a][m];
        if (score > best) {
          best = score;
          best_node = a;
          best_global = static_cast<int>(g);
        }
      }
    }
    if (best_global < 0) {
      // Nothing overlaps an existing label: the first unmapped node opens
      // a new one.
      best_node = 0;
      while (nodes[best_node].global >= 0) ++best_node;
      best_global = static_cast<int>(members.size());
      members.emplace_back();
      used_by.emplace_back();
      std::string name = nodes[best_node].label;
      for (int suffix = 1;
           std::find(names.begin(), names.end(), name) != names.end(); ++suffix)
        name = nodes[best_node].label + "_" + std::to_string(suffix);
      names.push_back(name);
    }
    nodes[best_node].global = best_global;
    members[best_global].push_back(best_node);
    used_by[best_global].insert(nodes[best_node].hyp);
    --remaining;
  }

  std::vector<Hypothesis> out(ranked.size());
  for (size_t p = 0; p < order.size(); ++p) {
    const Hypothesis &h = ranked[order[p]].hypothesis;
    std::map<std::string, std::string> rename;
    for (const auto &node : nodes)
      if (node.hyp == p) rename[node.label] = names[node.global];
    std::vector<LabeledSegment> segs;
    for (const auto &s : h.segments()) segs.push_back({s.interval, rename.at(s.speaker)});
    out[order[p]] = Hypothesis(h.recording_id(), std::move(segs));
  }
  return out;
}

Hypothesis DoverlapCombine(std::span<const RankedHypothesis> ranked) {
  if (ranked.empty()) throw ArgumentError("combine needs at least one hypothesis");
  std::vector<Hypothesis> plain;
  for (const auto &r : ranked) plain.push_back(r.hypothesis);
  CheckRecordings(plain);
  const std::vector<size_t> order = CanonicalOrder(ranked);

  std::vector<double> times;
  for (const auto &r : ranked)
    for (const auto &s : r.hypothesis.segments()) {
      times.push_back(s.interval.start());
      times.push_back(s.interval.end());
    }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  // Per hypothesis and piece, the active labels.
  const size_t pieces = times.empty() ? 0 : times.size() - 1;
  std::vector<std::vector<std::vector<const std::string *>>> active(
      ranked.size(), std::vector<std::vector<const std::string *>>(pieces));
  for (size_t k = 0; k < ranked.size(); ++k) {
    for (const auto &s : ranked[k].hypothesis.segments()) {
      auto lo = std::lower_bound(times.begin(), times.end(), s.interval.start()) -
                times.begin();
      auto hi = std::lower_bound(times.begin(), times.end(), s.interval.end()) -
                times.begin();
      for (auto p = lo; p < hi; ++p) active[k][p].push_back(&s.speaker);
    }
  }

  std::vector<LabeledSegment> out;
  for (size_t p = 0; p < pieces; ++p) {
    std::map<std::string, double> votes;
    double expected = 0.0;
    for (size_t k : order) {
      const double w = ranked[k].weight;
      expected += w * static_cast<double>(active[k][p].size());
      for (const std::string *label : active[k][p]) votes[*label] += w;
    }
    const long count = std::max(0L, std::lround(expected));
    if (count == 0 || votes.empty()) continue;
    std::vector<std::pair<std::string, double>> ranked_votes(votes.begin(), votes.end());
    std::stable_sort(ranked_votes.begin(), ranked_votes.end(),
                     [](const auto &a, const auto &b) { return a.second > b.second; });
    const size_t take = std::min<size_t>(count, ranked_votes.size());
    const TimeInterval piece(times[p], times[p + 1]);
    for (size_t i = 0; i < take; ++i) out.push_back({piece, ranked_votes[i].first});
  }
  return Hypothesis(ranked.front().hypothesis.recording_id(), std::move(out));
}

Hypothesis Doverlap(std::span<const Hypothesis> hyps, double exponent) {
  if (hyps.empty()) throw ArgumentError("ensemble needs at least one hypothesis");
  if (hyps.size() == 1) return hyps.front();
  std::vector<RankedHypothesis> ranked = RankWeights(hyps, exponent);
  std::vector<Hypothesis> mapped = MapLabels(ranked);
  for (size_t i = 0; i < ranked.size(); ++i) ranked[i].hypothesis = std::move(mapped[i]);
  return DoverlapCombine(ranked);
}

}  // namespace diarkit
