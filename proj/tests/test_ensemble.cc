// tests/test_ensemble.cc

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

#include <algorithm>
#include <random>

#include "doctest.h"
#include "diarkit/ensemble.h"
#include "diarkit/error.h"
#include "diarkit/metrics.h"
#include "oracles.h"

using namespace diarkit;

namespace {

std::string Rttm(const Hypothesis &h) { return WriteRttm(std::span<const Hypothesis>(&h, 1)); }

// Groups (hyp index, original label) by the global label they received.
std::set<std::set<std::pair<int, std::string>>> Groups(const std::vector<Hypothesis> &in,
                                                       const std::vector<Hypothesis> &out) {
  std::map<std::string, std::set<std::pair<int, std::string>>> by_global;
  for (size_t i = 0; i < in.size(); ++i) {
    for (const auto &l : in[i].Speakers()) {
      const auto want = in[i].SpeakerIntervals(l);
      int found = 0;
      for (const auto &g : out[i].Speakers())
        if (out[i].SpeakerIntervals(g) == want) {
          by_global[g].insert({static_cast<int>(i), l});
          ++found;
        }
      CHECK(found == 1);
    }
  }
  std::set<std::set<std::pair<int, std::string>>> groups;
  for (auto &[g, grp] : by_global) groups.insert(grp);
  return groups;
}

std::vector<RankedHypothesis> Equal(const std::vector<Hypothesis> &hs) {
  std::vector<RankedHypothesis> r;
  for (const auto &h : hs) r.push_back({h, 1.0 / static_cast<double>(hs.size())});
  return r;
}

}  // namespace

TEST_CASE("rank weights") {
  std::mt19937_64 rng(1);
  const Hypothesis h = oracle::RandomHypothesis(rng, "r", 3, 30, 10);
  const std::vector<Hypothesis> same{h, h, h};
  for (const auto &r : RankWeights(same, 0.1)) CHECK(r.weight == doctest::Approx(1.0 / 3.0));

  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Hypothesis> hs;
    for (int i = 0; i < 4; ++i) hs.push_back(oracle::RandomHypothesis(rng, "r", 3, 30, 6 + 3 * i));
    std::vector<double> mean(4, 0.0);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j) mean[i] += ComputeDer(hs[j], hs[i], 0.0).der / 3.0;
    std::vector<double> expect(4);
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
      int rank = 1;
      for (int j = 0; j < 4; ++j) rank += mean[j] < mean[i];
      expect[i] = 1.0 / rank;
      sum += expect[i];
    }
    const auto w = RankWeights(hs, 1.0);
    for (int i = 0; i < 4; ++i) CHECK(w[i].weight == doctest::Approx(expect[i] / sum).epsilon(1e-12));
  }
  CHECK_THROWS_AS(RankWeights(std::vector<Hypothesis>{h}, 0.1), ArgumentError);
  CHECK_THROWS_AS(RankWeights(same, 0.0), ArgumentError);
}

TEST_CASE("label mapping recovers renamed speakers") {
  const Hypothesis a("r", {{{0, 5}, "x"}, {{5, 10}, "y"}});
  const Hypothesis b("r", {{{0, 5}, "p"}, {{5, 10}, "q"}});
  const Hypothesis c("r", {{{0, 4.5}, "y"}, {{4.5, 10}, "x"}});
  const std::vector<Hypothesis> in{a, b, c};
  const auto out = MapLabels(Equal(in));
  CHECK(out[1].SpeakerIntervals(out[0].segments()[0].speaker) == b.SpeakerIntervals("p"));
  CHECK(out[2].SpeakerIntervals(out[0].segments()[1].speaker) == c.SpeakerIntervals("x"));

  // Disjoint speakers each open their own label.
  const Hypothesis d("r", {{{0, 1}, "s"}});
  const Hypothesis e("r", {{{2, 3}, "s"}});
  const auto sep = MapLabels(Equal({d, e}));
  CHECK(sep[0].Speakers() != sep[1].Speakers());
}

TEST_CASE("label mapping agrees with exhaustive bijection search") {
  std::mt19937_64 rng(2);
  for (int c = 0; c < 50; ++c) {
    const std::uint64_t layout = 1000 + c;
    const std::vector<Hypothesis> in{oracle::PerturbedTwoSpeaker(rng, layout, "u"),
                                     oracle::PerturbedTwoSpeaker(rng, layout, "v"),
                                     oracle::PerturbedTwoSpeaker(rng, layout, "w")};
    const auto out = MapLabels(Equal(in));
    CHECK(Groups(in, out) == oracle::ExhaustiveMapping(in));
  }
}

TEST_CASE("voting examples") {
  const Hypothesis a("r", {{{0, 10}, "A"}});
  const Hypothesis b("r", {{{0, 10}, "B"}});
  const Hypothesis combined = DoverlapCombine(Equal({a, a, b}));
  CHECK(combined == a);

  const Hypothesis ov("r", {{{0, 5}, "A"}, {{0, 5}, "B"}});
  CHECK(DoverlapCombine(Equal({ov, ov, ov})) == ov);

  // Half the voters see speech: expected count rounds to one speaker.
  const Hypothesis empty("r", {});
  CHECK(DoverlapCombine(Equal({a, a, empty})) == a);
  CHECK(DoverlapCombine(Equal({a, empty, empty})).empty());
}

TEST_CASE("doverlap properties") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Hypothesis h = oracle::RandomHypothesis(rng, "r", 3, 40, 12);
    CHECK(Rttm(Doverlap(std::vector<Hypothesis>{h, h, h}, 0.1)) == Rttm(h));
    CHECK(Rttm(Doverlap(std::vector<Hypothesis>{h}, 0.1)) == Rttm(h));

    std::vector<Hypothesis> hs;
    for (int i = 0; i < 3; ++i)
      hs.push_back(oracle::RandomHypothesis(rng, "r", 2 + i, 40, 10, std::string(1, 'a' + i)));
    const Hypothesis out = Doverlap(hs, 0.1);
    std::vector<Hypothesis> perm = hs;
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(Rttm(Doverlap(perm, 0.1)) == Rttm(out));

    std::set<std::string> labels;
    std::vector<RankedHypothesis> ranked = RankWeights(hs, 0.1);
    for (const auto &m : MapLabels(ranked))
      for (const auto &s : m.Speakers()) labels.insert(s);
    for (const auto &s : out.Speakers()) CHECK(labels.count(s) == 1);

    std::vector<TimeInterval> any;
    for (const auto &x : hs)
      for (const auto &r : x.SpeechRegions()) any.push_back(r);
    const auto merged = MergeIntervals(any);
    const auto speech = out.SpeechRegions();
    CHECK(TotalDuration(IntersectIntervals(speech, merged)) ==
          doctest::Approx(TotalDuration(speech)));
  }
}

TEST_CASE("doverlap rejects mixed recordings") {
  const Hypothesis a("r1", {{{0, 1}, "A"}});
  const Hypothesis b("r2", {{{0, 1}, "A"}});
  CHECK_THROWS_AS(Doverlap(std::vector<Hypothesis>{a, b}, 0.1), ArgumentError);
}
