// tests/test_timeline.cc

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

#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "diarkit/error.h"
#include "diarkit/timeline.h"
#include "oracles.h"

using namespace diarkit;

TEST_CASE("time interval rejects empty, negative and non-finite spans") {
  CHECK_THROWS_AS(TimeInterval(1.0, 1.0), ArgumentError);
  CHECK_THROWS_AS(TimeInterval(2.0, 1.0), ArgumentError);
  CHECK_THROWS_AS(TimeInterval(-0.5, 1.0), ArgumentError);
  CHECK_THROWS_AS(TimeInterval(0.0, INFINITY), ArgumentError);
  CHECK_THROWS_AS(TimeInterval(NAN, 1.0), ArgumentError);
  TimeInterval a(1.0, 3.0), b(2.0, 5.0);
  CHECK(a.OverlapWith(b) == doctest::Approx(1.0));
  CHECK(a.Intersects(b));
  CHECK_FALSE(TimeInterval(0, 1).Intersects(TimeInterval(1, 2)));
}

TEST_CASE("hypothesis canonicalizes and validates labels") {
  Hypothesis h("r", {{TimeInterval(2, 3), "b"},
                     {TimeInterval(0, 1), "a"},
                     {TimeInterval(1, 2), "a"},
                     {TimeInterval(0.5, 2.5), "b"}});
  REQUIRE(h.segments().size() == 2);
  CHECK(h.segments()[0] == LabeledSegment{TimeInterval(0, 2), "a"});
  CHECK(h.segments()[1] == LabeledSegment{TimeInterval(0.5, 3), "b"});
  CHECK(h.TotalSpeakerTime() == doctest::Approx(4.5));
  CHECK(TotalDuration(h.SpeechRegions()) == doctest::Approx(3.0));
  CHECK_THROWS_AS(Hypothesis("r", {{TimeInterval(0, 1), ""}}), ArgumentError);
  CHECK_THROWS_AS(Hypothesis("r", {{TimeInterval(0, 1), "a b"}}), ArgumentError);
}

TEST_CASE("per-speaker union is preserved by canonicalization") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<LabeledSegment> raw;
    std::uniform_real_distribution<double> u(0.0, 20.0);
    for (int i = 0; i < 15; ++i) {
      double a = u(rng), d = 0.1 + u(rng) / 5.0;
      raw.push_back({TimeInterval(a, a + d), "s" + std::to_string(i % 3)});
    }
    Hypothesis h("r", raw);
    for (const auto &spk : h.Speakers()) {
      std::vector<TimeInterval> mine;
      for (const auto &s : raw)
        if (s.speaker == spk) mine.push_back(s.interval);
      const auto merged = MergeIntervals(mine);
      CHECK(h.SpeakerIntervals(spk) == merged);
      CHECK(IsSortedDisjoint(h.SpeakerIntervals(spk)));
    }
    CHECK(Hypothesis("r", h.segments()) == h);
  }
}

TEST_CASE("rttm parse") {
  auto hyps = ParseRttm("SPEAKER rec1 1 0.50 1.25 <NA> <NA> spkA <NA> <NA>\n");
  REQUIRE(hyps.size() == 1);
  CHECK(hyps[0].recording_id() == "rec1");
  REQUIRE(hyps[0].segments().size() == 1);
  CHECK(hyps[0].segments()[0].interval.start() == 0.5);
  CHECK(hyps[0].segments()[0].interval.end() == 1.75);

  auto merged = ParseRttm(
      ";; comment\n\n"
      "SPEAKER r 1 0 1 <NA> <NA> spkA <NA> <NA>\n"
      "SPEAKER r 1 0.5 1 <NA> <NA> spkA <NA> <NA>\n");
  REQUIRE(merged[0].segments().size() == 1);
  CHECK(merged[0].segments()[0].interval == TimeInterval(0, 1.5));
}

TEST_CASE("rttm parse errors name the line") {
  auto line_of = [](const std::string &text) {
    try {
      ParseRttm(text);
    } catch (const ParseError &e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("SPEAKER r 1 0 1 <NA> <NA> a <NA> <NA>\nSPEAKER r 1 0 1\n") == 2);
  CHECK(line_of("SPEAKER r 1 x 1 <NA> <NA> a <NA> <NA>\n") == 1);
  CHECK(line_of("SPEAKER r 1 0 0 <NA> <NA> a <NA> <NA>\n") == 1);
  CHECK(line_of("SPEAKER r 1 0 -1 <NA> <NA> a <NA> <NA>\n") == 1);
  CHECK(line_of("LEXEME r 1 0 1 <NA> <NA> a <NA> <NA>\n") == 1);
}

TEST_CASE("rttm write format and round trip") {
  Hypothesis h("rec1", {{TimeInterval(0, 2), "spkA"}});
  CHECK(WriteRttm(std::span(&h, 1)) ==
        "SPEAKER rec1 1 0.000 2.000 <NA> <NA> spkA <NA> <NA>\n");
  CHECK(WriteRttm(std::span<const Hypothesis>()) == "");

  std::mt19937_64 rng(5);
  std::vector<Hypothesis> hyps;
  for (int r = 0; r < 4; ++r)
    hyps.push_back(oracle::RandomHypothesis(rng, "rec" + std::to_string(3 - r), 3, 60, 20));
  const std::string text = WriteRttm(hyps);
  const auto parsed = ParseRttm(text);
  CHECK(WriteRttm(parsed) == text);
  REQUIRE(parsed.size() == 4);
  CHECK(parsed[0].recording_id() == "rec0");
  for (const auto &p : parsed) {
    const auto &orig = *std::find_if(hyps.begin(), hyps.end(), [&](const Hypothesis &x) {
      return x.recording_id() == p.recording_id();
    });
    REQUIRE(orig.segments().size() == p.segments().size());
    for (size_t i = 0; i < p.segments().size(); ++i) {
      CHECK(std::abs(p.segments()[i].interval.start() - orig.segments()[i].interval.start()) <= 5e-4);
      CHECK(std::abs(p.segments()[i].interval.end() - orig.segments()[i].interval.end()) <= 1e-3);
      CHECK(p.segments()[i].speaker == orig.segments()[i].speaker);
    }
  }
}

TEST_CASE("window_speech examples") {
  std::vector<TimeInterval> r{TimeInterval(0, 3)};
  auto w = WindowSpeech(r, WindowingConfig::Make(2.0, 1.0, 0.5));
  REQUIRE(w.size() == 2);
  CHECK(w[0] == TimeInterval(0, 2));
  CHECK(w[1] == TimeInterval(1, 3));

  std::vector<TimeInterval> short_r{TimeInterval(0, 1.2)};
  w = WindowSpeech(short_r, WindowingConfig::Make(1.5, 0.25, 0.5));
  REQUIRE(w.size() == 1);
  CHECK(w[0] == TimeInterval(0, 1.2));

  std::vector<TimeInterval> ten{TimeInterval(0, 10)};
  w = WindowSpeech(ten, WindowingConfig::Make(1.0, 0.5, 0.5));
  REQUIRE(w.size() == 19);
  for (size_t k = 0; k < w.size(); ++k) {
    CHECK(w[k].start() == doctest::Approx(0.5 * k));
    CHECK(w[k].end() == doctest::Approx(0.5 * k + 1.0));
  }
}

TEST_CASE("window_speech count with zero tail and region containment") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double len = 0.05 + 12.0 * u(rng);
    const double seg = 0.3 + 3.0 * u(rng);
    const double hop = seg * (0.1 + 0.9 * u(rng));
    const double start = 5.0 * u(rng);
    std::vector<TimeInterval> r{TimeInterval(start, start + len)};
    auto w = WindowSpeech(r, WindowingConfig::Make(seg, hop, 0.0));
    // Count by enumerating starts directly.
    size_t expect = 1;
    while ((expect - 1) * hop + seg < len - 1e-9) ++expect;
    CHECK(w.size() == expect);
    CHECK(w.size() == static_cast<size_t>(std::ceil(std::max(len - seg, 0.0) / hop - 1e-9)) + 1);
    for (const auto &x : w) {
      CHECK(x.start() >= r[0].start());
      CHECK(x.end() <= r[0].end() + 1e-12);
    }
  }
}

TEST_CASE("window_speech respects min_tail and region boundaries") {
  std::vector<TimeInterval> r{TimeInterval(0, 2.1), TimeInterval(3, 3.2)};
  auto w = WindowSpeech(r, WindowingConfig::Make(1.0, 1.0, 0.5));
  // (0,1) (1,2) and the 0.1 s tail is dropped; the 0.2 s region gives nothing.
  REQUIRE(w.size() == 2);
  CHECK(w[1] == TimeInterval(1, 2));
  std::vector<TimeInterval> bad{TimeInterval(0, 2), TimeInterval(1, 3)};
  CHECK_THROWS_AS(WindowSpeech(bad, WindowingConfig::Make(1, 1)), ArgumentError);
  CHECK_THROWS_AS(WindowingConfig::Make(1.0, 2.0), ArgumentError);
  CHECK_THROWS_AS(WindowingConfig::Make(1.0, 0.0), ArgumentError);
  CHECK_THROWS_AS(WindowingConfig::Make(1.0, 0.5, -1.0), ArgumentError);
}

TEST_CASE("interval helpers") {
  auto m = MergeIntervals({TimeInterval(3, 4), TimeInterval(0, 1), TimeInterval(1, 2),
                           TimeInterval(3.5, 5)});
  REQUIRE(m.size() == 2);
  CHECK(m[0] == TimeInterval(0, 2));
  CHECK(m[1] == TimeInterval(3, 5));
  std::vector<TimeInterval> b{TimeInterval(1.5, 3.5)};
  auto x = IntersectIntervals(m, b);
  REQUIRE(x.size() == 2);
  CHECK(x[0] == TimeInterval(1.5, 2));
  CHECK(x[1] == TimeInterval(3, 3.5));
}
