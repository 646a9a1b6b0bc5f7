// src/synth.cc

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

#include "diarkit/synth.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "diarkit/error.h"

namespace diarkit {

namespace {

// Independent stream per purpose so that e.g. adding a scale does not
// perturb the turn layout.
std::mt19937_64 Stream(std::uint64_t seed, std::uint64_t purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(purpose)};
  return std::mt19937_64(seq);
}

double Ms(double t) { return std::round(t * 1000.0) / 1000.0; }
double Quantize(double v, double step) { return std::round(v / step) * step; }

Eigen::VectorXd Gaussian(std::mt19937_64 &rng, int dim, double variance) {
  std::normal_distribution<double> n(0.0, std::sqrt(variance));
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = n(rng);
  return v;
}

// Smoothed indicator of `regions` sampled at frame centers.
PosteriorTrack RampTrack(const std::string &rec, double duration,
                         const std::vector<TimeInterval> &regions, double high,
                         double low, double half_width, double noise,
                         std::mt19937_64 &rng) {
  PosteriorTrack track;
  track.recording_id = rec;
  track.frame_rate = 100.0;
  const long frames = std::lround(duration * track.frame_rate);
  track.values.resize(frames);
  std::normal_distribution<double> jitter(0.0, noise);
  for (long k = 0; k < frames; ++k) {
    const double c = (k + 0.5) / track.frame_rate;
    bool inside = false;
    double dist = 1e30;
    for (const auto &r : regions) {
      if (c >= r.start() && c < r.end()) inside = true;
      dist = std::min({dist, std::abs(c - r.start()), std::abs(c - r.end())});
    }
    const double mid = 0.5 * (high + low);
    double v = inside ? high : low;
    if (dist < half_width) {
      const double s = 0.5 * (high - low) * dist / half_width;
      v = inside ? mid + s : mid - s;
    }
    v += jitter(rng);
    track.values[k] = Quantize(std::clamp(v, 0.0, 1.0), 1e-4);
  }
  return track;
}

}  // namespace

void SyntheticSpec::Validate() const {
  if (n_speakers < 1) throw ArgumentError("n_speakers must be >= 1");
  if (!(duration >= 5.0)) throw ArgumentError("duration must be >= 5 s");
  if (embed_dim < 1) throw ArgumentError("embed_dim must be >= 1");
  if (!(between_scale > 0.0 && within_scale > 0.0))
    throw ArgumentError("scales must be positive");
  if (!(turn_mean >= 1.0)) throw ArgumentError("turn_mean must be >= 1 s");
  if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0))
    throw ArgumentError("overlap_fraction must lie in [0, 1)");
  if (recording_id.empty() ||
      recording_id.find_first_of(" \t\n") != std::string::npos)
    throw ArgumentError("bad recording id");
}

SyntheticConversation SynthesizeConversation(
    const SyntheticSpec &spec, std::span<const WindowingConfig> scales) {
  spec.Validate();
  SyntheticConversation out;

  std::mt19937_64 mean_rng = Stream(spec.seed, 1);
  for (int s = 0; s < spec.n_speakers; ++s)
    out.speaker_means.push_back(Gaussian(mean_rng, spec.embed_dim, spec.between_scale));

  // Turn layout.
  std::mt19937_64 turn_rng = Stream(spec.seed, 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double min_turn = std::min(1.0, 0.5 * spec.turn_mean);
  std::exponential_distribution<double> tail(1.0 / (spec.turn_mean - min_turn));
  auto draw_len = [&] { return min_turn + tail(turn_rng); };
  const double stop = spec.duration - 0.5;

  std::vector<LabeledSegment> segs;
  double start = 0.5 + unit(turn_rng);
  double len = draw_len();
  int speaker = static_cast<int>(unit(turn_rng) * spec.n_speakers);
  while (true) {
    const double s = Ms(start);
    const double e = Ms(std::min(start + len, stop));
    if (e - s < 0.5) break;
    segs.push_back({TimeInterval(s, e), "S" + std::to_string(speaker)});
    if (e >= stop) break;
    const double next_len = draw_len();
    int next = speaker;
    if (spec.n_speakers > 1) {
      next = static_cast<int>(unit(turn_rng) * (spec.n_speakers - 1));
      if (next >= speaker) ++next;
    }
    if (spec.n_speakers > 1 && unit(turn_rng) < spec.overlap_fraction) {
      const double ov = std::min(0.5 + unit(turn_rng),
                                 0.5 * std::min(e - s, next_len));
      start = e - ov;
    } else {
      start = e + 0.2 + 0.8 * unit(turn_rng);
    }
    len = next_len;
    speaker = next;
  }
  out.truth = Hypothesis(spec.recording_id, std::move(segs));

  const std::vector<TimeInterval> speech = out.truth.SpeechRegions();
  std::vector<TimeInterval> overlap;
  {
    const auto spk = out.truth.Speakers();
    for (size_t a = 0; a < spk.size(); ++a)
      for (size_t b = a + 1; b < spk.size(); ++b) {
        auto both = IntersectIntervals(out.truth.SpeakerIntervals(spk[a]),
                                       out.truth.SpeakerIntervals(spk[b]));
        overlap.insert(overlap.end(), both.begin(), both.end());
      }
    overlap = MergeIntervals(std::move(overlap));
  }

  std::mt19937_64 post_rng = Stream(spec.seed, 3);
  out.vad.push_back(RampTrack(spec.recording_id, spec.duration, speech, 0.95,
                              0.05, 0.05, 0.02, post_rng));
  out.vad.push_back(RampTrack(spec.recording_id, spec.duration, speech, 0.95,
                              0.05, 0.15, 0.02, post_rng));
  out.osd = RampTrack(spec.recording_id, spec.duration, overlap, 0.9, 0.05,
                      0.05, 0.02, post_rng);

  std::vector<std::vector<TimeInterval>> per_speaker;
  for (int s = 0; s < spec.n_speakers; ++s)
    per_speaker.push_back(out.truth.SpeakerIntervals("S" + std::to_string(s)));

  for (size_t k = 0; k < scales.size(); ++k) {
    std::mt19937_64 rng = Stream(spec.seed, 100 + k);
    EmbeddingSequence seq;
    seq.recording_id = spec.recording_id;
    seq.dim = spec.embed_dim;
    std::vector<std::string> labels;
    for (const TimeInterval &w : WindowSpeech(speech, scales[k])) {
      std::vector<double> share(spec.n_speakers, 0.0);
      double total = 0.0;
      for (int s = 0; s < spec.n_speakers; ++s) {
        const TimeInterval *win = &w;
        share[s] = TotalDuration(
            IntersectIntervals(per_speaker[s], std::span<const TimeInterval>(win, 1)));
        total += share[s];
      }
      Eigen::VectorXd v = Eigen::VectorXd::Zero(spec.embed_dim);
      int best = 0;
      for (int s = 0; s < spec.n_speakers; ++s) {
        if (share[s] <= 0.0) continue;
        v += share[s] / total *
             (out.speaker_means[s] + Gaussian(rng, spec.embed_dim, spec.within_scale));
        if (share[s] > share[best]) best = s;
      }
      for (int i = 0; i < v.size(); ++i) v(i) = Quantize(v(i), 1e-6);
      seq.entries.push_back({w, v});
      labels.push_back("S" + std::to_string(best));
    }
    out.scales.push_back(std::move(seq));
    out.window_labels.push_back(std::move(labels));
  }
  return out;
}

EmbeddingSequence TrainingSet::AsSequence(const std::string &recording_id) const {
  EmbeddingSequence seq;
  seq.recording_id = recording_id;
  seq.dim = static_cast<int>(data.cols());
  for (Eigen::Index i = 0; i < data.rows(); ++i)
    seq.entries.push_back({TimeInterval(static_cast<double>(i), i + 1.0),
                           data.row(i).transpose()});
  return seq;
}

TrainingSet SynthesizeTrainingSet(int n_speakers, int per_speaker,
                                  const SyntheticSpec &spec, std::uint64_t seed,
                                  const std::string &prefix) {
  if (n_speakers < 2 || per_speaker < 1)
    throw ArgumentError("training set needs >= 2 speakers and >= 1 sample each");
  std::mt19937_64 rng = Stream(seed, 7);
  TrainingSet set;
  set.data.resize(static_cast<Eigen::Index>(n_speakers) * per_speaker, spec.embed_dim);
  Eigen::Index row = 0;
  for (int s = 0; s < n_speakers; ++s) {
    const Eigen::VectorXd mean = Gaussian(rng, spec.embed_dim, spec.between_scale);
    for (int j = 0; j < per_speaker; ++j, ++row) {
      Eigen::VectorXd v = mean + Gaussian(rng, spec.embed_dim, spec.within_scale);
      for (int i = 0; i < v.size(); ++i) v(i) = Quantize(v(i), 1e-6);
      set.data.row(row) = v.transpose();
      set.labels.push_back(prefix + std::to_string(s));
    }
  }
  return set;
}

}  // namespace diarkit
