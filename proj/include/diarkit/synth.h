// include/diarkit/synth.h

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

#ifndef DIARKIT_SYNTH_H_
#define DIARKIT_SYNTH_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "diarkit/embedding.h"
#include "diarkit/frontend.h"
#include "diarkit/timeline.h"

namespace diarkit {

// Seeded synthetic conversation.  Variances, not standard deviations:
// speaker means ~ N(0, between_scale I), window noise ~ N(0, within_scale I).
struct SyntheticSpec {
  int n_speakers = 3;
  double duration = 120.0;  // seconds
  int embed_dim = 32;
  double between_scale = 1.0;
  double within_scale = 0.05;
  double turn_mean = 12.0;        // seconds
  double overlap_fraction = 0.1;  // chance that a speaker change overlaps
  std::uint64_t seed = 0;
  std::string recording_id = "synth";

  void Validate() const;
};

struct SyntheticConversation {
  Hypothesis truth;
  std::vector<PosteriorTrack> vad;  // two detectors with different ramps
  PosteriorTrack osd;
  std::vector<EmbeddingSequence> scales;  // one per windowing config
  // Per scale and window, the speaker holding most of the window.
  std::vector<std::vector<std::string>> window_labels;
  std::vector<Eigen::VectorXd> speaker_means;
};

// Turns have length min_turn + Exp(turn_mean - min_turn) with
// min_turn = min(1, turn_mean / 2), so their mean is turn_mean.  Each
// speaker change overlaps with probability overlap_fraction (by 0.5 to
// 1.5 s, at most half the shorter turn) and otherwise leaves a 0.2 to
// 1.0 s pause.  Times are quantized to milliseconds.
SyntheticConversation SynthesizeConversation(
    const SyntheticSpec &spec, std::span<const WindowingConfig> scales);

struct TrainingSet {
  Eigen::MatrixXd data;  // one sample per row
  std::vector<std::string> labels;

  EmbeddingSequence AsSequence(const std::string &recording_id) const;
};

// `n_speakers` fresh speakers with `per_speaker` samples each, drawn like
// the conversation embeddings.  `prefix` names the speakers.
TrainingSet SynthesizeTrainingSet(int n_speakers, int per_speaker,
                                  const SyntheticSpec &spec,
                                  std::uint64_t seed, const std::string &prefix);

}  // namespace diarkit

#endif  // DIARKIT_SYNTH_H_
