// include/diarkit/pipeline.h

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

#ifndef DIARKIT_PIPELINE_H_
#define DIARKIT_PIPELINE_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "diarkit/ahc.h"
#include "diarkit/config.h"
#include "diarkit/embedding.h"
#include "diarkit/frontend.h"
#include "diarkit/lda.h"
#include "diarkit/plda.h"
#include "diarkit/timeline.h"

namespace diarkit {

// Back-end models applied to every recording.  `plda` lives in the LDA
// output space.
struct Models {
  LdaModel lda;
  PldaModel plda;
};

// LDA from the out-of-domain set; one PLDA per set in the projected space,
// interpolated with cfg.plda_alpha on the out-of-domain model.
Models TrainModels(const PipelineConfig &cfg, const Eigen::MatrixXd &ood_data,
                   std::span<const std::string> ood_labels,
                   const Eigen::MatrixXd &ind_data,
                   std::span<const std::string> ind_labels);

struct RecordingInputs {
  std::string recording_id;
  std::vector<PosteriorTrack> vad;    // fused by averaging
  std::optional<PosteriorTrack> osd;  // overlap detector, if any
  std::vector<EmbeddingSequence> scales;  // one per cfg.windowing entry
};

struct RecordingOutput {
  std::vector<TimeInterval> speech;
  std::vector<Hypothesis> per_scale;
  Hypothesis combined;
};

// Full chain for one recording.  When `dump_dir` is non-empty every
// intermediate artifact is written there (see README).  Errors come back
// as StageError naming the failing stage.
RecordingOutput RunRecording(const PipelineConfig &cfg, const Models &models,
                             const RecordingInputs &inputs,
                             const std::string &dump_dir = "");

// Clustering part of the chain on an already projected, speech-selected
// scale: PLDA scores, GMM threshold, AHC, optional VB-HMM.
struct ClusteringTrace {
  ScoreMatrix scores;
  double threshold = 0.0;
  ClusterAssignment ahc;
  ClusterAssignment final;
};
ClusteringTrace ClusterScale(const PipelineConfig &cfg, const PldaModel &plda,
                             const Eigen::MatrixXd &projected);

// Windows of `seq` that overlap `speech` by a positive amount.
EmbeddingSequence SelectSpeechWindows(const EmbeddingSequence &seq,
                                      std::span<const TimeInterval> speech);

struct CorpusRun {
  std::map<std::string, RecordingOutput> outputs;
  std::map<std::string, std::string> failures;  // recording -> message
  int exit_code = 0;  // worst exit code among failures
};

// Recordings run concurrently; a failure is recorded and the rest carry on.
CorpusRun RunCorpus(const PipelineConfig &cfg, const Models &models,
                    std::span<const RecordingInputs> inputs,
                    const std::string &dump_dir = "");

// "SEG v1 <recording_id> <count>" then "start end" per line.
std::vector<TimeInterval> ReadSegments(std::istream &is, std::string *recording_id);
void WriteSegments(std::ostream &os, const std::string &recording_id,
                   std::span<const TimeInterval> segments);

}  // namespace diarkit

#endif  // DIARKIT_PIPELINE_H_
