// include/diarkit/embedding.h

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

#ifndef DIARKIT_EMBEDDING_H_
#define DIARKIT_EMBEDDING_H_

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "diarkit/timeline.h"

namespace diarkit {

struct EmbeddingEntry {
  TimeInterval interval;
  Eigen::VectorXd vector;
};

// Time-stamped fixed-dimension speaker embeddings of one recording.
struct EmbeddingSequence {
  std::string recording_id;
  int dim = 0;
  std::vector<EmbeddingEntry> entries;

  // Throws ArgumentError unless all vectors have `dim` finite entries and
  // intervals are sorted by start.
  void Validate() const;
  size_t size() const { return entries.size(); }
  // One row per entry.
  Eigen::MatrixXd Matrix() const;
  std::vector<TimeInterval> Windows() const;
};

// "EMB v1 <recording_id> <dim> <count>" then "start end v1 ... v_dim".
EmbeddingSequence ReadEmbeddings(std::istream &is);
void WriteEmbeddings(std::ostream &os, const EmbeddingSequence &seq);

// "LBL v1 <count>" then one speaker label per line.
std::vector<std::string> ReadLabels(std::istream &is);
void WriteLabels(std::ostream &os, const std::vector<std::string> &labels);

}  // namespace diarkit

#endif  // DIARKIT_EMBEDDING_H_
