// include/diarkit/lda.h

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

#ifndef DIARKIT_LDA_H_
#define DIARKIT_LDA_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "diarkit/embedding.h"

namespace diarkit {

// Linear projection y = projection * (x - mean).
struct LdaModel {
  Eigen::VectorXd mean;
  Eigen::MatrixXd projection;  // output_dim x input_dim

  int InputDim() const { return static_cast<int>(projection.cols()); }
  int OutputDim() const { return static_cast<int>(projection.rows()); }
};

struct LdaReport {
  int requested_dim = 0;
  int output_dim = 0;
  bool clamped = false;
  // Generalized eigenvalues of the kept directions, descending.
  std::vector<double> eigenvalues;
};

// Fisher LDA.  `data` holds one sample per row, `labels` the class of each
// row.  Rows of the projection are the leading generalized eigenvectors of
// (S_between, S_within + lambda I) with lambda = 1e-6 trace(S_within) / dim,
// scaled to unit norm in that metric; the first non-negligible coordinate
// of every row is positive.  output_dim is clamped to
// min(input_dim, n_classes - 1) and the clamp reported through `report`.
LdaModel TrainLda(const Eigen::MatrixXd &data,
                  std::span<const std::string> labels, int output_dim,
                  LdaReport *report = nullptr);

// Projects every vector and, when `length_norm` is set, rescales it to unit
// Euclidean norm.  Throws ArgumentError on dimension mismatch or when a
// projected vector is zero and cannot be normalized.
EmbeddingSequence Project(const LdaModel &model, const EmbeddingSequence &seq,
                          bool length_norm = true);
Eigen::MatrixXd Project(const LdaModel &model, const Eigen::MatrixXd &rows,
                        bool length_norm = true);

// "LDA v1 <input_dim> <output_dim>", the mean on one line, then one line
// per projection row.
LdaModel ReadLda(std::istream &is);
void WriteLda(std::ostream &os, const LdaModel &model);

}  // namespace diarkit

#endif  // DIARKIT_LDA_H_
