// src/lda.cc

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

#include "diarkit/lda.h"

#include <istream>
#include <map>
#include <ostream>

#include "diarkit/error.h"
#include "diarkit/linalg.h"
#include "diarkit/textio.h"

namespace diarkit {

LdaModel TrainLda(const Eigen::MatrixXd &data,
                  std::span<const std::string> labels, int output_dim,
                  LdaReport *report) {
  const Eigen::Index n = data.rows(), dim = data.cols();
  if (static_cast<size_t>(n) != labels.size())
    throw ArgumentError("LDA: label count does not match sample count");
  if (output_dim <= 0) throw ArgumentError("LDA: output_dim must be positive");

  std::map<std::string, std::vector<Eigen::Index>> classes;
  for (Eigen::Index i = 0; i < n; ++i) classes[labels[i]].push_back(i);
  if (classes.size() < 2) throw ArgumentError("LDA needs at least 2 classes");
  for (const auto &[label, rows] : classes)
    if (rows.size() < 2)
      throw ArgumentError("LDA: class '" + label + "' has fewer than 2 samples");

  const Eigen::VectorXd mean = data.colwise().mean().transpose();
  Eigen::MatrixXd within = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd between = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto &[label, rows] : classes) {
    Eigen::VectorXd class_mean = Eigen::VectorXd::Zero(dim);
    for (auto r : rows) class_mean += data.row(r).transpose();
    class_mean /= static_cast<double>(rows.size());
    for (auto r : rows) {
      Eigen::VectorXd d = data.row(r).transpose() - class_mean;
      within.noalias() += d * d.transpose();
    }
    Eigen::VectorXd dm = class_mean - mean;
    between.noalias() += static_cast<double>(rows.size()) * dm * dm.transpose();
  }
  within /= static_cast<double>(n);
  between /= static_cast<double>(n);

  const double lambda = 1e-6 * within.trace() / dim;
  Eigen::MatrixXd metric =
      within + lambda * Eigen::MatrixXd::Identity(dim, dim);
  auto eig = GeneralizedEigen(between, metric);  // descending, metric-unit
  if (!eig) throw NumericError("LDA: within-class scatter is singular");

  const int max_dim = static_cast<int>(
      std::min<Eigen::Index>(dim, static_cast<Eigen::Index>(classes.size()) - 1));
  const int out_dim = std::min(output_dim, max_dim);

  LdaModel model;
  model.mean = mean;
  model.projection.resize(out_dim, dim);
  for (int k = 0; k < out_dim; ++k)
    model.projection.row(k) = eig->vectors.col(k).transpose();

  if (report) {
    report->requested_dim = output_dim;
    report->output_dim = out_dim;
    report->clamped = out_dim < output_dim;
    report->eigenvalues.assign(eig->values.data(), eig->values.data() + out_dim);
  }
  return model;
}

Eigen::MatrixXd Project(const LdaModel &model, const Eigen::MatrixXd &rows,
                        bool length_norm) {
  if (rows.cols() != model.InputDim())
    throw ArgumentError("LDA: input dimension " + std::to_string(rows.cols()) +
                        " does not match model dimension " +
                        std::to_string(model.InputDim()));
  Eigen::MatrixXd out =
      (rows.rowwise() - model.mean.transpose()) * model.projection.transpose();
  if (length_norm) {
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      double norm = out.row(i).norm();
      if (!(norm > 0.0) || !std::isfinite(norm))
        throw ArgumentError("cannot length-normalize a zero vector (row " +
                            std::to_string(i) + ")");
      out.row(i) /= norm;
    }
  }
  return out;
}

EmbeddingSequence Project(const LdaModel &model, const EmbeddingSequence &seq,
                          bool length_norm) {
  if (seq.dim != model.InputDim())
    throw ArgumentError("LDA: embedding dimension " + std::to_string(seq.dim) +
                        " does not match model dimension " +
                        std::to_string(model.InputDim()));
  Eigen::MatrixXd projected = Project(model, seq.Matrix(), length_norm);
  EmbeddingSequence out;
  out.recording_id = seq.recording_id;
  out.dim = model.OutputDim();
  out.entries.reserve(seq.size());
  for (size_t i = 0; i < seq.size(); ++i)
    out.entries.push_back({seq.entries[i].interval, projected.row(i).transpose()});
  return out;
}

LdaModel ReadLda(std::istream &is) {
  LineReader reader(is);
  auto header = ReadHeader(reader, "LDA", 4);
  long long in_dim = ParseInt(header[2], reader.line());
  long long out_dim = ParseInt(header[3], reader.line());
  if (in_dim <= 0 || out_dim <= 0 || out_dim > in_dim)
    throw ParseError("LDA dimensions must satisfy 0 < output_dim <= input_dim",
                     reader.line());
  LdaModel model;
  model.mean = ReadVectorLine(reader, in_dim, "LDA mean");
  model.projection = ReadMatrixRows(reader, out_dim, in_dim, "LDA projection");
  return model;
}

void WriteLda(std::ostream &os, const LdaModel &model) {
  os << "LDA v1 " << model.InputDim() << ' ' << model.OutputDim() << '\n';
  WriteVectorLine(os, model.mean);
  WriteMatrixRows(os, model.projection);
}

}  // namespace diarkit
