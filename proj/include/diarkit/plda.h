// include/diarkit/plda.h

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

#ifndef DIARKIT_PLDA_H_
#define DIARKIT_PLDA_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace diarkit {

// Two-covariance PLDA: speaker latent y ~ N(mu, B), observation
// x | y ~ N(y, W).
struct PldaModel {
  Eigen::VectorXd mu;
  Eigen::MatrixXd between;  // B, symmetric PSD
  Eigen::MatrixXd within;   // W, symmetric PD

  int Dim() const { return static_cast<int>(mu.size()); }
  // Throws ArgumentError on inconsistent shapes or asymmetry, NumericError
  // when W is not PD or B has a clearly negative eigenvalue.
  void Validate() const;
};

// Basis in which W = I and B = diag(phi).  u = transform * (x - mu).
struct PldaLatentBasis {
  Eigen::VectorXd mu;
  Eigen::MatrixXd transform;  // kept_dim x dim
  Eigen::VectorXd phi;        // kept_dim, descending, >= 0

  Eigen::MatrixXd Apply(const Eigen::MatrixXd &rows) const;  // rows -> rows
};

// Simultaneous diagonalization of (W, B).  Directions with phi <= min_phi
// are dropped; pass a negative min_phi to keep all of them (negative
// round-off is clamped to 0).
PldaLatentBasis DiagonalizePlda(const PldaModel &model, double min_phi);

struct ScoreMatrix {
  Eigen::MatrixXd values;  // symmetric n x n

  Eigen::Index n() const { return values.rows(); }
};

// EM for the two-covariance model.  `data` has one sample per row.
// `loglik_trace`, when given, receives the total log-likelihood of the
// initial model followed by one value per iteration.  Throws
// ArgumentError on bad input and NumericError when W cannot be kept
// positive definite with eps = 1e-6 trace(W) / dim.
PldaModel TrainPlda(const Eigen::MatrixXd &data,
                    std::span<const std::string> labels, int iters,
                    std::vector<double> *loglik_trace = nullptr);

// Total log-likelihood of the grouped data under `model`.
double PldaLogLikelihood(const PldaModel &model, const Eigen::MatrixXd &data,
                         std::span<const std::string> labels);

// alpha * a + (1 - alpha) * b on mu, B and W.
PldaModel InterpolatePlda(const PldaModel &a, const PldaModel &b, double alpha);

// Same-vs-different speaker log-likelihood ratio for every pair of rows.
ScoreMatrix PldaScoreMatrix(const PldaModel &model, const Eigen::MatrixXd &rows);
double PldaPairScore(const PldaModel &model, const Eigen::VectorXd &x1,
                     const Eigen::VectorXd &x2);

// "PLDA v1 <dim>", mu on one line, then dim rows of B and dim rows of W.
PldaModel ReadPlda(std::istream &is);
void WritePlda(std::ostream &os, const PldaModel &model);

// "SCORES v1 <n>" then n rows.
ScoreMatrix ReadScores(std::istream &is);
void WriteScores(std::ostream &os, const ScoreMatrix &scores);

}  // namespace diarkit

#endif  // DIARKIT_PLDA_H_
