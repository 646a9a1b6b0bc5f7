// include/diarkit/vbhmm.h

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

#ifndef DIARKIT_VBHMM_H_
#define DIARKIT_VBHMM_H_

// Variational Bayes HMM resegmentation of embedding sequences (VBx style).
// HMM states are speakers; each speaker has a latent vector with a
// standard normal prior in the PLDA latent basis, and frame emissions are
// the expected PLDA log-likelihood under the speaker's variational
// posterior, scaled by `fa`.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "diarkit/ahc.h"
#include "diarkit/embedding.h"
#include "diarkit/plda.h"
#include "diarkit/timeline.h"

namespace diarkit {

struct VbhmmConfig {
  double loop_p = 0.99;       // self-transition probability
  double fa = 0.3;            // acoustic scale
  double fb = 17.0;           // speaker-prior scale
  int max_iters = 40;
  double elbo_tol = 1e-6;     // stop when the ELBO gain is smaller
  double min_occupancy = 1.0; // frames; lighter speakers are pruned
  double min_phi = 1e-6;      // latent dims with smaller variance are dropped

  void Validate() const;
};

struct ForwardBackwardResult {
  Eigen::MatrixXd gamma;      // T x S posteriors
  Eigen::MatrixXd log_alpha;  // T x S
  Eigen::MatrixXd log_beta;   // T x S
  double log_px = 0.0;
};

// Forward-backward for the speaker HMM: initial distribution `pi`,
// transitions loop_p * I + (1 - loop_p) * 1 pi^T.  O(T S) per pass.
ForwardBackwardResult ForwardBackward(const Eigen::MatrixXd &log_emissions,
                                      const Eigen::VectorXd &pi, double loop_p);

// Snapshot handed to an observer after each forward-backward pass.
struct VbhmmIteration {
  int iteration;
  const Eigen::MatrixXd &rho;    // T x D scaled latent features
  const Eigen::VectorXd &phi;    // D
  const Eigen::MatrixXd &gamma;  // posteriors from this pass
  const Eigen::VectorXd &pi;     // prior used in this pass
  const Eigen::MatrixXd &alpha;  // S x D speaker posterior means
  const Eigen::MatrixXd &inv_l;  // S x D speaker posterior variances
  double elbo;
};
using VbhmmObserver = std::function<void(const VbhmmIteration &)>;

struct VbhmmResult {
  ClusterAssignment assignment;
  Eigen::MatrixXd gamma;  // T x S_out, columns follow assignment labels
  std::vector<double> elbo;
  Eigen::VectorXd pi;     // S_out, renormalized
  int iterations = 0;
  bool converged = false;
};

// Refines `init` by VB inference.  Throws ArgumentError on empty input or
// a length mismatch, NumericError when the ELBO becomes non-finite.
VbhmmResult Resegment(const Eigen::MatrixXd &embeddings,
                      const ClusterAssignment &init, const PldaModel &plda,
                      const VbhmmConfig &cfg,
                      const VbhmmObserver &observer = {});
VbhmmResult Resegment(const EmbeddingSequence &embeddings,
                      const ClusterAssignment &init, const PldaModel &plda,
                      const VbhmmConfig &cfg,
                      const VbhmmObserver &observer = {});

// Turns per-window labels into speaker segments.  Overlapping neighbours
// split their overlap at its midpoint; same-label pieces are merged.
// Speaker names are `prefix` followed by the cluster index.
Hypothesis ToHypothesis(const ClusterAssignment &assignment,
                        std::span<const TimeInterval> windows,
                        const std::string &recording_id,
                        const std::string &prefix = "spk");

}  // namespace diarkit

#endif  // DIARKIT_VBHMM_H_
