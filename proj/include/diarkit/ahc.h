// include/diarkit/ahc.h

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

#ifndef DIARKIT_AHC_H_
#define DIARKIT_AHC_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "diarkit/plda.h"

namespace diarkit {

// Two-component 1-D Gaussian mixture with a shared variance.
struct TiedGmm1d {
  double mean_low = 0.0;
  double mean_high = 0.0;
  double weight_high = 0.5;
  double sigma2 = 1.0;

  double weight_low() const { return 1.0 - weight_high; }
};

// Total log-likelihood of `scores`.
double TiedGmmLogLikelihood(const TiedGmm1d &gmm, std::span<const double> scores);

// Posterior responsibility of the high component at `x`.
double TiedGmmPosteriorHigh(const TiedGmm1d &gmm, double x);

// EM from a deterministic start (means at the 10th / 90th percentiles,
// equal weights, pooled variance).  Stops after `iters` iterations or when
// the relative log-likelihood gain drops below 1e-12.  The variance is
// floored at 1e-6 of the sample variance.  `seed` is accepted for
// interface stability; initialization does not consume randomness.
// Throws ArgumentError when fewer than two distinct values are given.
TiedGmm1d FitTiedGmm(std::span<const double> scores, int iters,
                     std::uint64_t seed = 0,
                     std::vector<double> *loglik_trace = nullptr);

// Score at which both components have equal posterior responsibility.
// Throws NumericError if the means coincide.
double DeriveThreshold(const TiedGmm1d &gmm);

// Off-diagonal upper-triangle entries, row-major.
std::vector<double> UpperTriangle(const ScoreMatrix &scores);

struct ClusterAssignment {
  std::vector<int> labels;
  int n_clusters = 0;

  friend bool operator==(const ClusterAssignment &,
                         const ClusterAssignment &) = default;
};

// Relabels so that cluster ids appear in order of first occurrence.
ClusterAssignment Canonicalize(std::span<const int> labels);

// Average-linkage agglomerative clustering on a similarity matrix.  Merges
// the pair of clusters with the highest mean inter-cluster score until the
// best score drops below `threshold`.  Clusters are identified by their
// smallest member; ties go to the lexicographically smallest pair.
ClusterAssignment AhcCluster(const ScoreMatrix &scores, double threshold);

// "LABELS v1 <recording_id> <count> <n_clusters>" then one label per line.
ClusterAssignment ReadAssignment(std::istream &is, std::string *recording_id);
void WriteAssignment(std::ostream &os, const ClusterAssignment &a,
                     const std::string &recording_id);

}  // namespace diarkit

#endif  // DIARKIT_AHC_H_
