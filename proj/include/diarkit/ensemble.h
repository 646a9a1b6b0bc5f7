// include/diarkit/ensemble.h

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

#ifndef DIARKIT_ENSEMBLE_H_
#define DIARKIT_ENSEMBLE_H_

// DOVER-Lap: rank-weighted, overlap-aware combination of diarization
// hypotheses of the same recording.

#include <span>
#include <string>
#include <vector>

#include "diarkit/timeline.h"

namespace diarkit {

struct RankedHypothesis {
  Hypothesis hypothesis;
  double weight = 1.0;
};

// Ranks hypotheses by their mean DER (collar 0) against all the others,
// rank 1 = lowest; tied hypotheses share the mean of their ranks.  Weights
// are rank^-exponent normalized to sum to one, in input order.
std::vector<RankedHypothesis> RankWeights(std::span<const Hypothesis> hyps,
                                          double exponent);

// Relabels all hypotheses into one global label space with the greedy
// maximal-overlap rule.  Output is in input order.  Processing order
// (weight descending, then content) does not depend on input order.
std::vector<Hypothesis> MapLabels(std::span<const RankedHypothesis> ranked);

// Weighted voting over the elementary regions of all inputs.  Labels must
// already share one label space (see MapLabels).
Hypothesis DoverlapCombine(std::span<const RankedHypothesis> ranked);

// RankWeights, MapLabels and DoverlapCombine in sequence.  A single input
// is returned unchanged.
Hypothesis Doverlap(std::span<const Hypothesis> hyps, double exponent);

}  // namespace diarkit

#endif  // DIARKIT_ENSEMBLE_H_
