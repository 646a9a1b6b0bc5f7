// include/diarkit/metrics.h

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

#ifndef DIARKIT_METRICS_H_
#define DIARKIT_METRICS_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "diarkit/timeline.h"

namespace diarkit {

struct DerBreakdown {
  double missed = 0.0;           // seconds
  double false_alarm = 0.0;      // seconds
  double confusion = 0.0;        // seconds
  double total_reference = 0.0;  // scored reference speaker-time
  double der = 0.0;              // percent
  // Set when total_reference is zero: der is then 0 for an empty
  // hypothesis and 100 if the hypothesis has any scored speech.
  bool degenerate = false;

  double errors() const { return missed + false_alarm + confusion; }
};

struct JerResult {
  std::map<std::string, double> per_speaker;  // percent
  double jer = 0.0;                           // percent, unweighted mean
};

// Maximum-weight one-to-one assignment (Hungarian algorithm).  Returns,
// for every row, the matched column or -1.  Rows and columns are taken in
// index order, which makes the result deterministic.
std::vector<int> MaxWeightAssignment(const Eigen::MatrixXd &weights);

// Overlap-aware DER.  Reference boundaries are surrounded by a +-collar
// no-score zone; speakers are mapped one-to-one to maximize scored
// overlap.  Each scored stretch of duration d with N_ref reference and
// N_hyp hypothesis speakers, N_corr of them correctly mapped, contributes
//   missed      d * max(0, N_ref - N_hyp)
//   false alarm d * max(0, N_hyp - N_ref)
//   confusion   d * (min(N_ref, N_hyp) - N_corr).
DerBreakdown ComputeDer(const Hypothesis &reference, const Hypothesis &hypothesis,
                        double collar);

// Per reference speaker 100 * (1 - |r n h| / |r u h|) under the collar-0
// DER mapping; unmapped speakers score 100.
JerResult ComputeJer(const Hypothesis &reference, const Hypothesis &hypothesis);

// Brute-force counterpart of ComputeDer on a uniform frame grid (frame
// centers decide membership; the mapping is found by exhaustive subset
// search).  Used to validate ComputeDer.
DerBreakdown FrameDerOracle(const Hypothesis &reference,
                            const Hypothesis &hypothesis, double collar,
                            double grid);

struct CorpusScore {
  DerBreakdown pooled;      // durations summed over recordings
  double mean_der = 0.0;    // unweighted mean of per-recording DER
  double mean_jer = 0.0;    // unweighted mean of per-recording JER
};

CorpusScore AggregateScores(std::span<const DerBreakdown> ders,
                            std::span<const JerResult> jers);

}  // namespace diarkit

#endif  // DIARKIT_METRICS_H_
