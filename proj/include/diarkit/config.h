// include/diarkit/config.h

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

#ifndef DIARKIT_CONFIG_H_
#define DIARKIT_CONFIG_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "diarkit/frontend.h"
#include "diarkit/timeline.h"
#include "diarkit/vbhmm.h"

namespace diarkit {

struct AhcConfig {
  int gmm_iters = 100;
  // Fixed threshold; when unset it is derived from the score GMM.
  std::optional<double> threshold;
  // Upper bound on the derived threshold.  Keeps recordings with a single
  // speaker (unimodal scores) from being split.
  double max_threshold = 0.0;
};

struct PipelineConfig {
  std::vector<WindowingConfig> windowing = {WindowingConfig::Make(1.0, 0.5),
                                            WindowingConfig::Make(2.0, 1.0),
                                            WindowingConfig::Make(3.0, 1.5)};
  int lda_dim = 128;
  bool length_norm = true;
  double plda_alpha = 0.9;  // weight of the out-of-domain model
  int plda_iters = 10;
  AhcConfig ahc;
  bool resegment = true;
  VbhmmConfig vbhmm;
  bool assign_overlap = true;
  double ensemble_exponent = 0.1;
  double collar = 0.25;
  BinarizerConfig vad;
  BinarizerConfig osd;

  PipelineConfig();
  void Validate() const;
};

// Sets one "section.key" entry from its textual value.  Throws
// ArgumentError for unknown keys or unparsable values.
void SetConfigValue(PipelineConfig *cfg, const std::string &key,
                    const std::string &value);

// All keys accepted by SetConfigValue, in WriteConfig order.
std::vector<std::string> ConfigKeys();

// Flat "key = value" lines; '#' starts a comment, blank lines are ignored.
// Later lines override earlier ones.
void ReadConfig(std::istream &is, PipelineConfig *cfg);
PipelineConfig ReadConfigFile(const std::string &path);

// Every key with its current value, one per line, in a fixed order.
// ReadConfig of the output reproduces `cfg`.
void WriteConfig(std::ostream &os, const PipelineConfig &cfg);

// "1.0:0.5,2.0:1.0" or with explicit tails "1.0:0.5:0.25,...".
std::vector<WindowingConfig> ParseScales(const std::string &text);
std::string FormatScales(const std::vector<WindowingConfig> &scales);

}  // namespace diarkit

#endif  // DIARKIT_CONFIG_H_
