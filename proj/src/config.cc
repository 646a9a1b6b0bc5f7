// src/config.cc

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

#include "diarkit/config.h"

#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "diarkit/error.h"
#include "diarkit/textio.h"

namespace diarkit {

namespace {

std::string Trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double ToReal(const std::string &key, const std::string &v) {
  try {
    return ParseReal(v, 0);
  } catch (const ParseError &) {
    throw ArgumentError("config key '" + key + "': not a number: '" + v + "'");
  }
}

int ToInt(const std::string &key, const std::string &v) {
  try {
    return static_cast<int>(ParseInt(v, 0));
  } catch (const ParseError &) {
    throw ArgumentError("config key '" + key + "': not an integer: '" + v + "'");
  }
}

bool ToBool(const std::string &key, const std::string &v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ArgumentError("config key '" + key + "': not a boolean: '" + v + "'");
}

struct Field {
  std::function<void(PipelineConfig *, const std::string &, const std::string &)> set;
  std::function<std::string(const PipelineConfig &)> get;
};

#define REAL_FIELD(name, member)                                             \
  {name,                                                                     \
   {[](PipelineConfig *c, const std::string &k, const std::string &v) {      \
      c->member = ToReal(k, v);                                              \
    },                                                                       \
    [](const PipelineConfig &c) { return FormatReal(c.member); }}}
#define INT_FIELD(name, member)                                              \
  {name,                                                                     \
   {[](PipelineConfig *c, const std::string &k, const std::string &v) {      \
      c->member = ToInt(k, v);                                               \
    },                                                                       \
    [](const PipelineConfig &c) { return std::to_string(c.member); }}}
#define BOOL_FIELD(name, member)                                             \
  {name,                                                                     \
   {[](PipelineConfig *c, const std::string &k, const std::string &v) {      \
      c->member = ToBool(k, v);                                              \
    },                                                                       \
    [](const PipelineConfig &c) {                                            \
      return std::string(c.member ? "true" : "false");                      \
    }}}

// Ordered so that WriteConfig output is stable.
const std::vector<std::pair<std::string, Field>> &Fields() {
  static const std::vector<std::pair<std::string, Field>> fields = {
      {"windowing.scales",
       {[](PipelineConfig *c, const std::string &, const std::string &v) {
          c->windowing = ParseScales(v);
        },
        [](const PipelineConfig &c) { return FormatScales(c.windowing); }}},
      INT_FIELD("lda.dim", lda_dim),
      BOOL_FIELD("lda.length_norm", length_norm),
      REAL_FIELD("plda.alpha", plda_alpha),
      INT_FIELD("plda.iters", plda_iters),
      INT_FIELD("ahc.gmm_iters", ahc.gmm_iters),
      {"ahc.threshold",
       {[](PipelineConfig *c, const std::string &k, const std::string &v) {
          if (v == "auto")
            c->ahc.threshold.reset();
          else
            c->ahc.threshold = ToReal(k, v);
        },
        [](const PipelineConfig &c) {
          return c.ahc.threshold ? FormatReal(*c.ahc.threshold)
                                 : std::string("auto");
        }}},
      REAL_FIELD("ahc.max_threshold", ahc.max_threshold),
      BOOL_FIELD("vbhmm.enabled", resegment),
      REAL_FIELD("vbhmm.loop_p", vbhmm.loop_p),
      REAL_FIELD("vbhmm.fa", vbhmm.fa),
      REAL_FIELD("vbhmm.fb", vbhmm.fb),
      INT_FIELD("vbhmm.max_iters", vbhmm.max_iters),
      REAL_FIELD("vbhmm.elbo_tol", vbhmm.elbo_tol),
      REAL_FIELD("vbhmm.min_occupancy", vbhmm.min_occupancy),
      REAL_FIELD("vbhmm.min_phi", vbhmm.min_phi),
      BOOL_FIELD("overlap.enabled", assign_overlap),
      REAL_FIELD("ensemble.exponent", ensemble_exponent),
      REAL_FIELD("score.collar", collar),
      REAL_FIELD("vad.onset", vad.onset),
      REAL_FIELD("vad.offset", vad.offset),
      REAL_FIELD("vad.min_on", vad.min_on),
      REAL_FIELD("vad.min_off", vad.min_off),
      REAL_FIELD("vad.pad", vad.pad),
      REAL_FIELD("osd.onset", osd.onset),
      REAL_FIELD("osd.offset", osd.offset),
      REAL_FIELD("osd.min_on", osd.min_on),
      REAL_FIELD("osd.min_off", osd.min_off),
      REAL_FIELD("osd.pad", osd.pad),
  };
  return fields;
}

#undef REAL_FIELD
#undef INT_FIELD
#undef BOOL_FIELD

}  // namespace

PipelineConfig::PipelineConfig() {
  vad.min_on = 0.1;
  vad.min_off = 0.1;
  osd.min_on = 0.1;
  osd.min_off = 0.1;
}

void PipelineConfig::Validate() const {
  if (windowing.empty()) throw ArgumentError("windowing.scales is empty");
  for (const auto &w : windowing) w.Validate();
  if (lda_dim < 1) throw ArgumentError("lda.dim must be >= 1");
  if (!(plda_alpha >= 0.0 && plda_alpha <= 1.0))
    throw ArgumentError("plda.alpha must lie in [0, 1]");
  if (plda_iters < 0) throw ArgumentError("plda.iters must be >= 0");
  if (ahc.gmm_iters < 1) throw ArgumentError("ahc.gmm_iters must be >= 1");
  vbhmm.Validate();
  if (!(ensemble_exponent > 0.0))
    throw ArgumentError("ensemble.exponent must be positive");
  if (!(collar >= 0.0)) throw ArgumentError("score.collar must be >= 0");
  vad.Validate();
  osd.Validate();
}

std::vector<WindowingConfig> ParseScales(const std::string &text) {
  std::vector<WindowingConfig> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    std::vector<double> parts;
    std::stringstream is(item);
    std::string p;
    while (std::getline(is, p, ':')) parts.push_back(ToReal("windowing.scales", Trim(p)));
    if (parts.size() == 2)
      out.push_back(WindowingConfig::Make(parts[0], parts[1]));
    else if (parts.size() == 3)
      out.push_back(WindowingConfig::Make(parts[0], parts[1], parts[2]));
    else
      throw ArgumentError("windowing.scales: expected seg:hop[:tail], got '" +
                          item + "'");
    out.back().Validate();
  }
  if (out.empty()) throw ArgumentError("windowing.scales is empty");
  return out;
}

std::string FormatScales(const std::vector<WindowingConfig> &scales) {
  std::string out;
  for (size_t i = 0; i < scales.size(); ++i) {
    if (i) out += ',';
    out += FormatReal(scales[i].segment_len) + ':' + FormatReal(scales[i].hop_len) +
           ':' + FormatReal(scales[i].min_tail);
  }
  return out;
}

void SetConfigValue(PipelineConfig *cfg, const std::string &key,
                    const std::string &value) {
  for (const auto &[name, field] : Fields()) {
    if (name == key) {
      field.set(cfg, key, Trim(value));
      return;
    }
  }
  throw ArgumentError("unknown config key '" + key + "'");
}

std::vector<std::string> ConfigKeys() {
  std::vector<std::string> keys;
  for (const auto &f : Fields()) keys.push_back(f.first);
  return keys;
}

void ReadConfig(std::istream &is, PipelineConfig *cfg) {
  std::string line;
  int n = 0;
  while (std::getline(is, line)) {
    ++n;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value': '" + line + "'", n);
    try {
      SetConfigValue(cfg, Trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ArgumentError &e) {
      throw ParseError(e.what(), n);
    }
  }
}

PipelineConfig ReadConfigFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open config '" + path + "'");
  PipelineConfig cfg;
  ReadConfig(in, &cfg);
  return cfg;
}

void WriteConfig(std::ostream &os, const PipelineConfig &cfg) {
  for (const auto &[name, field] : Fields()) os << name << " = " << field.get(cfg) << '\n';
}

}  // namespace diarkit
