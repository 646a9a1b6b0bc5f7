// src/pipeline.cc

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

#include "diarkit/pipeline.h"

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>

#include "diarkit/ensemble.h"
#include "diarkit/error.h"
#include "diarkit/overlap.h"
#include "diarkit/textio.h"
#include "diarkit/vbhmm.h"

namespace diarkit {

namespace {

template <class F>
auto InStage(const std::string &stage, F &&f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError &) {
    throw;
  } catch (const Error &e) {
    throw StageError(stage, e);
  }
}

class Dumper {
 public:
  Dumper(const std::string &dir, const std::string &rec) : dir_(dir), rec_(rec) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
  }
  bool on() const { return !dir_.empty(); }

  template <class W>
  void Write(const std::string &suffix, W &&writer) const {
    if (!on()) return;
    const auto path = std::filesystem::path(dir_) / (rec_ + suffix);
    std::ofstream out(path);
    writer(out);
    if (!out) throw ArgumentError("cannot write " + path.string());
  }

 private:
  std::string dir_;
  std::string rec_;
};

Hypothesis ClipToSpeech(const Hypothesis &hyp, std::span<const TimeInterval> speech) {
  std::vector<LabeledSegment> segs;
  for (const auto &spk : hyp.Speakers())
    for (const auto &iv : IntersectIntervals(hyp.SpeakerIntervals(spk), speech))
      segs.push_back({iv, spk});
  return Hypothesis(hyp.recording_id(), std::move(segs));
}

}  // namespace

Models TrainModels(const PipelineConfig &cfg, const Eigen::MatrixXd &ood_data,
                   std::span<const std::string> ood_labels,
                   const Eigen::MatrixXd &ind_data,
                   std::span<const std::string> ind_labels) {
  Models m;
  m.lda = InStage("train-lda", [&] { return TrainLda(ood_data, ood_labels, cfg.lda_dim); });
  PldaModel ood = InStage("train-plda", [&] {
    return TrainPlda(Project(m.lda, ood_data, cfg.length_norm), ood_labels, cfg.plda_iters);
  });
  if (ind_data.rows() == 0) {
    m.plda = ood;
    return m;
  }
  PldaModel ind = InStage("train-plda", [&] {
    return TrainPlda(Project(m.lda, ind_data, cfg.length_norm), ind_labels, cfg.plda_iters);
  });
  m.plda = InStage("interp-plda", [&] { return InterpolatePlda(ood, ind, cfg.plda_alpha); });
  return m;
}

EmbeddingSequence SelectSpeechWindows(const EmbeddingSequence &seq,
                                      std::span<const TimeInterval> speech) {
  EmbeddingSequence out;
  out.recording_id = seq.recording_id;
  out.dim = seq.dim;
  for (const auto &e : seq.entries) {
    const TimeInterval *w = &e.interval;
    if (TotalDuration(IntersectIntervals(std::span<const TimeInterval>(w, 1), speech)) > 0.0)
      out.entries.push_back(e);
  }
  return out;
}

ClusteringTrace ClusterScale(const PipelineConfig &cfg, const PldaModel &plda,
                             const Eigen::MatrixXd &projected) {
  if (projected.rows() == 0) throw ArgumentError("no embeddings to cluster");
  ClusteringTrace t;
  t.scores = InStage("score", [&] { return PldaScoreMatrix(plda, projected); });
  if (projected.rows() == 1) {
    t.ahc = ClusterAssignment{{0}, 1};
    t.final = t.ahc;
    return t;
  }
  if (cfg.ahc.threshold) {
    t.threshold = *cfg.ahc.threshold;
  } else {
    t.threshold = cfg.ahc.max_threshold;
    const std::vector<double> upper = UpperTriangle(t.scores);
    try {
      const TiedGmm1d gmm = FitTiedGmm(upper, cfg.ahc.gmm_iters);
      t.threshold = std::min(DeriveThreshold(gmm), cfg.ahc.max_threshold);
    } catch (const ArgumentError &) {
      // All scores equal: nothing to separate.
    } catch (const NumericError &) {
    }
  }
  t.ahc = InStage("ahc", [&] { return AhcCluster(t.scores, t.threshold); });
  if (cfg.resegment && t.ahc.n_clusters > 0) {
    t.final = InStage("vbhmm", [&] {
      return Resegment(projected, t.ahc, plda, cfg.vbhmm).assignment;
    });
  } else {
    t.final = t.ahc;
  }
  return t;
}

RecordingOutput RunRecording(const PipelineConfig &cfg, const Models &models,
                             const RecordingInputs &in, const std::string &dump_dir) {
  const std::string &rec = in.recording_id;
  InStage("input", [&] {
    cfg.Validate();
    if (in.scales.size() != cfg.windowing.size())
      throw ArgumentError("recording '" + rec + "' has " +
                          std::to_string(in.scales.size()) +
                          " embedding scales, config lists " +
                          std::to_string(cfg.windowing.size()));
    if (in.vad.empty()) throw ArgumentError("recording '" + rec + "' has no VAD track");
    for (const auto &s : in.scales)
      if (s.recording_id != rec)
        throw ArgumentError("embedding recording '" + s.recording_id +
                            "' does not match '" + rec + "'");
    for (const auto &v : in.vad)
      if (v.recording_id != rec)
        throw ArgumentError("VAD recording '" + v.recording_id +
                            "' does not match '" + rec + "'");
  });
  const Dumper dump(dump_dir, rec);
  RecordingOutput out;

  out.speech = InStage("vad", [&] { return Binarize(FusePosteriors(in.vad), cfg.vad); });
  dump.Write(".speech.seg", [&](std::ostream &os) { WriteSegments(os, rec, out.speech); });

  std::vector<TimeInterval> overlap;
  const bool use_osd = cfg.assign_overlap && in.osd.has_value();
  if (use_osd) {
    overlap = InStage("osd", [&] {
      if (in.osd->recording_id != rec)
        throw ArgumentError("OSD recording '" + in.osd->recording_id +
                            "' does not match '" + rec + "'");
      return Binarize(*in.osd, cfg.osd);
    });
    dump.Write(".overlap.seg", [&](std::ostream &os) { WriteSegments(os, rec, overlap); });
  }

  for (size_t k = 0; k < in.scales.size(); ++k) {
    const std::string tag = ".s" + std::to_string(k);
    const EmbeddingSequence selected = SelectSpeechWindows(in.scales[k], out.speech);
    if (selected.size() == 0) {
      out.per_scale.emplace_back(rec, std::vector<LabeledSegment>{});
      continue;
    }
    const Eigen::MatrixXd projected = InStage(
        "lda", [&] { return Project(models.lda, selected.Matrix(), cfg.length_norm); });
    const ClusteringTrace trace = ClusterScale(cfg, models.plda, projected);
    dump.Write(tag + ".scores", [&](std::ostream &os) { WriteScores(os, trace.scores); });
    dump.Write(tag + ".ahc.labels",
               [&](std::ostream &os) { WriteAssignment(os, trace.ahc, rec); });
    dump.Write(tag + ".labels",
               [&](std::ostream &os) { WriteAssignment(os, trace.final, rec); });

    Hypothesis hyp = InStage("segments", [&] {
      return ClipToSpeech(ToHypothesis(trace.final, selected.Windows(), rec), out.speech);
    });
    if (use_osd)
      hyp = InStage("overlap", [&] { return AssignOverlapSecondSpeaker(hyp, overlap); });
    dump.Write(tag + ".rttm", [&](std::ostream &os) {
      WriteRttm(os, std::span<const Hypothesis>(&hyp, 1));
    });
    out.per_scale.push_back(std::move(hyp));
  }

  out.combined = InStage("ensemble", [&] {
    return Doverlap(out.per_scale, cfg.ensemble_exponent);
  });
  dump.Write(".rttm", [&](std::ostream &os) {
    WriteRttm(os, std::span<const Hypothesis>(&out.combined, 1));
  });
  return out;
}

CorpusRun RunCorpus(const PipelineConfig &cfg, const Models &models,
                    std::span<const RecordingInputs> inputs,
                    const std::string &dump_dir) {
  const long n = static_cast<long>(inputs.size());
  std::vector<std::optional<RecordingOutput>> results(n);
  std::vector<std::string> errors(n);
  std::vector<int> codes(n, kExitOk);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      results[i] = RunRecording(cfg, models, inputs[i], dump_dir);
    } catch (const Error &e) {
      errors[i] = e.what();
      codes[i] = ExitCodeFor(e);
    } catch (const std::exception &e) {
      errors[i] = e.what();
      codes[i] = kExitData;
    }
  }
  CorpusRun run;
  for (long i = 0; i < n; ++i) {
    const std::string &rec = inputs[i].recording_id;
    if (results[i]) {
      run.outputs.emplace(rec, std::move(*results[i]));
    } else {
      run.failures.emplace(rec, errors[i]);
      run.exit_code = std::max(run.exit_code, codes[i]);
    }
  }
  return run;
}

std::vector<TimeInterval> ReadSegments(std::istream &is, std::string *recording_id) {
  LineReader reader(is);
  auto header = ReadHeader(reader, "SEG", 4);
  if (recording_id) *recording_id = header[2];
  const long long count = ParseInt(header[3], reader.line());
  if (count < 0) throw ParseError("negative SEG count", reader.line());
  std::vector<TimeInterval> out;
  for (long long i = 0; i < count; ++i) {
    const std::string line = reader.Require("segment row");
    const auto f = SplitFields(line);
    const int n = reader.line();
    if (f.size() != 2) throw ParseError("segment row needs 2 fields", n);
    const double s = ParseReal(f[0], n), e = ParseReal(f[1], n);
    if (!(s >= 0.0 && e > s)) throw ParseError("segment must satisfy 0 <= start < end", n);
    out.emplace_back(s, e);
  }
  if (!IsSortedDisjoint(out)) throw ParseError("segments must be sorted and disjoint");
  return out;
}

void WriteSegments(std::ostream &os, const std::string &recording_id,
                   std::span<const TimeInterval> segments) {
  os << "SEG v1 " << recording_id << ' ' << segments.size() << '\n';
  for (const auto &s : segments) os << FormatReal(s.start()) << ' ' << FormatReal(s.end()) << '\n';
}

}  // namespace diarkit
