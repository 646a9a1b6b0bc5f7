// tools/diarkit_cli.cc

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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "diarkit/ahc.h"
#include "diarkit/config.h"
#include "diarkit/embedding.h"
#include "diarkit/ensemble.h"
#include "diarkit/error.h"
#include "diarkit/frontend.h"
#include "diarkit/lda.h"
#include "diarkit/metrics.h"
#include "diarkit/overlap.h"
#include "diarkit/pipeline.h"
#include "diarkit/plda.h"
#include "diarkit/synth.h"
#include "diarkit/textio.h"
#include "diarkit/vbhmm.h"

namespace fs = std::filesystem;
using namespace diarkit;

namespace {

// Thrown for bad flag combinations detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream OpenIn(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  return in;
}

template <class W>
void WriteTo(const std::string &path, W &&writer) {
  if (path.empty() || path == "-") {
    writer(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write '" + path + "'");
  writer(out);
  if (!out) throw ArgumentError("write failed for '" + path + "'");
}

template <class R>
auto ReadFile(const std::string &path, R &&reader) {
  std::ifstream in = OpenIn(path);
  try {
    return reader(in);
  } catch (const ParseError &e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::vector<TimeInterval> ReadSegFile(const std::string &path) {
  return ReadFile(path, [](std::istream &is) { return ReadSegments(is, nullptr); });
}

std::vector<Hypothesis> ReadRttmFile(const std::string &path) {
  return ReadFile(path, [](std::istream &is) { return ParseRttm(is); });
}

Eigen::MatrixXd MaybeProject(const std::string &lda_path, const Eigen::MatrixXd &rows,
                             bool length_norm) {
  if (lda_path.empty()) return rows;
  const LdaModel lda = ReadFile(lda_path, ReadLda);
  return Project(lda, rows, length_norm);
}

// Config file first, then every --section.key flag the user gave.
struct ConfigFlags {
  std::string path;
  std::map<std::string, std::string> values;

  void Register(CLI::App *app) {
    app->add_option("--config", path, "flat key = value config file");
    for (const auto &key : ConfigKeys())
      app->add_option("--" + key, values[key], "config override")->group("Config");
  }

  PipelineConfig Build(CLI::App *app) const {
    PipelineConfig cfg;
    try {
      if (!path.empty()) cfg = ReadConfigFile(path);
      for (const auto &[key, value] : values)
        if (app->count("--" + key) > 0) SetConfigValue(&cfg, key, value);
      cfg.Validate();
    } catch (const Error &e) {
      throw UsageError(e.what());
    }
    return cfg;
  }
};

void PrintDer(std::ostream &os, const std::string &rec, const DerBreakdown &d,
              const JerResult &j) {
  os << rec << " der=" << FormatFixed(d.der, 2) << " missed=" << FormatFixed(d.missed, 3)
     << " false_alarm=" << FormatFixed(d.false_alarm, 3)
     << " confusion=" << FormatFixed(d.confusion, 3)
     << " total=" << FormatFixed(d.total_reference, 3) << " jer=" << FormatFixed(j.jer, 2)
     << (d.degenerate ? " degenerate=1" : "") << '\n';
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"diarkit: speaker diarization back-end"};
  app.require_subcommand(1);

  // segment
  auto *seg = app.add_subcommand("segment", "binarize posteriors into speech or overlap regions");
  std::vector<std::string> seg_posts;
  std::string seg_detector = "vad", seg_out, seg_tune_ref, seg_scale, seg_windows_out;
  double seg_beta = 1.0;
  ConfigFlags seg_cfg;
  seg->add_option("--posteriors", seg_posts, "POST files, averaged")->required();
  seg->add_option("--detector", seg_detector, "vad or osd")
      ->check(CLI::IsMember({"vad", "osd"}));
  seg->add_option("--output", seg_out, "SEG output (default stdout)");
  seg->add_option("--tune-ref", seg_tune_ref, "RTTM reference: grid-search the binarizer");
  seg->add_option("--beta", seg_beta, "F-beta used with --tune-ref");
  seg->add_option("--scale", seg_scale, "seg:hop window layout for --windows-out");
  seg->add_option("--windows-out", seg_windows_out, "SEG file of embedding windows");
  seg_cfg.Register(seg);

  // train-lda
  auto *tl = app.add_subcommand("train-lda", "train an LDA projection");
  std::string tl_emb, tl_lbl, tl_out;
  int tl_dim = 128;
  tl->add_option("--emb", tl_emb, "EMB training vectors")->required();
  tl->add_option("--labels", tl_lbl, "LBL speaker labels")->required();
  tl->add_option("--dim", tl_dim, "output dimension");
  tl->add_option("--output", tl_out, "LDA output")->required();

  // train-plda
  auto *tp = app.add_subcommand("train-plda", "train a two-covariance PLDA model");
  std::string tp_emb, tp_lbl, tp_lda, tp_out;
  int tp_iters = 10;
  bool tp_no_norm = false;
  tp->add_option("--emb", tp_emb, "EMB training vectors")->required();
  tp->add_option("--labels", tp_lbl, "LBL speaker labels")->required();
  tp->add_option("--lda", tp_lda, "LDA applied before training");
  tp->add_flag("--no-length-norm", tp_no_norm);
  tp->add_option("--iters", tp_iters, "EM iterations");
  tp->add_option("--output", tp_out, "PLDA output")->required();

  // interp-plda
  auto *ip = app.add_subcommand("interp-plda", "interpolate two PLDA models");
  std::string ip_a, ip_b, ip_out;
  double ip_alpha = 0.9;
  ip->add_option("--ood", ip_a, "out-of-domain model (weight alpha)")->required();
  ip->add_option("--ind", ip_b, "in-domain model (weight 1 - alpha)")->required();
  ip->add_option("--alpha", ip_alpha, "weight of the out-of-domain model");
  ip->add_option("--output", ip_out, "PLDA output")->required();

  // cluster
  auto *cl = app.add_subcommand("cluster", "PLDA scoring, GMM threshold and AHC");
  std::string cl_emb, cl_scores, cl_lda, cl_plda, cl_speech, cl_out, cl_scores_out;
  double cl_threshold = 0.0;
  cl->add_option("--emb", cl_emb, "EMB input");
  cl->add_option("--scores", cl_scores, "SCORES input instead of --emb");
  cl->add_option("--lda", cl_lda, "LDA model");
  cl->add_option("--plda", cl_plda, "PLDA model (required with --emb)");
  cl->add_option("--speech", cl_speech, "SEG: keep windows that overlap speech");
  auto *cl_thr = cl->add_option("--threshold", cl_threshold, "fixed AHC threshold");
  cl->add_option("--scores-out", cl_scores_out, "write the score matrix");
  cl->add_option("--output", cl_out, "LABELS output (default stdout)");
  ConfigFlags cl_cfg;
  cl_cfg.Register(cl);

  // resegment
  auto *rs = app.add_subcommand("resegment", "VB-HMM refinement of a clustering");
  std::string rs_emb, rs_labels, rs_lda, rs_plda, rs_speech, rs_out, rs_rttm;
  rs->add_option("--emb", rs_emb, "EMB input")->required();
  rs->add_option("--labels", rs_labels, "LABELS initial assignment")->required();
  rs->add_option("--lda", rs_lda, "LDA model");
  rs->add_option("--plda", rs_plda, "PLDA model")->required();
  rs->add_option("--speech", rs_speech, "SEG: same selection used for clustering");
  rs->add_option("--output", rs_out, "LABELS output (default stdout)");
  rs->add_option("--rttm", rs_rttm, "also write the RTTM");
  ConfigFlags rs_cfg;
  rs_cfg.Register(rs);

  // overlap
  auto *ov = app.add_subcommand("overlap", "add second speakers inside overlap regions");
  std::string ov_rttm, ov_regions, ov_out;
  ov->add_option("--rttm", ov_rttm, "diarization RTTM")->required();
  ov->add_option("--regions", ov_regions, "SEG overlap regions")->required();
  ov->add_option("--output", ov_out, "RTTM output (default stdout)");

  // ensemble
  auto *en = app.add_subcommand("ensemble", "DOVER-Lap combination");
  std::vector<std::string> en_inputs;
  std::string en_out;
  double en_exponent = 0.1;
  en->add_option("--inputs", en_inputs, "RTTM files")->required();
  en->add_option("--exponent", en_exponent, "rank weight exponent");
  en->add_option("--output", en_out, "RTTM output (default stdout)");

  // score
  auto *sc = app.add_subcommand("score", "DER and JER");
  std::string sc_ref, sc_hyp;
  double sc_collar = 0.25;
  sc->add_option("--ref", sc_ref, "reference RTTM")->required();
  sc->add_option("--hyp", sc_hyp, "hypothesis RTTM")->required();
  sc->add_option("--collar", sc_collar, "collar in seconds");

  // synth
  auto *sy = app.add_subcommand("synth", "write a seeded synthetic corpus");
  SyntheticSpec sy_spec;
  int sy_recordings = 1, sy_train_ood = 200, sy_train_ind = 30, sy_per_speaker = 20;
  std::string sy_dir, sy_scales = "1.0:0.5,2.0:1.0,3.0:1.5";
  sy->add_option("--output-dir", sy_dir, "output directory")->required();
  sy->add_option("--n-speakers", sy_spec.n_speakers);
  sy->add_option("--duration", sy_spec.duration);
  sy->add_option("--embed-dim", sy_spec.embed_dim);
  sy->add_option("--between", sy_spec.between_scale);
  sy->add_option("--within", sy_spec.within_scale);
  sy->add_option("--turn-mean", sy_spec.turn_mean);
  sy->add_option("--overlap-fraction", sy_spec.overlap_fraction);
  sy->add_option("--seed", sy_spec.seed);
  sy->add_option("--recordings", sy_recordings, "number of recordings");
  sy->add_option("--scales", sy_scales, "seg:hop list");
  sy->add_option("--train-ood-speakers", sy_train_ood);
  sy->add_option("--train-ind-speakers", sy_train_ind);
  sy->add_option("--train-per-speaker", sy_per_speaker);

  // run
  auto *rn = app.add_subcommand("run", "full pipeline over a corpus");
  std::vector<std::string> rn_vad, rn_osd, rn_emb;
  std::string rn_lda, rn_plda, rn_ood_emb, rn_ood_lbl, rn_ind_emb, rn_ind_lbl, rn_out,
      rn_dump, rn_ref, rn_models_out;
  rn->add_option("--vad", rn_vad, "VAD POST files (several per recording are averaged)")
      ->required();
  rn->add_option("--osd", rn_osd, "OSD POST files, one per recording");
  rn->add_option("--emb", rn_emb,
                 "EMB files; per recording, the k-th file given is scale k")
      ->required();
  rn->add_option("--lda", rn_lda, "trained LDA model");
  rn->add_option("--plda", rn_plda, "trained (interpolated) PLDA model");
  rn->add_option("--train-ood-emb", rn_ood_emb, "train models: out-of-domain EMB");
  rn->add_option("--train-ood-labels", rn_ood_lbl);
  rn->add_option("--train-ind-emb", rn_ind_emb, "train models: in-domain EMB");
  rn->add_option("--train-ind-labels", rn_ind_lbl);
  rn->add_option("--models-out", rn_models_out, "directory for trained lda.txt/plda.txt");
  rn->add_option("--output", rn_out, "RTTM output (default stdout)");
  rn->add_option("--dump-dir", rn_dump, "write every intermediate artifact here");
  rn->add_option("--ref", rn_ref, "score against this reference RTTM");
  ConfigFlags rn_cfg;
  rn_cfg.Register(rn);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (seg->parsed()) {
      const PipelineConfig cfg = seg_cfg.Build(seg);
      std::vector<PosteriorTrack> tracks;
      for (const auto &p : seg_posts) tracks.push_back(ReadFile(p, ReadPosteriors));
      const PosteriorTrack fused = FusePosteriors(tracks);
      BinarizerConfig bin = seg_detector == "vad" ? cfg.vad : cfg.osd;
      if (!seg_tune_ref.empty()) {
        std::vector<TimeInterval> ref;
        for (const auto &h : ReadRttmFile(seg_tune_ref)) {
          if (h.recording_id() != fused.recording_id) continue;
          if (seg_detector == "vad") {
            ref = h.SpeechRegions();
          } else {
            const auto spk = h.Speakers();
            for (size_t a = 0; a < spk.size(); ++a)
              for (size_t b = a + 1; b < spk.size(); ++b) {
                auto both = IntersectIntervals(h.SpeakerIntervals(spk[a]),
                                               h.SpeakerIntervals(spk[b]));
                ref.insert(ref.end(), both.begin(), both.end());
              }
            ref = MergeIntervals(ref);
          }
        }
        const auto grid = DefaultBinarizerGrid(bin);
        bin = TuneBinarizer(fused, ref, grid, FBetaConfig{seg_beta});
        const auto score = FrameDetectionScore(fused, Binarize(fused, bin), ref,
                                               FBetaConfig{seg_beta});
        std::cerr << seg_detector << ".onset = " << FormatReal(bin.onset) << '\n'
                  << seg_detector << ".offset = " << FormatReal(bin.offset) << '\n'
                  << "precision=" << FormatFixed(score.precision, 4)
                  << " recall=" << FormatFixed(score.recall, 4)
                  << " f_beta=" << FormatFixed(score.f_beta, 4) << '\n';
      }
      const auto regions = Binarize(fused, bin);
      WriteTo(seg_out, [&](std::ostream &os) { WriteSegments(os, fused.recording_id, regions); });
      if (!seg_windows_out.empty()) {
        if (seg_scale.empty()) throw UsageError("--windows-out needs --scale");
        const auto scales = ParseScales(seg_scale);
        if (scales.size() != 1) throw UsageError("--scale takes a single seg:hop pair");
        const auto windows = WindowSpeech(regions, scales[0]);
        WriteTo(seg_windows_out,
                [&](std::ostream &os) { WriteSegments(os, fused.recording_id, windows); });
      }
    } else if (tl->parsed()) {
      const auto seq = ReadFile(tl_emb, ReadEmbeddings);
      const auto labels = ReadFile(tl_lbl, ReadLabels);
      LdaReport report;
      const LdaModel lda = TrainLda(seq.Matrix(), labels, tl_dim, &report);
      if (report.clamped)
        std::cerr << "lda: output dimension clamped from " << report.requested_dim << " to "
                  << report.output_dim << '\n';
      WriteTo(tl_out, [&](std::ostream &os) { WriteLda(os, lda); });
    } else if (tp->parsed()) {
      const auto seq = ReadFile(tp_emb, ReadEmbeddings);
      const auto labels = ReadFile(tp_lbl, ReadLabels);
      std::vector<double> trace;
      const PldaModel plda =
          TrainPlda(MaybeProject(tp_lda, seq.Matrix(), !tp_no_norm), labels, tp_iters, &trace);
      std::cerr << "plda: log-likelihood " << FormatReal(trace.front()) << " -> "
                << FormatReal(trace.back()) << '\n';
      WriteTo(tp_out, [&](std::ostream &os) { WritePlda(os, plda); });
    } else if (ip->parsed()) {
      const PldaModel a = ReadFile(ip_a, ReadPlda), b = ReadFile(ip_b, ReadPlda);
      const PldaModel m = InterpolatePlda(a, b, ip_alpha);
      WriteTo(ip_out, [&](std::ostream &os) { WritePlda(os, m); });
    } else if (cl->parsed()) {
      PipelineConfig cfg = cl_cfg.Build(cl);
      if (cl_thr->count() > 0) cfg.ahc.threshold = cl_threshold;
      cfg.resegment = false;
      std::string rec = "rec";
      ClusteringTrace trace;
      if (!cl_scores.empty()) {
        trace.scores = ReadFile(cl_scores, ReadScores);
        if (!cfg.ahc.threshold) {
          const TiedGmm1d gmm = FitTiedGmm(UpperTriangle(trace.scores), cfg.ahc.gmm_iters);
          cfg.ahc.threshold = std::min(DeriveThreshold(gmm), cfg.ahc.max_threshold);
        }
        trace.threshold = *cfg.ahc.threshold;
        trace.final = AhcCluster(trace.scores, trace.threshold);
      } else {
        if (cl_emb.empty() || cl_plda.empty())
          throw UsageError("cluster needs --scores or --emb with --plda");
        EmbeddingSequence seq = ReadFile(cl_emb, ReadEmbeddings);
        rec = seq.recording_id;
        if (!cl_speech.empty()) seq = SelectSpeechWindows(seq, ReadSegFile(cl_speech));
        const PldaModel plda = ReadFile(cl_plda, ReadPlda);
        trace = ClusterScale(cfg, plda, MaybeProject(cl_lda, seq.Matrix(), cfg.length_norm));
      }
      std::cerr << "cluster: threshold " << FormatReal(trace.threshold) << ", "
                << trace.final.n_clusters << " clusters\n";
      if (!cl_scores_out.empty())
        WriteTo(cl_scores_out, [&](std::ostream &os) { WriteScores(os, trace.scores); });
      WriteTo(cl_out, [&](std::ostream &os) { WriteAssignment(os, trace.final, rec); });
    } else if (rs->parsed()) {
      const PipelineConfig cfg = rs_cfg.Build(rs);
      EmbeddingSequence seq = ReadFile(rs_emb, ReadEmbeddings);
      if (!rs_speech.empty()) seq = SelectSpeechWindows(seq, ReadSegFile(rs_speech));
      std::string rec;
      const ClusterAssignment init = ReadFile(
          rs_labels, [&](std::istream &is) { return ReadAssignment(is, &rec); });
      const PldaModel plda = ReadFile(rs_plda, ReadPlda);
      const VbhmmResult r = Resegment(MaybeProject(rs_lda, seq.Matrix(), cfg.length_norm),
                                      init, plda, cfg.vbhmm);
      std::cerr << "resegment: " << r.iterations << " iterations, "
                << (r.converged ? "converged" : "not converged") << ", "
                << r.assignment.n_clusters << " speakers\n";
      WriteTo(rs_out, [&](std::ostream &os) { WriteAssignment(os, r.assignment, seq.recording_id); });
      if (!rs_rttm.empty()) {
        const Hypothesis h = ToHypothesis(r.assignment, seq.Windows(), seq.recording_id);
        WriteTo(rs_rttm, [&](std::ostream &os) { WriteRttm(os, std::span(&h, 1)); });
      }
    } else if (ov->parsed()) {
      std::string rec;
      const auto regions =
          ReadFile(ov_regions, [&](std::istream &is) { return ReadSegments(is, &rec); });
      std::vector<Hypothesis> hyps = ReadRttmFile(ov_rttm);
      for (auto &h : hyps)
        if (h.recording_id() == rec) h = AssignOverlapSecondSpeaker(h, regions);
      WriteTo(ov_out, [&](std::ostream &os) { WriteRttm(os, hyps); });
    } else if (en->parsed()) {
      std::map<std::string, std::vector<Hypothesis>> by_rec;
      for (const auto &p : en_inputs)
        for (auto &h : ReadRttmFile(p)) by_rec[h.recording_id()].push_back(std::move(h));
      std::vector<Hypothesis> out;
      for (auto &[rec, hyps] : by_rec) {
        if (hyps.size() != en_inputs.size())
          std::cerr << "ensemble: " << rec << " present in " << hyps.size() << " of "
                    << en_inputs.size() << " inputs\n";
        out.push_back(Doverlap(hyps, en_exponent));
      }
      WriteTo(en_out, [&](std::ostream &os) { WriteRttm(os, out); });
    } else if (sc->parsed()) {
      const auto refs = ReadRttmFile(sc_ref);
      std::map<std::string, Hypothesis> hyps;
      for (auto &h : ReadRttmFile(sc_hyp)) hyps.emplace(h.recording_id(), std::move(h));
      std::vector<DerBreakdown> ders;
      std::vector<JerResult> jers;
      for (const auto &r : refs) {
        auto it = hyps.find(r.recording_id());
        const Hypothesis h =
            it == hyps.end() ? Hypothesis(r.recording_id(), {}) : it->second;
        ders.push_back(ComputeDer(r, h, sc_collar));
        jers.push_back(ComputeJer(r, h));
        PrintDer(std::cout, r.recording_id(), ders.back(), jers.back());
      }
      const CorpusScore corpus = AggregateScores(ders, jers);
      std::cout << "corpus pooled_der=" << FormatFixed(corpus.pooled.der, 2)
                << " mean_der=" << FormatFixed(corpus.mean_der, 2)
                << " mean_jer=" << FormatFixed(corpus.mean_jer, 2)
                << " recordings=" << ders.size() << " collar=" << FormatReal(sc_collar)
                << '\n';
    } else if (sy->parsed()) {
      const auto scales = ParseScales(sy_scales);
      fs::create_directories(sy_dir);
      std::vector<Hypothesis> truths;
      for (int r = 0; r < sy_recordings; ++r) {
        SyntheticSpec spec = sy_spec;
        spec.seed = sy_spec.seed + r;
        spec.recording_id = sy_recordings == 1 ? "synth" : "synth" + std::to_string(r);
        const SyntheticConversation conv = SynthesizeConversation(spec, scales);
        const fs::path base = fs::path(sy_dir) / spec.recording_id;
        for (size_t v = 0; v < conv.vad.size(); ++v)
          WriteTo(base.string() + ".vad" + std::to_string(v) + ".post",
                  [&](std::ostream &os) { WritePosteriors(os, conv.vad[v]); });
        WriteTo(base.string() + ".osd.post",
                [&](std::ostream &os) { WritePosteriors(os, conv.osd); });
        for (size_t k = 0; k < conv.scales.size(); ++k) {
          WriteTo(base.string() + ".s" + std::to_string(k) + ".emb",
                  [&](std::ostream &os) { WriteEmbeddings(os, conv.scales[k]); });
          WriteTo(base.string() + ".s" + std::to_string(k) + ".lbl",
                  [&](std::ostream &os) { WriteLabels(os, conv.window_labels[k]); });
        }
        truths.push_back(conv.truth);
      }
      WriteTo((fs::path(sy_dir) / "ref.rttm").string(),
              [&](std::ostream &os) { WriteRttm(os, truths); });
      const auto ood = SynthesizeTrainingSet(sy_train_ood, sy_per_speaker, sy_spec,
                                             sy_spec.seed + 1000003, "ood");
      const auto ind = SynthesizeTrainingSet(sy_train_ind, sy_per_speaker, sy_spec,
                                             sy_spec.seed + 2000003, "ind");
      for (const auto &[name, set] : {std::pair{"train_ood", &ood}, std::pair{"train_ind", &ind}}) {
        const fs::path base = fs::path(sy_dir) / name;
        WriteTo(base.string() + ".emb",
                [&](std::ostream &os) { WriteEmbeddings(os, set->AsSequence(name)); });
        WriteTo(base.string() + ".lbl", [&](std::ostream &os) { WriteLabels(os, set->labels); });
      }
    } else if (rn->parsed()) {
      const PipelineConfig cfg = rn_cfg.Build(rn);
      Models models;
      if (!rn_lda.empty() && !rn_plda.empty()) {
        models.lda = ReadFile(rn_lda, ReadLda);
        models.plda = ReadFile(rn_plda, ReadPlda);
      } else if (!rn_ood_emb.empty() && !rn_ood_lbl.empty()) {
        const auto ood = ReadFile(rn_ood_emb, ReadEmbeddings);
        const auto ood_lbl = ReadFile(rn_ood_lbl, ReadLabels);
        Eigen::MatrixXd ind_data(0, ood.dim);
        std::vector<std::string> ind_lbl;
        if (!rn_ind_emb.empty()) {
          if (rn_ind_lbl.empty()) throw UsageError("--train-ind-emb needs --train-ind-labels");
          ind_data = ReadFile(rn_ind_emb, ReadEmbeddings).Matrix();
          ind_lbl = ReadFile(rn_ind_lbl, ReadLabels);
        }
        models = TrainModels(cfg, ood.Matrix(), ood_lbl, ind_data, ind_lbl);
        if (!rn_models_out.empty()) {
          fs::create_directories(rn_models_out);
          WriteTo((fs::path(rn_models_out) / "lda.txt").string(),
                  [&](std::ostream &os) { WriteLda(os, models.lda); });
          WriteTo((fs::path(rn_models_out) / "plda.txt").string(),
                  [&](std::ostream &os) { WritePlda(os, models.plda); });
        }
      } else {
        throw UsageError("run needs --lda and --plda, or --train-ood-emb and --train-ood-labels");
      }

      std::map<std::string, RecordingInputs> recs;
      auto slot = [&](const std::string &rec) -> RecordingInputs & {
        RecordingInputs &r = recs[rec];
        r.recording_id = rec;
        return r;
      };
      for (const auto &p : rn_vad) {
        auto t = ReadFile(p, ReadPosteriors);
        slot(t.recording_id).vad.push_back(std::move(t));
      }
      for (const auto &p : rn_osd) {
        auto t = ReadFile(p, ReadPosteriors);
        RecordingInputs &r = slot(t.recording_id);
        if (r.osd) throw UsageError("two OSD tracks for '" + t.recording_id + "'");
        r.osd = std::move(t);
      }
      for (const auto &p : rn_emb) {
        auto s = ReadFile(p, ReadEmbeddings);
        slot(s.recording_id).scales.push_back(std::move(s));
      }
      std::vector<RecordingInputs> inputs;
      for (auto &[rec, in] : recs) inputs.push_back(std::move(in));

      const CorpusRun run = RunCorpus(cfg, models, inputs, rn_dump);
      std::vector<Hypothesis> hyps;
      for (const auto &[rec, out] : run.outputs) hyps.push_back(out.combined);
      WriteTo(rn_out, [&](std::ostream &os) { WriteRttm(os, hyps); });
      for (const auto &[rec, msg] : run.failures)
        std::cerr << "run: " << rec << " failed: " << msg << '\n';

      if (!rn_ref.empty()) {
        std::vector<DerBreakdown> ders;
        std::vector<JerResult> jers;
        for (const auto &ref : ReadRttmFile(rn_ref)) {
          auto it = run.outputs.find(ref.recording_id());
          if (it == run.outputs.end()) continue;
          ders.push_back(ComputeDer(ref, it->second.combined, cfg.collar));
          jers.push_back(ComputeJer(ref, it->second.combined));
          PrintDer(std::cerr, ref.recording_id(), ders.back(), jers.back());
        }
        const CorpusScore corpus = AggregateScores(ders, jers);
        std::cerr << "corpus pooled_der=" << FormatFixed(corpus.pooled.der, 2)
                  << " mean_der=" << FormatFixed(corpus.mean_der, 2)
                  << " mean_jer=" << FormatFixed(corpus.mean_jer, 2) << '\n';
      }
      return run.exit_code;
    }
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return ExitCodeFor(e);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}
