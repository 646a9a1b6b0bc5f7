// src/vbhmm.cc

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

#include "diarkit/vbhmm.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "diarkit/error.h"
#include "diarkit/kernels.h"
#include "diarkit/textio.h"

namespace diarkit {

void VbhmmConfig::Validate() const {
  if (!(loop_p > 0.0 && loop_p < 1.0))
    throw ArgumentError("VB-HMM loop_p must be in (0,1)");
  if (!(fa > 0.0) || !(fb > 0.0))
    throw ArgumentError("VB-HMM fa and fb must be positive");
  if (max_iters < 1) throw ArgumentError("VB-HMM max_iters must be >= 1");
  if (!(elbo_tol > 0.0)) throw ArgumentError("VB-HMM elbo_tol must be positive");
  if (!(min_occupancy >= 0.0))
    throw ArgumentError("VB-HMM min_occupancy must be non-negative");
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double LogAddExp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

double LogSumExp(const Eigen::VectorXd &v) {
  const double m = v.maxCoeff();
  if (m == kNegInf) return kNegInf;
  return m + std::log((v.array() - m).exp().sum());
}

}  // namespace

ForwardBackwardResult ForwardBackward(const Eigen::MatrixXd &log_emissions,
                                      const Eigen::VectorXd &pi, double loop_p) {
  const Eigen::Index t_len = log_emissions.rows(), s_len = log_emissions.cols();
  const Eigen::VectorXd log_pi = pi.array().log();
  const double log_loop = std::log(loop_p);
  const double log_jump = std::log1p(-loop_p);

  ForwardBackwardResult r;
  r.log_alpha.resize(t_len, s_len);
  r.log_beta.resize(t_len, s_len);
  r.log_alpha.row(0) = (log_pi + log_emissions.row(0).transpose()).transpose();
  for (Eigen::Index t = 1; t < t_len; ++t) {
    const double total = LogSumExp(r.log_alpha.row(t - 1).transpose());
    for (Eigen::Index s = 0; s < s_len; ++s)
      r.log_alpha(t, s) =
          log_emissions(t, s) + LogAddExp(log_loop + r.log_alpha(t - 1, s),
                                          log_jump + log_pi[s] + total);
  }
  r.log_beta.row(t_len - 1).setZero();
  for (Eigen::Index t = t_len - 2; t >= 0; --t) {
    Eigen::VectorXd next = log_emissions.row(t + 1).transpose() +
                           r.log_beta.row(t + 1).transpose();
    const double jump = log_jump + LogSumExp(log_pi + next);
    for (Eigen::Index s = 0; s < s_len; ++s)
      r.log_beta(t, s) = LogAddExp(log_loop + next[s], jump);
  }
  r.log_px = LogSumExp(r.log_alpha.row(t_len - 1).transpose());
  r.gamma = ((r.log_alpha + r.log_beta).array() - r.log_px).exp();
  // Remove round-off so that rows sum to one.
  for (Eigen::Index t = 0; t < t_len; ++t) r.gamma.row(t) /= r.gamma.row(t).sum();
  return r;
}

namespace {

// Expected number of entries into each state (initial + jumps), the
// sufficient statistic of the prior update.
Eigen::VectorXd UpdatePi(const ForwardBackwardResult &fb,
                         const Eigen::MatrixXd &log_emissions,
                         const Eigen::VectorXd &pi, double loop_p) {
  const Eigen::Index t_len = log_emissions.rows(), s_len = log_emissions.cols();
  Eigen::VectorXd counts = fb.gamma.row(0).transpose();
  const double log_jump = std::log1p(-loop_p);
  for (Eigen::Index t = 1; t < t_len; ++t) {
    const double prev = LogSumExp(fb.log_alpha.row(t - 1).transpose());
    for (Eigen::Index s = 0; s < s_len; ++s) {
      if (pi[s] <= 0.0) continue;
      counts[s] += std::exp(log_jump + std::log(pi[s]) + prev +
                            log_emissions(t, s) + fb.log_beta(t, s) - fb.log_px);
    }
  }
  return counts / counts.sum();
}

// Keeps the speakers listed in `keep` (in that order) and renormalizes
// each row; rows left without mass fall back to their best kept column.
Eigen::MatrixXd SelectColumns(const Eigen::MatrixXd &gamma,
                              const std::vector<Eigen::Index> &keep) {
  Eigen::MatrixXd out(gamma.rows(), keep.size());
  for (size_t k = 0; k < keep.size(); ++k) out.col(k) = gamma.col(keep[k]);
  for (Eigen::Index t = 0; t < out.rows(); ++t) {
    const double sum = out.row(t).sum();
    if (sum > 0.0) {
      out.row(t) /= sum;
    } else {
      out.row(t).setConstant(1.0 / static_cast<double>(keep.size()));
    }
  }
  return out;
}

}  // namespace

VbhmmResult Resegment(const Eigen::MatrixXd &embeddings,
                      const ClusterAssignment &init, const PldaModel &plda,
                      const VbhmmConfig &cfg, const VbhmmObserver &observer) {
  cfg.Validate();
  const Eigen::Index t_len = embeddings.rows();
  if (t_len == 0) throw ArgumentError("VB-HMM: no embeddings");
  if (static_cast<Eigen::Index>(init.labels.size()) != t_len)
    throw ArgumentError("VB-HMM: " + std::to_string(init.labels.size()) +
                        " initial labels for " + std::to_string(t_len) +
                        " embeddings");
  if (init.n_clusters < 1) throw ArgumentError("VB-HMM: no initial clusters");
  if (embeddings.cols() != plda.Dim())
    throw ArgumentError("VB-HMM: embedding dimension does not match PLDA");

  const PldaLatentBasis basis = DiagonalizePlda(plda, cfg.min_phi);
  const Eigen::MatrixXd u = basis.Apply(embeddings);
  const Eigen::VectorXd &phi = basis.phi;
  const Eigen::Index d = phi.size();
  const Eigen::MatrixXd rho = u * phi.cwiseSqrt().asDiagonal();
  const Eigen::VectorXd g =
      -0.5 * (u.rowwise().squaredNorm().array() +
              d * std::log(2.0 * std::numbers::pi));

  const Eigen::Index s_len = init.n_clusters;
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(t_len, s_len);
  for (Eigen::Index t = 0; t < t_len; ++t) {
    const int l = init.labels[t];
    if (l < 0 || l >= s_len) throw ArgumentError("VB-HMM: initial label out of range");
    gamma(t, l) = 1.0;
  }
  Eigen::VectorXd pi = Eigen::VectorXd::Constant(s_len, 1.0 / s_len);

  VbhmmResult result;
  const double ratio = cfg.fa / cfg.fb;
  Eigen::MatrixXd alpha(s_len, d), inv_l(s_len, d);
  for (int it = 0; it < cfg.max_iters; ++it) {
    const Eigen::VectorXd occupancy = gamma.colwise().sum().transpose();
    const Eigen::MatrixXd stats = gamma.transpose() * rho;  // S x D
    for (Eigen::Index s = 0; s < s_len; ++s) {
      for (Eigen::Index k = 0; k < d; ++k) {
        inv_l(s, k) = 1.0 / (1.0 + ratio * occupancy[s] * phi[k]);
        alpha(s, k) = ratio * inv_l(s, k) * stats(s, k);
      }
    }
    const Eigen::MatrixXd log_p =
        kernels::VbLogEmissions(rho, g, alpha, inv_l, phi, cfg.fa);
    ForwardBackwardResult fb = ForwardBackward(log_p, pi, cfg.loop_p);
    gamma = fb.gamma;

    double kl_term = 0.0;
    for (Eigen::Index s = 0; s < s_len; ++s)
      for (Eigen::Index k = 0; k < d; ++k)
        kl_term += std::log(inv_l(s, k)) - inv_l(s, k) -
                   alpha(s, k) * alpha(s, k) + 1.0;
    const double elbo = fb.log_px + cfg.fb * 0.5 * kl_term;
    if (!std::isfinite(elbo))
      throw NumericError("VB-HMM: non-finite ELBO at iteration " +
                         std::to_string(it + 1));
    if (observer) observer({it, rho, phi, gamma, pi, alpha, inv_l, elbo});

    pi = UpdatePi(fb, log_p, pi, cfg.loop_p);
    result.elbo.push_back(elbo);
    result.iterations = it + 1;
    if (it > 0 && elbo - result.elbo[it - 1] < cfg.elbo_tol) {
      result.converged = true;
      break;
    }
  }

  // Prune light speakers, then relabel by first occurrence of the argmax.
  const Eigen::VectorXd occupancy = gamma.colwise().sum().transpose();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index s = 0; s < s_len; ++s)
    if (occupancy[s] >= cfg.min_occupancy) keep.push_back(s);
  if (keep.empty()) {
    Eigen::Index best = 0;
    occupancy.maxCoeff(&best);
    keep.push_back(best);
  }
  Eigen::MatrixXd kept = SelectColumns(gamma, keep);
  std::vector<int> argmax(t_len);
  for (Eigen::Index t = 0; t < t_len; ++t) {
    Eigen::Index best = 0;
    for (Eigen::Index s = 1; s < kept.cols(); ++s)
      if (kept(t, s) > kept(t, best)) best = s;
    argmax[t] = static_cast<int>(best);
  }
  result.assignment = Canonicalize(argmax);

  // Column k of the output belongs to canonical label k.
  std::vector<Eigen::Index> order(result.assignment.n_clusters);
  for (Eigen::Index t = 0; t < t_len; ++t)
    order[result.assignment.labels[t]] = argmax[t];
  result.gamma = SelectColumns(kept, order);
  result.pi.resize(order.size());
  for (size_t k = 0; k < order.size(); ++k) result.pi[k] = pi[keep[order[k]]];
  const double pi_sum = result.pi.sum();
  if (pi_sum > 0.0) result.pi /= pi_sum;
  return result;
}

VbhmmResult Resegment(const EmbeddingSequence &embeddings,
                      const ClusterAssignment &init, const PldaModel &plda,
                      const VbhmmConfig &cfg, const VbhmmObserver &observer) {
  if (embeddings.size() == 0) throw ArgumentError("VB-HMM: no embeddings");
  embeddings.Validate();
  return Resegment(embeddings.Matrix(), init, plda, cfg, observer);
}

Hypothesis ToHypothesis(const ClusterAssignment &assignment,
                        std::span<const TimeInterval> windows,
                        const std::string &recording_id,
                        const std::string &prefix) {
  if (assignment.labels.size() != windows.size())
    throw ArgumentError("to_hypothesis: " + std::to_string(assignment.labels.size()) +
                        " labels for " + std::to_string(windows.size()) +
                        " windows");
  for (size_t i = 1; i < windows.size(); ++i)
    if (windows[i].start() < windows[i - 1].start())
      throw ArgumentError("to_hypothesis: windows must be sorted");
  std::vector<LabeledSegment> segs;
  for (size_t i = 0; i < windows.size(); ++i) {
    double a = windows[i].start(), b = windows[i].end();
    if (i > 0 && windows[i - 1].end() > a)
      a = 0.5 * (windows[i].start() + windows[i - 1].end());
    if (i + 1 < windows.size() && windows[i + 1].start() < b)
      b = 0.5 * (windows[i + 1].start() + windows[i].end());
    if (b > a)
      segs.push_back({TimeInterval(a, b),
                      prefix + std::to_string(assignment.labels[i])});
  }
  return Hypothesis(recording_id, std::move(segs));
}

}  // namespace diarkit
