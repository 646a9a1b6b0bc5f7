// tests/fixtures.h

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

#ifndef DIARKIT_TESTS_FIXTURES_H_
#define DIARKIT_TESTS_FIXTURES_H_

// Seeded data generators and small exhaustive evaluators shared by the
// unit tests and the acceptance suite.

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "diarkit/ahc.h"
#include "diarkit/plda.h"
#include "diarkit/vbhmm.h"

namespace fixture {

using diarkit::ClusterAssignment;
using diarkit::PldaModel;

inline Eigen::MatrixXd RandomSpd(std::mt19937_64 &rng, int d, double floor) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = n(rng);
  Eigen::MatrixXd s = a * a.transpose() / d;
  s.diagonal().array() += floor;
  return 0.5 * (s + s.transpose());
}

inline PldaModel RandomPlda(std::mt19937_64 &rng, int d) {
  std::normal_distribution<double> n(0.0, 1.0);
  PldaModel m;
  m.mu = Eigen::VectorXd(d);
  for (int i = 0; i < d; ++i) m.mu[i] = n(rng);
  m.between = RandomSpd(rng, d, 0.3);
  m.within = RandomSpd(rng, d, 0.2);
  return m;
}

// PLDA with a strong speaker subspace, for VB-HMM runs.
inline PldaModel SeparatedPlda(std::mt19937_64 &rng, int d) {
  std::normal_distribution<double> z(0.0, 1.0);
  Eigen::MatrixXd a(d, d), c(d, d);
  PldaModel m;
  m.mu.resize(d);
  for (int i = 0; i < d; ++i) {
    m.mu[i] = z(rng);
    for (int j = 0; j < d; ++j) {
      a(i, j) = 2.0 * z(rng);
      c(i, j) = 0.5 * z(rng);
    }
  }
  m.between = a * a.transpose();
  m.within = c * c.transpose() + 0.3 * Eigen::MatrixXd::Identity(d, d);
  return m;
}

struct Labeled {
  Eigen::MatrixXd data;
  std::vector<std::string> labels;
};

// Samples from the two-covariance model.
inline Labeled SamplePlda(const PldaModel &m, int speakers, int per, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  const int d = m.Dim();
  Eigen::MatrixXd lb = m.between.llt().matrixL(), lw = m.within.llt().matrixL();
  Labeled out;
  out.data.resize(speakers * per, d);
  for (int s = 0; s < speakers; ++s) {
    Eigen::VectorXd z(d);
    for (int i = 0; i < d; ++i) z[i] = n(rng);
    const Eigen::VectorXd y = m.mu + lb * z;
    for (int j = 0; j < per; ++j) {
      for (int i = 0; i < d; ++i) z[i] = n(rng);
      out.data.row(s * per + j) = (y + lw * z).transpose();
      out.labels.push_back("spk" + std::to_string(s));
    }
  }
  return out;
}

// `t_len` frames from `n_spk` speakers taking contiguous turns.
inline Eigen::MatrixXd DrawFrames(std::mt19937_64 &rng, const PldaModel &m, int t_len,
                                  int n_spk, std::vector<int> *truth) {
  const int d = m.Dim();
  std::normal_distribution<double> z(0.0, 1.0);
  const Eigen::MatrixXd lb = Eigen::LLT<Eigen::MatrixXd>(
      m.between + 1e-9 * Eigen::MatrixXd::Identity(d, d)).matrixL();
  const Eigen::MatrixXd lw = Eigen::LLT<Eigen::MatrixXd>(m.within).matrixL();
  std::vector<Eigen::VectorXd> means;
  for (int s = 0; s < n_spk; ++s) {
    Eigen::VectorXd e(d);
    for (int i = 0; i < d; ++i) e[i] = z(rng);
    means.push_back(m.mu + lb * e);
  }
  Eigen::MatrixXd x(t_len, d);
  truth->assign(t_len, 0);
  for (int t = 0; t < t_len; ++t) {
    const int s = std::min(n_spk - 1, t * n_spk / t_len);
    (*truth)[t] = s;
    Eigen::VectorXd e(d);
    for (int i = 0; i < d; ++i) e[i] = z(rng);
    x.row(t) = (means[s] + lw * e).transpose();
  }
  return x;
}

inline ClusterAssignment RandomInit(std::mt19937_64 &rng, int t_len, int s_len) {
  std::uniform_int_distribution<int> pick(0, s_len - 1);
  std::vector<int> l(t_len);
  for (int t = 0; t < t_len; ++t) l[t] = t < s_len ? t : pick(rng);
  return ClusterAssignment{l, s_len};
}

// VB-HMM frame emissions written out from the model definition.
inline Eigen::MatrixXd VbEmissions(const Eigen::MatrixXd &rho, const Eigen::VectorXd &phi,
                                   const Eigen::MatrixXd &alpha, const Eigen::MatrixXd &inv_l,
                                   double fa) {
  const Eigen::Index t_len = rho.rows(), s_len = alpha.rows(), d = phi.size();
  Eigen::MatrixXd e(t_len, s_len);
  for (Eigen::Index t = 0; t < t_len; ++t) {
    double g = d * std::log(2.0 * std::numbers::pi);
    for (Eigen::Index k = 0; k < d; ++k) g += rho(t, k) * rho(t, k) / phi[k];
    for (Eigen::Index s = 0; s < s_len; ++s) {
      double v = -0.5 * g;
      for (Eigen::Index k = 0; k < d; ++k)
        v += rho(t, k) * alpha(s, k) - 0.5 * phi[k] * (inv_l(s, k) + alpha(s, k) * alpha(s, k));
      e(t, s) = fa * v;
    }
  }
  return e;
}

// Two speakers at -4 / +4 in a 1-D latent space (W = 1, B = 16), twelve
// frames, initial labels correct except frame 2.
struct FlippedFrame {
  PldaModel plda;
  Eigen::MatrixXd x;
  std::vector<int> truth;
  ClusterAssignment init;
};

inline FlippedFrame MakeFlippedFrame() {
  FlippedFrame f;
  f.plda.mu = Eigen::VectorXd::Zero(1);
  f.plda.within = Eigen::MatrixXd::Identity(1, 1);
  f.plda.between = Eigen::MatrixXd::Constant(1, 1, 16.0);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 0.5);
  const int t_len = 12;
  f.x.resize(t_len, 1);
  f.truth.resize(t_len);
  for (int t = 0; t < t_len; ++t) {
    f.truth[t] = t < 6 ? 0 : 1;
    f.x(t, 0) = (t < 6 ? -4.0 : 4.0) + noise(rng);
  }
  std::vector<int> init = f.truth;
  init[2] = 1;
  f.init = ClusterAssignment{init, 2};
  return f;
}

// Best hard two-speaker labelling of a 1-D sequence (W = 1, B = phi)
// under the VB bound with q(Y) fitted to the labelling, uniform pi.
// Enumerates all 2^T labellings; returns labels canonicalized.
inline std::vector<int> ExhaustiveHardLabels(const Eigen::MatrixXd &x, double phi,
                                             const diarkit::VbhmmConfig &cfg) {
  const int t_len = static_cast<int>(x.rows());
  const double ratio = cfg.fa / cfg.fb;
  const Eigen::VectorXd phi_v = Eigen::VectorXd::Constant(1, phi);
  const Eigen::MatrixXd rho = x * std::sqrt(phi);
  double best = -std::numeric_limits<double>::infinity();
  int best_mask = -1;
  for (int mask = 0; mask < (1 << t_len); ++mask) {
    Eigen::MatrixXd alpha(2, 1), inv_l(2, 1);
    for (int s = 0; s < 2; ++s) {
      double n = 0.0, st = 0.0;
      for (int t = 0; t < t_len; ++t)
        if (((mask >> t) & 1) == s) {
          n += 1.0;
          st += rho(t, 0);
        }
      inv_l(s, 0) = 1.0 / (1.0 + ratio * n * phi);
      alpha(s, 0) = ratio * inv_l(s, 0) * st;
    }
    const Eigen::MatrixXd e = VbEmissions(rho, phi_v, alpha, inv_l, cfg.fa);
    double j = std::log(0.5) + e(0, mask & 1);
    for (int t = 1; t < t_len; ++t) {
      const int a = (mask >> (t - 1)) & 1, b = (mask >> t) & 1;
      j += std::log((a == b ? cfg.loop_p : 0.0) + 0.5 * (1.0 - cfg.loop_p)) + e(t, b);
    }
    for (int s = 0; s < 2; ++s)
      j += 0.5 * cfg.fb *
           (std::log(inv_l(s, 0)) - inv_l(s, 0) - alpha(s, 0) * alpha(s, 0) + 1.0);
    if (j > best + 1e-12) {
      best = j;
      best_mask = mask;
    }
  }
  std::vector<int> z(t_len);
  for (int t = 0; t < t_len; ++t) z[t] = (best_mask >> t) & 1;
  return diarkit::Canonicalize(z).labels;
}

}  // namespace fixture

#endif  // DIARKIT_TESTS_FIXTURES_H_
