// src/plda.cc

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

#include "diarkit/plda.h"

#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>

#include "diarkit/error.h"
#include "diarkit/kernels.h"
#include "diarkit/linalg.h"
#include "diarkit/textio.h"

namespace diarkit {

void PldaModel::Validate() const {
  const Eigen::Index d = mu.size();
  if (d == 0) throw ArgumentError("PLDA model is empty");
  if (between.rows() != d || between.cols() != d || within.rows() != d ||
      within.cols() != d)
    throw ArgumentError("PLDA model has inconsistent dimensions");
  if (!mu.allFinite() || !between.allFinite() || !within.allFinite())
    throw ArgumentError("PLDA model has non-finite parameters");
  const double scale = std::max(1.0, within.cwiseAbs().maxCoeff() +
                                         between.cwiseAbs().maxCoeff());
  if ((between - between.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale ||
      (within - within.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw ArgumentError("PLDA covariances must be symmetric");
  if (!LogDetSpd(Symmetrized(within)))
    throw NumericError("PLDA within-class covariance is not positive definite");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Symmetrized(between),
                                                     Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-9 * scale)
    throw NumericError("PLDA between-class covariance is not PSD");
}

Eigen::MatrixXd PldaLatentBasis::Apply(const Eigen::MatrixXd &rows) const {
  return (rows.rowwise() - mu.transpose()) * transform.transpose();
}

PldaLatentBasis DiagonalizePlda(const PldaModel &model, double min_phi) {
  auto eig = GeneralizedEigen(model.between, model.within);
  if (!eig)
    throw NumericError("PLDA within-class covariance is not positive definite");
  PldaLatentBasis basis;
  basis.mu = model.mu;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < eig->values.size(); ++k)
    if (min_phi < 0.0 || eig->values[k] > min_phi) keep.push_back(k);
  basis.transform.resize(keep.size(), model.Dim());
  basis.phi.resize(keep.size());
  for (size_t i = 0; i < keep.size(); ++i) {
    basis.transform.row(i) = eig->vectors.col(keep[i]).transpose();
    basis.phi[i] = std::max(0.0, eig->values[keep[i]]);
  }
  return basis;
}

namespace {

struct SpeakerStats {
  std::vector<double> counts;
  Eigen::MatrixXd means;    // one row per speaker
  Eigen::MatrixXd scatter;  // summed within-speaker scatter
  double total = 0.0;
};

SpeakerStats Accumulate(const Eigen::MatrixXd &data,
                        std::span<const std::string> labels) {
  if (static_cast<size_t>(data.rows()) != labels.size())
    throw ArgumentError("PLDA: label count does not match sample count");
  std::map<std::string, std::vector<Eigen::Index>> groups;
  for (Eigen::Index i = 0; i < data.rows(); ++i) groups[labels[i]].push_back(i);
  const Eigen::Index d = data.cols();
  SpeakerStats st;
  st.means.resize(groups.size(), d);
  st.scatter = Eigen::MatrixXd::Zero(d, d);
  Eigen::Index s = 0;
  for (const auto &[label, rows] : groups) {
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    for (auto r : rows) mean += data.row(r).transpose();
    mean /= static_cast<double>(rows.size());
    for (auto r : rows) {
      Eigen::VectorXd c = data.row(r).transpose() - mean;
      st.scatter.noalias() += c * c.transpose();
    }
    st.counts.push_back(static_cast<double>(rows.size()));
    st.means.row(s++) = mean.transpose();
    st.total += static_cast<double>(rows.size());
  }
  return st;
}

double LogLikelihood(const PldaModel &model, const SpeakerStats &st) {
  const double d = model.Dim();
  auto logdet_w = LogDetSpd(model.within);
  if (!logdet_w) throw NumericError("PLDA within-class covariance is not PD");
  const PldaLatentBasis basis = DiagonalizePlda(model, -1.0);
  const Eigen::MatrixXd z = basis.Apply(st.means);
  Eigen::LLT<Eigen::MatrixXd> llt(model.within);
  double ll = -0.5 * llt.solve(st.scatter).trace();
  const double log2pi = std::log(2.0 * std::numbers::pi);
  for (size_t s = 0; s < st.counts.size(); ++s) {
    const double n = st.counts[s];
    double logdet = *logdet_w, quad = 0.0;
    for (Eigen::Index k = 0; k < basis.phi.size(); ++k) {
      const double v = 1.0 + n * basis.phi[k];
      logdet += std::log(v);
      quad += n * z(s, k) * z(s, k) / v;
    }
    // n-1 copies of log|W| for the deviations, log|W + nB| for the mean.
    ll -= 0.5 * (n * d * log2pi + (n - 1.0) * *logdet_w + logdet + quad);
  }
  return ll;
}

void EnsureWithinPd(Eigen::MatrixXd *within) {
  *within = Symmetrized(*within);
  if (LogDetSpd(*within)) return;
  const double eps = 1e-6 * within->trace() / within->rows();
  if (eps > 0.0)
    within->diagonal().array() += eps;
  if (!(eps > 0.0) || !LogDetSpd(*within))
    throw NumericError(
        "PLDA: within-class covariance is degenerate even after "
        "regularization");
}

}  // namespace

double PldaLogLikelihood(const PldaModel &model, const Eigen::MatrixXd &data,
                         std::span<const std::string> labels) {
  if (data.cols() != model.Dim())
    throw ArgumentError("PLDA: data dimension does not match model");
  return LogLikelihood(model, Accumulate(data, labels));
}

PldaModel TrainPlda(const Eigen::MatrixXd &data,
                    std::span<const std::string> labels, int iters,
                    std::vector<double> *loglik_trace) {
  if (iters < 1) throw ArgumentError("PLDA: iters must be >= 1");
  if (data.cols() == 0) throw ArgumentError("PLDA: empty data");
  if (!data.allFinite()) throw ArgumentError("PLDA: non-finite data");
  const SpeakerStats st = Accumulate(data, labels);
  const Eigen::Index n_spk = st.means.rows(), d = data.cols();
  if (n_spk < 2) throw ArgumentError("PLDA needs at least 2 speakers");
  for (double c : st.counts)
    if (c < 2) throw ArgumentError("PLDA needs at least 2 vectors per speaker");

  PldaModel model;
  model.mu = st.means.colwise().mean().transpose();
  model.within = st.scatter / st.total;
  EnsureWithinPd(&model.within);
  {
    Eigen::MatrixXd centered = st.means.rowwise() - model.mu.transpose();
    model.between = centered.transpose() * centered / static_cast<double>(n_spk);
  }
  if (loglik_trace) {
    loglik_trace->clear();
    loglik_trace->push_back(LogLikelihood(model, st));
  }

  for (int it = 0; it < iters; ++it) {
    // E-step in the basis where W = I and B = diag(phi).
    const PldaLatentBasis basis = DiagonalizePlda(model, -1.0);
    const Eigen::MatrixXd &v = basis.transform;           // rows
    const Eigen::MatrixXd back = model.within * v.transpose();  // z -> x
    const Eigen::MatrixXd z = st.means * v.transpose();
    const Eigen::VectorXd mu_z = v * model.mu;

    Eigen::MatrixXd y_hat(n_spk, d);
    Eigen::VectorXd post_var_sum = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd weighted_var_sum = Eigen::VectorXd::Zero(d);
    for (Eigen::Index s = 0; s < n_spk; ++s) {
      const double n = st.counts[s];
      for (Eigen::Index k = 0; k < d; ++k) {
        const double phi = basis.phi[k];
        const double gain = n * phi / (n * phi + 1.0);
        const double var = phi / (n * phi + 1.0);
        y_hat(s, k) = mu_z[k] + gain * (z(s, k) - mu_z[k]);
        post_var_sum[k] += var;
        weighted_var_sum[k] += n * var;
      }
    }

    // M-step.
    const Eigen::VectorXd new_mu_z = y_hat.colwise().mean().transpose();
    Eigen::MatrixXd cy = y_hat.rowwise() - new_mu_z.transpose();
    Eigen::MatrixXd b_z = cy.transpose() * cy;
    b_z.diagonal() += post_var_sum;
    b_z /= static_cast<double>(n_spk);

    Eigen::MatrixXd resid = z - y_hat;
    Eigen::MatrixXd w_z = v * st.scatter * v.transpose();
    for (Eigen::Index s = 0; s < n_spk; ++s)
      w_z.noalias() += st.counts[s] * resid.row(s).transpose() * resid.row(s);
    w_z.diagonal() += weighted_var_sum;
    w_z /= st.total;

    model.mu = back * new_mu_z;
    model.between = Symmetrized(back * b_z * back.transpose());
    model.within = back * w_z * back.transpose();
    EnsureWithinPd(&model.within);
    if (loglik_trace) {
      const double ll = LogLikelihood(model, st);
      if (!std::isfinite(ll))
        throw NumericError("PLDA: non-finite log-likelihood at iteration " +
                           std::to_string(it + 1));
      loglik_trace->push_back(ll);
    }
  }
  return model;
}

PldaModel InterpolatePlda(const PldaModel &a, const PldaModel &b, double alpha) {
  if (a.Dim() != b.Dim())
    throw ArgumentError("PLDA interpolation: dimensions differ (" +
                        std::to_string(a.Dim()) + " vs " +
                        std::to_string(b.Dim()) + ")");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw ArgumentError("PLDA interpolation weight must be in [0,1]");
  auto mix = [alpha](const auto &x, const auto &y) {
    // Equal entries are copied so that mixing a model with itself is exact.
    return x.binaryExpr(y, [alpha](double p, double q) {
      return p == q ? p : alpha * p + (1.0 - alpha) * q;
    }).eval();
  };
  PldaModel out;
  out.mu = mix(a.mu, b.mu);
  out.between = mix(a.between, b.between);
  out.within = mix(a.within, b.within);
  return out;
}

ScoreMatrix PldaScoreMatrix(const PldaModel &model, const Eigen::MatrixXd &rows) {
  if (rows.cols() != model.Dim())
    throw ArgumentError("PLDA scoring: vector dimension " +
                        std::to_string(rows.cols()) + " does not match model " +
                        std::to_string(model.Dim()));
  const PldaLatentBasis basis = DiagonalizePlda(model, -1.0);
  return {kernels::PldaLlrMatrix(basis.Apply(rows), basis.phi)};
}

double PldaPairScore(const PldaModel &model, const Eigen::VectorXd &x1,
                     const Eigen::VectorXd &x2) {
  Eigen::MatrixXd rows(2, model.Dim());
  rows.row(0) = x1.transpose();
  rows.row(1) = x2.transpose();
  return PldaScoreMatrix(model, rows).values(0, 1);
}

PldaModel ReadPlda(std::istream &is) {
  LineReader reader(is);
  auto header = ReadHeader(reader, "PLDA", 3);
  long long d = ParseInt(header[2], reader.line());
  if (d <= 0) throw ParseError("PLDA dimension must be positive", reader.line());
  PldaModel model;
  model.mu = ReadVectorLine(reader, d, "PLDA mean");
  model.between = ReadMatrixRows(reader, d, d, "PLDA between-class row");
  model.within = ReadMatrixRows(reader, d, d, "PLDA within-class row");
  try {
    model.Validate();
  } catch (const Error &e) {
    throw ParseError(e.what(), reader.line());
  }
  return model;
}

void WritePlda(std::ostream &os, const PldaModel &model) {
  os << "PLDA v1 " << model.Dim() << '\n';
  WriteVectorLine(os, model.mu);
  WriteMatrixRows(os, model.between);
  WriteMatrixRows(os, model.within);
}

ScoreMatrix ReadScores(std::istream &is) {
  LineReader reader(is);
  auto header = ReadHeader(reader, "SCORES", 3);
  long long n = ParseInt(header[2], reader.line());
  if (n < 0) throw ParseError("negative score matrix size", reader.line());
  return {ReadMatrixRows(reader, n, n, "score row")};
}

void WriteScores(std::ostream &os, const ScoreMatrix &scores) {
  os << "SCORES v1 " << scores.n() << '\n';
  WriteMatrixRows(os, scores.values);
}

}  // namespace diarkit
