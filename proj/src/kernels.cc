// src/kernels.cc

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

#include "diarkit/kernels.h"

#include <cmath>

namespace diarkit::kernels {

namespace {

struct LlrCoefficients {
  Eigen::VectorXd quad;   // weight of u_i^2 + u_j^2
  Eigen::VectorXd cross;  // weight of u_i u_j
  double constant = 0.0;
};

LlrCoefficients MakeLlrCoefficients(const Eigen::VectorXd &phi) {
  LlrCoefficients c;
  const Eigen::Index d = phi.size();
  c.quad.resize(d);
  c.cross.resize(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double a = 1.0 + phi[k];
    const double det = 1.0 + 2.0 * phi[k];
    c.quad[k] = 0.5 / a - 0.5 * a / det;
    c.cross[k] = phi[k] / det;
    c.constant += std::log(a) - 0.5 * std::log(det);
  }
  return c;
}

Eigen::VectorXd SelfTerms(const Eigen::MatrixXd &u, const LlrCoefficients &c) {
  Eigen::VectorXd s(u.rows());
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < u.cols(); ++k) acc += c.quad[k] * u(i, k) * u(i, k);
    s[i] = acc;
  }
  return s;
}

inline double PairLlr(const Eigen::MatrixXd &u, const LlrCoefficients &c,
                      const Eigen::VectorXd &self, Eigen::Index i,
                      Eigen::Index j) {
  double acc = 0.0;
  for (Eigen::Index k = 0; k < u.cols(); ++k) acc += c.cross[k] * u(i, k) * u(j, k);
  return c.constant + self[i] + self[j] + acc;
}

}  // namespace

Eigen::MatrixXd PldaLlrMatrixSerial(const Eigen::MatrixXd &u,
                                    const Eigen::VectorXd &phi) {
  const Eigen::Index n = u.rows();
  const LlrCoefficients c = MakeLlrCoefficients(phi);
  const Eigen::VectorXd self = SelfTerms(u, c);
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      out(i, j) = PairLlr(u, c, self, i, j);
      out(j, i) = out(i, j);
    }
  }
  return out;
}

Eigen::MatrixXd PldaLlrMatrix(const Eigen::MatrixXd &u,
                              const Eigen::VectorXd &phi) {
  const Eigen::Index n = u.rows();
  const LlrCoefficients c = MakeLlrCoefficients(phi);
  const Eigen::VectorXd self = SelfTerms(u, c);
  Eigen::MatrixXd out(n, n);
#pragma omp parallel for schedule(dynamic, 8)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = PairLlr(u, c, self, i, j);
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

namespace {

Eigen::VectorXd SpeakerTerms(const Eigen::MatrixXd &alpha,
                             const Eigen::MatrixXd &inv_l,
                             const Eigen::VectorXd &phi) {
  Eigen::VectorXd out(alpha.rows());
  for (Eigen::Index s = 0; s < alpha.rows(); ++s) {
    double acc = 0.0;
    for (Eigen::Index d = 0; d < alpha.cols(); ++d)
      acc += phi[d] * (inv_l(s, d) + alpha(s, d) * alpha(s, d));
    out[s] = 0.5 * acc;
  }
  return out;
}

inline double Emission(const Eigen::MatrixXd &rho, const Eigen::VectorXd &g,
                       const Eigen::MatrixXd &alpha,
                       const Eigen::VectorXd &speaker, double fa,
                       Eigen::Index t, Eigen::Index s) {
  double dot = 0.0;
  for (Eigen::Index d = 0; d < rho.cols(); ++d) dot += rho(t, d) * alpha(s, d);
  return fa * (dot - speaker[s] + g[t]);
}

}  // namespace

Eigen::MatrixXd VbLogEmissionsSerial(const Eigen::MatrixXd &rho,
                                     const Eigen::VectorXd &g,
                                     const Eigen::MatrixXd &alpha,
                                     const Eigen::MatrixXd &inv_l,
                                     const Eigen::VectorXd &phi, double fa) {
  const Eigen::VectorXd speaker = SpeakerTerms(alpha, inv_l, phi);
  Eigen::MatrixXd out(rho.rows(), alpha.rows());
  for (Eigen::Index t = 0; t < rho.rows(); ++t)
    for (Eigen::Index s = 0; s < alpha.rows(); ++s)
      out(t, s) = Emission(rho, g, alpha, speaker, fa, t, s);
  return out;
}

Eigen::MatrixXd VbLogEmissions(const Eigen::MatrixXd &rho,
                               const Eigen::VectorXd &g,
                               const Eigen::MatrixXd &alpha,
                               const Eigen::MatrixXd &inv_l,
                               const Eigen::VectorXd &phi, double fa) {
  const Eigen::VectorXd speaker = SpeakerTerms(alpha, inv_l, phi);
  Eigen::MatrixXd out(rho.rows(), alpha.rows());
#pragma omp parallel for schedule(static)
  for (Eigen::Index t = 0; t < rho.rows(); ++t)
    for (Eigen::Index s = 0; s < alpha.rows(); ++s)
      out(t, s) = Emission(rho, g, alpha, speaker, fa, t, s);
  return out;
}

}  // namespace diarkit::kernels
