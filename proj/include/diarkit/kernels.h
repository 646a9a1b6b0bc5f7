// include/diarkit/kernels.h

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

#ifndef DIARKIT_KERNELS_H_
#define DIARKIT_KERNELS_H_

// Data-parallel inner loops.  Each kernel has an OpenMP version and a
// plain serial reference with identical arithmetic; tests hold the two to
// agreement and bench/ compares their speed.

#include <Eigen/Dense>

namespace diarkit::kernels {

// PLDA log-likelihood ratio between every pair of rows of `u`, where `u`
// is already expressed in the latent basis (W = I, B = diag(phi)).
Eigen::MatrixXd PldaLlrMatrix(const Eigen::MatrixXd &u,
                              const Eigen::VectorXd &phi);
Eigen::MatrixXd PldaLlrMatrixSerial(const Eigen::MatrixXd &u,
                                    const Eigen::VectorXd &phi);

// VB-HMM frame log-emissions, T x S:
//   fa * (rho_t . alpha_s - 0.5 * sum_d phi_d (inv_l_sd + alpha_sd^2) + g_t)
// rho: T x D, alpha / inv_l: S x D, phi: D, g: T.
Eigen::MatrixXd VbLogEmissions(const Eigen::MatrixXd &rho,
                               const Eigen::VectorXd &g,
                               const Eigen::MatrixXd &alpha,
                               const Eigen::MatrixXd &inv_l,
                               const Eigen::VectorXd &phi, double fa);
Eigen::MatrixXd VbLogEmissionsSerial(const Eigen::MatrixXd &rho,
                                     const Eigen::VectorXd &g,
                                     const Eigen::MatrixXd &alpha,
                                     const Eigen::MatrixXd &inv_l,
                                     const Eigen::VectorXd &phi, double fa);

}  // namespace diarkit::kernels

#endif  // DIARKIT_KERNELS_H_
