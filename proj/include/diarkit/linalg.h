// include/diarkit/linalg.h

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

#ifndef DIARKIT_LINALG_H_
#define DIARKIT_LINALG_H_

#include <iosfwd>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "diarkit/textio.h"

namespace diarkit {

struct GeneralizedEigenResult {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // columns, v^T B v = 1
};

// Solves A v = lambda B v for symmetric A and symmetric positive definite
// B.  Eigenpairs are sorted by descending eigenvalue and every vector is
// signed so that its first coordinate with magnitude above 1e-12 * max is
// positive.  Returns nullopt when B is not positive definite.
std::optional<GeneralizedEigenResult> GeneralizedEigen(const Eigen::MatrixXd &a,
                                                       const Eigen::MatrixXd &b);

// log |M| via Cholesky; nullopt if M is not positive definite.
std::optional<double> LogDetSpd(const Eigen::MatrixXd &m);

inline Eigen::MatrixXd Symmetrized(const Eigen::MatrixXd &m) {
  return 0.5 * (m + m.transpose());
}

// Row-major decimal matrix/vector lines for the model formats.
Eigen::VectorXd ReadVectorLine(LineReader &reader, Eigen::Index n,
                               std::string_view what);
Eigen::MatrixXd ReadMatrixRows(LineReader &reader, Eigen::Index rows,
                               Eigen::Index cols, std::string_view what);
void WriteVectorLine(std::ostream &os, const Eigen::VectorXd &v);
void WriteMatrixRows(std::ostream &os, const Eigen::MatrixXd &m);

}  // namespace diarkit

#endif  // DIARKIT_LINALG_H_
