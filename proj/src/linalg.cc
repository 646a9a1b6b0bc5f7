// src/linalg.cc

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

#include "diarkit/linalg.h"

#include <numeric>
#include <ostream>
#include <string>

#include "diarkit/error.h"

namespace diarkit {

std::optional<GeneralizedEigenResult> GeneralizedEigen(const Eigen::MatrixXd &a,
                                                       const Eigen::MatrixXd &b) {
  Eigen::LLT<Eigen::MatrixXd> llt(Symmetrized(b));
  if (llt.info() != Eigen::Success) return std::nullopt;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      Symmetrized(a), Symmetrized(b), Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success) return std::nullopt;

  const Eigen::Index n = a.rows();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto &vals = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return vals[i] > vals[j]; });

  GeneralizedEigenResult out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::VectorXd v = solver.eigenvectors().col(order[k]);
    const double cutoff = 1e-12 * v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(v[i]) > cutoff) {
        if (v[i] < 0) v = -v;
        break;
      }
    }
    out.values[k] = vals[order[k]];
    out.vectors.col(k) = v;
  }
  return out;
}

std::optional<double> LogDetSpd(const Eigen::MatrixXd &m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) return std::nullopt;
  const Eigen::VectorXd diag = llt.matrixL().toDenseMatrix().diagonal();
  for (Eigen::Index i = 0; i < diag.size(); ++i)
    if (!(diag[i] > 0.0)) return std::nullopt;
  return 2.0 * diag.array().log().sum();
}

Eigen::VectorXd ReadVectorLine(LineReader &reader, Eigen::Index n,
                               std::string_view what) {
  std::string line = reader.Require(what);
  auto fields = SplitFields(line);
  if (static_cast<Eigen::Index>(fields.size()) != n)
    throw ParseError(std::string(what) + " needs " + std::to_string(n) +
                         " values, got " + std::to_string(fields.size()),
                     reader.line());
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = ParseReal(fields[i], reader.line());
  return v;
}

Eigen::MatrixXd ReadMatrixRows(LineReader &reader, Eigen::Index rows,
                               Eigen::Index cols, std::string_view what) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    m.row(r) = ReadVectorLine(reader, cols, what).transpose();
  return m;
}

void WriteVectorLine(std::ostream &os, const Eigen::VectorXd &v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << FormatReal(v[i]);
  }
  os << '\n';
}

void WriteMatrixRows(std::ostream &os, const Eigen::MatrixXd &m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    WriteVectorLine(os, m.row(r).transpose());
}

}  // namespace diarkit
