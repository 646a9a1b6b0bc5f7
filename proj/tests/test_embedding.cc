// tests/test_embedding.cc

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

#include <random>
#include <sstream>

#include "doctest.h"
#include "diarkit/embedding.h"
#include "diarkit/error.h"
#include "diarkit/lda.h"
#include "diarkit/plda.h"
#include "fixtures.h"
#include "oracles.h"

using namespace diarkit;

namespace {

using fixture::Labeled;
using fixture::RandomPlda;

// Joint density of every speaker's stacked vectors:
// cov = I_n (x) W + 11^T (x) B.
double OracleLogLik(const PldaModel &m, const Labeled &data) {
  std::map<std::string, std::vector<int>> rows;
  for (size_t i = 0; i < data.labels.size(); ++i) rows[data.labels[i]].push_back(i);
  const int d = m.Dim();
  double total = 0.0;
  for (const auto &[spk, idx] : rows) {
    const int n = static_cast<int>(idx.size());
    Eigen::MatrixXd cov(n * d, n * d);
    Eigen::VectorXd x(n * d), mu(n * d);
    for (int a = 0; a < n; ++a) {
      x.segment(a * d, d) = data.data.row(idx[a]).transpose();
      mu.segment(a * d, d) = m.mu;
      for (int b = 0; b < n; ++b)
        cov.block(a * d, b * d, d, d) = m.between + (a == b ? m.within : Eigen::MatrixXd::Zero(d, d));
    }
    total += oracle::LogGauss(x, mu, cov);
  }
  return total;
}

}  // namespace

TEST_CASE("embedding sequence validation and files") {
  EmbeddingSequence seq{"rec", 3, {}};
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 20; ++i)
    seq.entries.push_back({TimeInterval(0.5 * i, 0.5 * i + 1.5),
                           Eigen::Vector3d(n(rng), n(rng), n(rng))});
  CHECK_NOTHROW(seq.Validate());
  std::ostringstream a;
  WriteEmbeddings(a, seq);
  std::istringstream in(a.str());
  auto back = ReadEmbeddings(in);
  CHECK(back.Matrix() == seq.Matrix());
  CHECK(back.Windows() == seq.Windows());
  std::ostringstream b;
  WriteEmbeddings(b, back);
  CHECK(a.str() == b.str());

  auto bad = seq;
  bad.entries[3].vector = Eigen::Vector2d(1, 2);
  CHECK_THROWS_AS(bad.Validate(), ArgumentError);
  bad = seq;
  std::swap(bad.entries[2], bad.entries[5]);
  CHECK_THROWS_AS(bad.Validate(), ArgumentError);
  std::istringstream short_row("EMB v1 r 2 1\n0 1 0.5\n");
  CHECK_THROWS_AS(ReadEmbeddings(short_row), ParseError);

  std::vector<std::string> labels{"a", "b", "a"};
  std::ostringstream l;
  WriteLabels(l, labels);
  std::istringstream li(l.str());
  CHECK(ReadLabels(li) == labels);
}

TEST_CASE("lda: symmetric two-class problem picks the first axis") {
  Eigen::MatrixXd data(8, 2);
  std::vector<std::string> labels;
  const double off[4][2] = {{0.3, 0}, {-0.3, 0}, {0, 0.3}, {0, -0.3}};
  for (int c = 0; c < 2; ++c)
    for (int k = 0; k < 4; ++k) {
      data.row(c * 4 + k) << (c ? -1.0 : 1.0) + off[k][0], off[k][1];
      labels.push_back(c ? "b" : "a");
    }
  LdaReport rep;
  auto m = TrainLda(data, labels, 1, &rep);
  REQUIRE(m.OutputDim() == 1);
  CHECK(std::abs(m.projection(0, 1)) < 1e-9);
  CHECK(m.projection(0, 0) > 0.0);
  CHECK(m.mean.norm() < 1e-12);
  CHECK_FALSE(rep.clamped);
}

TEST_CASE("lda: projected scatter ratio equals the top eigenvalue") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXd data(60, 2);
    std::vector<std::string> labels;
    for (int c = 0; c < 3; ++c) {
      const double mx = 2 * n(rng), my = 2 * n(rng);
      for (int k = 0; k < 20; ++k) {
        data.row(c * 20 + k) << mx + n(rng), my + 0.5 * n(rng);
        labels.push_back("c" + std::to_string(c));
      }
    }
    LdaReport rep;
    auto m = TrainLda(data, labels, 1, &rep);
    // Scatters by hand.
    Eigen::Vector2d mean = data.colwise().mean();
    Eigen::Matrix2d sb = Eigen::Matrix2d::Zero(), sw = Eigen::Matrix2d::Zero();
    for (int c = 0; c < 3; ++c) {
      Eigen::Vector2d mc = data.middleRows(c * 20, 20).colwise().mean();
      sb += 20.0 * (mc - mean) * (mc - mean).transpose();
      for (int k = 0; k < 20; ++k) {
        Eigen::Vector2d r = data.row(c * 20 + k).transpose() - mc;
        sw += r * r.transpose();
      }
    }
    sb /= 60.0;
    sw /= 60.0;
    const double lambda = 1e-6 * sw.trace() / 2.0;
    Eigen::Matrix2d swr = sw + lambda * Eigen::Matrix2d::Identity();
    // Largest root of det(Sb - l Swr) = 0.
    const Eigen::Matrix2d a = swr.inverse() * sb;
    const double tr = a.trace(), det = a.determinant();
    const double top = 0.5 * (tr + std::sqrt(tr * tr - 4 * det));
    REQUIRE(rep.eigenvalues.size() == 1);
    CHECK(rep.eigenvalues[0] == doctest::Approx(top).epsilon(1e-9));
    const Eigen::Vector2d v = m.projection.row(0).transpose();
    CHECK(v.dot(sb * v) / v.dot(swr * v) == doctest::Approx(top).epsilon(1e-9));
    CHECK(v.dot(swr * v) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("lda: identity scatters give a rotation") {
  const double r = std::sqrt(2.0);
  Eigen::MatrixXd data(12, 2);
  std::vector<std::string> labels;
  for (int c = 0; c < 3; ++c) {
    const double ang = 2.0 * std::numbers::pi * c / 3.0;
    const Eigen::Vector2d mc(r * std::cos(ang), r * std::sin(ang));
    const Eigen::Vector2d off[4] = {{r, 0}, {-r, 0}, {0, r}, {0, -r}};
    for (int k = 0; k < 4; ++k) {
      data.row(c * 4 + k) = (mc + off[k]).transpose();
      labels.push_back("c" + std::to_string(c));
    }
  }
  auto m = TrainLda(data, labels, 2);
  const double lambda = 1e-6 * 2.0 / 2.0;
  Eigen::MatrixXd g = m.projection * m.projection.transpose() * (1.0 + lambda);
  CHECK((g - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-9);
}

TEST_CASE("lda: clamping, errors and file round trip") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd data(30, 5);
  std::vector<std::string> labels;
  for (int i = 0; i < 30; ++i) {
    for (int j = 0; j < 5; ++j) data(i, j) = n(rng) + (i % 3) * (j == 0);
    labels.push_back("c" + std::to_string(i % 3));
  }
  LdaReport rep;
  auto m = TrainLda(data, labels, 128, &rep);
  CHECK(rep.clamped);
  CHECK(rep.requested_dim == 128);
  CHECK(m.OutputDim() == 2);
  CHECK(rep.output_dim == 2);
  std::ostringstream a;
  WriteLda(a, m);
  std::istringstream in(a.str());
  const LdaModel back = ReadLda(in);
  CHECK(back.projection == m.projection);
  std::ostringstream b;
  WriteLda(b, back);
  CHECK(a.str() == b.str());

  std::vector<std::string> one_class(30, "a");
  CHECK_THROWS_AS(TrainLda(data, one_class, 2), ArgumentError);
  std::vector<std::string> singleton = labels;
  singleton[0] = "lonely";
  CHECK_THROWS_AS(TrainLda(data, singleton, 2), ArgumentError);
  Eigen::MatrixXd flat = Eigen::MatrixXd::Zero(30, 5);
  CHECK_THROWS_AS(TrainLda(flat, labels, 2), NumericError);
}

TEST_CASE("projection and length normalization") {
  LdaModel id{Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Identity(3, 3)};
  Eigen::MatrixXd rows(2, 3);
  rows << 3, 0, 4, 1, 1, 1;
  auto p = Project(id, rows);
  CHECK((p.row(0) - Eigen::RowVector3d(0.6, 0, 0.8)).norm() < 1e-15);
  CHECK(p.row(1).norm() == doctest::Approx(1.0));
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(1, 3);
  CHECK_THROWS_AS(Project(id, zero), ArgumentError);
  Eigen::MatrixXd wrong(1, 2);
  wrong << 1, 2;
  CHECK_THROWS_AS(Project(id, wrong), ArgumentError);

  std::mt19937_64 rng(8);
  std::normal_distribution<double> n(0.0, 1.0);
  LdaModel m{Eigen::VectorXd::Zero(4), Eigen::MatrixXd(3, 4)};
  for (int i = 0; i < 12; ++i) m.projection(i / 4, i % 4) = n(rng);
  for (int i = 0; i < 4; ++i) m.mean[i] = n(rng);
  Eigen::MatrixXd r(100, 4);
  for (int i = 0; i < 400; ++i) r(i / 4, i % 4) = n(rng);
  r.row(7) = r.row(3);
  auto q = Project(m, r);
  for (int i = 0; i < q.rows(); ++i) CHECK(std::abs(q.row(i).norm() - 1.0) <= 1e-12);
  CHECK(q.row(7) == q.row(3));

  EmbeddingSequence seq{"rec", 4, {}};
  for (int i = 0; i < 5; ++i)
    seq.entries.push_back({TimeInterval(i, i + 1), r.row(i).transpose()});
  auto ps = Project(m, seq);
  CHECK(ps.dim == 3);
  CHECK(ps.Windows() == seq.Windows());
}

TEST_CASE("plda pair score equals the bivariate density oracle") {
  PldaModel m1{Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Ones(1, 1)};
  const Eigen::VectorXd one = Eigen::VectorXd::Ones(1);
  CHECK(std::abs(PldaPairScore(m1, one, one) - oracle::PldaJointLlr(m1, one, one)) <= 1e-9);
  CHECK(std::abs(PldaPairScore(m1, one, one) -
                 oracle::PldaQuadratureLlr1d(0, 1, 1, 1, 1)) <= 1e-6);

  std::mt19937_64 rng(31);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    for (int d : {1, 4}) {
      PldaModel m = RandomPlda(rng, d);
      Eigen::VectorXd x1(d), x2(d);
      for (int i = 0; i < d; ++i) {
        x1[i] = m.mu[i] + 1.5 * n(rng);
        x2[i] = m.mu[i] + 1.5 * n(rng);
      }
      const double got = PldaPairScore(m, x1, x2);
      CHECK(std::abs(got - oracle::PldaJointLlr(m, x1, x2)) <= 1e-6);
      if (d == 1)
        CHECK(std::abs(got - oracle::PldaQuadratureLlr1d(m.mu[0], m.between(0, 0),
                                                         m.within(0, 0), x1[0], x2[0])) <= 1e-6);
    }
  }
}

TEST_CASE("plda score matrix properties") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> n(0.0, 1.0);
  PldaModel m = RandomPlda(rng, 3);
  Eigen::MatrixXd x(9, 3);
  for (int i = 0; i < 27; ++i) x(i / 3, i % 3) = n(rng);
  const ScoreMatrix s = PldaScoreMatrix(m, x);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      CHECK(std::abs(s.values(i, j) - s.values(j, i)) <= 1e-9);
      CHECK(std::abs(s.values(i, j) - PldaPairScore(m, x.row(i).transpose(),
                                                    x.row(j).transpose())) <= 1e-9);
    }
  // Relabeling equivariance.
  std::vector<int> perm{3, 1, 4, 0, 8, 5, 2, 7, 6};
  Eigen::MatrixXd px(9, 3);
  for (int i = 0; i < 9; ++i) px.row(i) = x.row(perm[i]);
  const ScoreMatrix ps = PldaScoreMatrix(m, px);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      CHECK(std::abs(ps.values(i, j) - s.values(perm[i], perm[j])) <= 1e-9);

  PldaModel flat = m;
  flat.between.setZero();
  CHECK(PldaScoreMatrix(flat, x).values.cwiseAbs().maxCoeff() <= 1e-12);

  PldaModel centered = m;
  centered.mu.setZero();
  for (int i = 0; i < 9; ++i) {
    const Eigen::VectorXd v = x.row(i).transpose();
    CHECK(PldaPairScore(centered, v, v) >= PldaPairScore(centered, v, -v));
  }
  Eigen::MatrixXd wrong(2, 2);
  wrong.setOnes();
  CHECK_THROWS_AS(PldaScoreMatrix(m, wrong), ArgumentError);
}

TEST_CASE("plda EM: likelihood trace is non-decreasing and matches the joint density") {
  std::mt19937_64 rng(5);
  PldaModel truth = RandomPlda(rng, 2);
  Labeled data = fixture::SamplePlda(truth, 12, 4, 99);
  std::vector<double> trace;
  TrainPlda(data.data, data.labels, 8, &trace);
  REQUIRE(trace.size() == 9);
  for (size_t k = 1; k < trace.size(); ++k)
    CHECK(trace[k] >= trace[k - 1] - 1e-8 * std::abs(trace[k - 1]));
  for (int k = 1; k <= 8; ++k) {
    const PldaModel m = TrainPlda(data.data, data.labels, k);
    const double independent = OracleLogLik(m, data);
    CHECK(independent == doctest::Approx(trace[k]).epsilon(1e-9));
    CHECK(PldaLogLikelihood(m, data.data, data.labels) == doctest::Approx(independent).epsilon(1e-9));
  }
}

TEST_CASE("plda EM recovers generating parameters") {
  std::mt19937_64 rng(12);
  PldaModel truth = RandomPlda(rng, 3);
  Labeled data = fixture::SamplePlda(truth, 1000, 10, 2024);
  const PldaModel m = TrainPlda(data.data, data.labels, 30);
  CHECK((m.between - truth.between).norm() / truth.between.norm() <= 0.1);
  CHECK((m.within - truth.within).norm() / truth.within.norm() <= 0.1);
  CHECK((m.mu - truth.mu).norm() <= 0.1 * std::max(1.0, truth.mu.norm()));
}

TEST_CASE("plda EM: no between-speaker signal drives B to zero") {
  // Every speaker shares the same residual pattern, so speaker means coincide.
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd resid(20, 2);
  for (int i = 0; i < 40; ++i) resid(i / 2, i % 2) = n(rng);
  resid.rowwise() -= resid.colwise().mean();
  Eigen::MatrixXd data(200, 2);
  std::vector<std::string> labels;
  for (int s = 0; s < 10; ++s)
    for (int j = 0; j < 20; ++j) {
      data.row(s * 20 + j) = resid.row(j);
      labels.push_back("s" + std::to_string(s));
    }
  const PldaModel m = TrainPlda(data, labels, 20);
  CHECK(m.between.norm() <= 1e-9);
  const Eigen::Matrix2d w = resid.transpose() * resid / 20.0;
  CHECK((m.within - w).norm() <= 1e-9);
}

TEST_CASE("plda training errors") {
  Eigen::MatrixXd d(4, 2);
  d.setRandom();
  std::vector<std::string> one{"a", "a", "a", "a"};
  CHECK_THROWS_AS(TrainPlda(d, one, 3), ArgumentError);
  std::vector<std::string> thin{"a", "a", "a", "b"};
  CHECK_THROWS_AS(TrainPlda(d, thin, 3), ArgumentError);
  std::vector<std::string> ok{"a", "a", "b", "b"};
  CHECK_THROWS_AS(TrainPlda(d, ok, 0), ArgumentError);
}

TEST_CASE("plda interpolation identities") {
  std::mt19937_64 rng(23);
  const PldaModel a = RandomPlda(rng, 4), b = RandomPlda(rng, 4);
  for (double alpha : {0.0, 0.1, 0.37, 0.9, 1.0}) {
    const PldaModel same = InterpolatePlda(a, a, alpha);
    CHECK(same.mu == a.mu);
    CHECK(same.between == a.between);
    CHECK(same.within == a.within);
  }
  const PldaModel one = InterpolatePlda(a, b, 1.0), zero = InterpolatePlda(a, b, 0.0);
  CHECK(one.mu == a.mu);
  CHECK(one.between == a.between);
  CHECK(one.within == a.within);
  CHECK(zero.mu == b.mu);
  CHECK(zero.between == b.between);
  CHECK(zero.within == b.within);

  PldaModel i1{Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(2, 2)};
  PldaModel i3 = i1;
  i3.between *= 3.0;
  const PldaModel mix = InterpolatePlda(i1, i3, 0.9);
  CHECK((mix.between - 1.2 * Eigen::MatrixXd::Identity(2, 2)).norm() <= 1e-15);

  const PldaModel ab = InterpolatePlda(a, b, 0.3), ba = InterpolatePlda(b, a, 0.7);
  CHECK((ab.between - ba.between).norm() <= 1e-14);
  CHECK((ab.within - ba.within).norm() <= 1e-14);
  CHECK_NOTHROW(ab.Validate());
  PldaModel small{Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Ones(1, 1)};
  CHECK_THROWS_AS(InterpolatePlda(a, small, 0.5), ArgumentError);
  CHECK_THROWS_AS(InterpolatePlda(a, b, 1.5), ArgumentError);
}

TEST_CASE("plda and score files round trip byte-identically") {
  std::mt19937_64 rng(77);
  const PldaModel m = RandomPlda(rng, 5);
  std::ostringstream a;
  WritePlda(a, m);
  std::istringstream in(a.str());
  const PldaModel back = ReadPlda(in);
  CHECK(back.between == m.between);
  std::ostringstream b;
  WritePlda(b, back);
  CHECK(a.str() == b.str());

  Eigen::MatrixXd x(6, 5);
  x.setRandom();
  const ScoreMatrix s = PldaScoreMatrix(m, x);
  std::ostringstream sa;
  WriteScores(sa, s);
  std::istringstream si(sa.str());
  const ScoreMatrix sb = ReadScores(si);
  CHECK(sb.values == s.values);

  std::istringstream asym("PLDA v1 1\n0\n1\n-1\n");
  CHECK_THROWS(ReadPlda(asym));
}
