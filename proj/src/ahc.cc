// src/ahc.cc

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

#include "diarkit/ahc.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>

#include "diarkit/error.h"
#include "diarkit/textio.h"

namespace diarkit {

namespace {

double Percentile(const std::vector<double> &sorted, double q) {
  const double pos = q * (sorted.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - lo) * (sorted[hi] - sorted[lo]);
}

double LogNormal(double x, double mean, double var) {
  const double d = x - mean;
  return -0.5 * (std::log(2.0 * std::numbers::pi * var) + d * d / var);
}

double LogAddExp(double a, double b) {
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

double TiedGmmLogLikelihood(const TiedGmm1d &gmm, std::span<const double> scores) {
  const double lw_lo = std::log(gmm.weight_low());
  const double lw_hi = std::log(gmm.weight_high);
  double ll = 0.0;
  for (double x : scores)
    ll += LogAddExp(lw_lo + LogNormal(x, gmm.mean_low, gmm.sigma2),
                    lw_hi + LogNormal(x, gmm.mean_high, gmm.sigma2));
  return ll;
}

double TiedGmmPosteriorHigh(const TiedGmm1d &gmm, double x) {
  const double lo = std::log(gmm.weight_low()) + LogNormal(x, gmm.mean_low, gmm.sigma2);
  const double hi = std::log(gmm.weight_high) + LogNormal(x, gmm.mean_high, gmm.sigma2);
  return 1.0 / (1.0 + std::exp(lo - hi));
}

TiedGmm1d FitTiedGmm(std::span<const double> scores, int iters,
                     std::uint64_t /*seed*/, std::vector<double> *loglik_trace) {
  if (iters < 1) throw ArgumentError("GMM: iters must be >= 1");
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.size() < 2 || sorted.front() == sorted.back())
    throw ArgumentError("GMM: scores need at least two distinct values");
  for (double x : sorted)
    if (!std::isfinite(x)) throw ArgumentError("GMM: non-finite score");

  const double n = static_cast<double>(sorted.size());
  double mean = 0.0;
  for (double x : sorted) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : sorted) var += (x - mean) * (x - mean);
  var /= n;
  const double var_floor = 1e-6 * var;

  TiedGmm1d gmm;
  gmm.mean_low = Percentile(sorted, 0.1);
  gmm.mean_high = Percentile(sorted, 0.9);
  if (gmm.mean_low == gmm.mean_high) {
    gmm.mean_low = sorted.front();
    gmm.mean_high = sorted.back();
  }
  gmm.weight_high = 0.5;
  gmm.sigma2 = var;

  double prev = TiedGmmLogLikelihood(gmm, sorted);
  if (loglik_trace) loglik_trace->assign(1, prev);
  std::vector<double> resp(sorted.size());
  for (int it = 0; it < iters; ++it) {
    double n_hi = 0.0, sum_hi = 0.0, sum_lo = 0.0;
    for (size_t i = 0; i < sorted.size(); ++i) {
      resp[i] = TiedGmmPosteriorHigh(gmm, sorted[i]);
      n_hi += resp[i];
      sum_hi += resp[i] * sorted[i];
      sum_lo += (1.0 - resp[i]) * sorted[i];
    }
    const double n_lo = n - n_hi;
    // Keep both components alive; a vanished component leaves the previous
    // estimate in place.
    if (n_hi <= 0.0 || n_lo <= 0.0) break;
    TiedGmm1d next;
    next.mean_high = sum_hi / n_hi;
    next.mean_low = sum_lo / n_lo;
    next.weight_high = n_hi / n;
    double ss = 0.0;
    for (size_t i = 0; i < sorted.size(); ++i) {
      const double dh = sorted[i] - next.mean_high;
      const double dl = sorted[i] - next.mean_low;
      ss += resp[i] * dh * dh + (1.0 - resp[i]) * dl * dl;
    }
    next.sigma2 = std::max(ss / n, var_floor);
    if (!(next.weight_high > 0.0 && next.weight_high < 1.0)) break;
    gmm = next;
    const double ll = TiedGmmLogLikelihood(gmm, sorted);
    if (loglik_trace) loglik_trace->push_back(ll);
    if (ll - prev <= 1e-12 * std::abs(prev)) break;
    prev = ll;
  }
  if (gmm.mean_low > gmm.mean_high) {
    std::swap(gmm.mean_low, gmm.mean_high);
    gmm.weight_high = 1.0 - gmm.weight_high;
  }
  return gmm;
}

double DeriveThreshold(const TiedGmm1d &gmm) {
  const double gap = gmm.mean_high - gmm.mean_low;
  if (!(gap != 0.0))
    throw NumericError("GMM threshold: component means coincide");
  if (!(gmm.sigma2 > 0.0) || !(gmm.weight_high > 0.0 && gmm.weight_high < 1.0))
    throw ArgumentError("GMM threshold: invalid mixture parameters");
  return 0.5 * (gmm.mean_low + gmm.mean_high) +
         gmm.sigma2 * std::log(gmm.weight_low() / gmm.weight_high) / gap;
}

std::vector<double> UpperTriangle(const ScoreMatrix &scores) {
  std::vector<double> out;
  const Eigen::Index n = scores.n();
  out.reserve(n * (n - 1) / 2);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) out.push_back(scores.values(i, j));
  return out;
}

ClusterAssignment Canonicalize(std::span<const int> labels) {
  ClusterAssignment out;
  std::vector<std::pair<int, int>> seen;  // (old, new)
  out.labels.reserve(labels.size());
  for (int l : labels) {
    auto it = std::find_if(seen.begin(), seen.end(),
                           [l](const auto &p) { return p.first == l; });
    if (it == seen.end()) {
      seen.emplace_back(l, static_cast<int>(seen.size()));
      out.labels.push_back(seen.back().second);
    } else {
      out.labels.push_back(it->second);
    }
  }
  out.n_clusters = static_cast<int>(seen.size());
  return out;
}

ClusterAssignment AhcCluster(const ScoreMatrix &scores, double threshold) {
  const Eigen::Index n = scores.n();
  if (scores.values.cols() != n) throw ArgumentError("AHC: score matrix not square");
  // Slot i holds the cluster whose smallest member is i.
  Eigen::MatrixXd sums = scores.values;
  std::vector<double> size(n, 1.0);
  std::vector<char> alive(n, 1);
  std::vector<int> owner(n);
  for (Eigen::Index i = 0; i < n; ++i) owner[i] = static_cast<int>(i);

  Eigen::Index n_alive = n;
  while (n_alive > 1) {
    Eigen::Index best_a = -1, best_b = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (Eigen::Index a = 0; a < n; ++a) {
      if (!alive[a]) continue;
      for (Eigen::Index b = a + 1; b < n; ++b) {
        if (!alive[b]) continue;
        const double avg = sums(a, b) / (size[a] * size[b]);
        if (avg > best || best_a < 0) {
          best = avg;
          best_a = a;
          best_b = b;
        }
      }
    }
    if (best < threshold) break;
    for (Eigen::Index c = 0; c < n; ++c) {
      if (!alive[c] || c == best_a || c == best_b) continue;
      sums(best_a, c) += sums(best_b, c);
      sums(c, best_a) = sums(best_a, c);
    }
    size[best_a] += size[best_b];
    alive[best_b] = 0;
    for (auto &o : owner)
      if (o == best_b) o = static_cast<int>(best_a);
    --n_alive;
  }
  return Canonicalize(owner);
}

ClusterAssignment ReadAssignment(std::istream &is, std::string *recording_id) {
  LineReader reader(is);
  auto header = ReadHeader(reader, "LABELS", 5);
  if (recording_id) *recording_id = header[2];
  long long count = ParseInt(header[3], reader.line());
  long long k = ParseInt(header[4], reader.line());
  if (count < 0 || k < 0) throw ParseError("bad LABELS header", reader.line());
  ClusterAssignment a;
  a.n_clusters = static_cast<int>(k);
  std::vector<char> used(k, 0);
  for (long long i = 0; i < count; ++i) {
    std::string line = reader.Require("cluster label");
    auto fields = SplitFields(line);
    if (fields.size() != 1)
      throw ParseError("expected one label per line", reader.line());
    long long l = ParseInt(fields[0], reader.line());
    if (l < 0 || l >= k) throw ParseError("cluster label out of range", reader.line());
    used[l] = 1;
    a.labels.push_back(static_cast<int>(l));
  }
  if (std::find(used.begin(), used.end(), 0) != used.end())
    throw ParseError("LABELS: some cluster index is never used");
  return a;
}

void WriteAssignment(std::ostream &os, const ClusterAssignment &a,
                     const std::string &recording_id) {
  os << "LABELS v1 " << recording_id << ' ' << a.labels.size() << ' '
     << a.n_clusters << '\n';
  for (int l : a.labels) os << l << '\n';
}

}  // namespace diarkit
