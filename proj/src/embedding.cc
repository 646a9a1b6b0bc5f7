// src/embedding.cc

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

#include "diarkit/embedding.h"

#include <istream>
#include <ostream>

#include "diarkit/error.h"
#include "diarkit/textio.h"

namespace diarkit {

void EmbeddingSequence::Validate() const {
  if (dim <= 0) throw ArgumentError("embedding dimension must be positive");
  for (size_t i = 0; i < entries.size(); ++i) {
    const auto &e = entries[i];
    if (e.vector.size() != dim)
      throw ArgumentError("embedding " + std::to_string(i) + " has dimension " +
                          std::to_string(e.vector.size()) + ", expected " +
                          std::to_string(dim));
    if (!e.vector.allFinite())
      throw ArgumentError("embedding " + std::to_string(i) + " is not finite");
    if (i > 0 && e.interval.start() < entries[i - 1].interval.start())
      throw ArgumentError("embedding intervals must be sorted by start");
  }
}

Eigen::MatrixXd EmbeddingSequence::Matrix() const {
  Eigen::MatrixXd m(entries.size(), dim);
  for (size_t i = 0; i < entries.size(); ++i)
    m.row(i) = entries[i].vector.transpose();
  return m;
}

std::vector<TimeInterval> EmbeddingSequence::Windows() const {
  std::vector<TimeInterval> out;
  out.reserve(entries.size());
  for (const auto &e : entries) out.push_back(e.interval);
  return out;
}

EmbeddingSequence ReadEmbeddings(std::istream &is) {
  LineReader reader(is);
  auto header = ReadHeader(reader, "EMB", 5);
  EmbeddingSequence seq;
  seq.recording_id = header[2];
  long long dim = ParseInt(header[3], reader.line());
  long long count = ParseInt(header[4], reader.line());
  if (dim <= 0 || count < 0)
    throw ParseError("bad EMB dimensions", reader.line());
  seq.dim = static_cast<int>(dim);
  seq.entries.reserve(count);
  for (long long i = 0; i < count; ++i) {
    std::string line = reader.Require("embedding row");
    auto fields = SplitFields(line);
    const int n = reader.line();
    if (fields.size() != static_cast<size_t>(dim + 2))
      throw ParseError("embedding row needs " + std::to_string(dim + 2) +
                           " fields, got " + std::to_string(fields.size()),
                       n);
    double start = ParseReal(fields[0], n), end = ParseReal(fields[1], n);
    if (!(start >= 0.0 && end > start))
      throw ParseError("embedding window must satisfy 0 <= start < end", n);
    Eigen::VectorXd v(dim);
    for (long long d = 0; d < dim; ++d) v[d] = ParseReal(fields[d + 2], n);
    seq.entries.push_back({TimeInterval(start, end), std::move(v)});
  }
  try {
    seq.Validate();
  } catch (const ArgumentError &e) {
    throw ParseError(e.what());
  }
  return seq;
}

void WriteEmbeddings(std::ostream &os, const EmbeddingSequence &seq) {
  os << "EMB v1 " << seq.recording_id << ' ' << seq.dim << ' '
     << seq.entries.size() << '\n';
  for (const auto &e : seq.entries) {
    os << FormatReal(e.interval.start()) << ' ' << FormatReal(e.interval.end());
    for (Eigen::Index d = 0; d < e.vector.size(); ++d)
      os << ' ' << FormatReal(e.vector[d]);
    os << '\n';
  }
}

std::vector<std::string> ReadLabels(std::istream &is) {
  LineReader reader(is);
  auto header = ReadHeader(reader, "LBL", 3);
  long long count = ParseInt(header[2], reader.line());
  if (count < 0) throw ParseError("negative label count", reader.line());
  std::vector<std::string> labels;
  labels.reserve(count);
  for (long long i = 0; i < count; ++i) {
    std::string line = reader.Require("label");
    auto fields = SplitFields(line);
    if (fields.size() != 1)
      throw ParseError("expected one label per line", reader.line());
    labels.emplace_back(fields[0]);
  }
  return labels;
}

void WriteLabels(std::ostream &os, const std::vector<std::string> &labels) {
  os << "LBL v1 " << labels.size() << '\n';
  for (const auto &l : labels) os << l << '\n';
}

}  // namespace diarkit
