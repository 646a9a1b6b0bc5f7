// src/textio.cc

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

#include "diarkit/textio.h"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "diarkit/error.h"

namespace diarkit {

std::string FormatReal(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string FormatFixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  std::string s(buf);
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos)
    s.erase(0, 1);
  return s;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double ParseReal(std::string_view field, int line) {
  double v = 0.0;
  const char *first = field.data();
  if (!field.empty() && field[0] == '+') ++first;
  auto res = std::from_chars(first, field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size() ||
      !std::isfinite(v))
    throw ParseError("not a finite number: '" + std::string(field) + "'",
                     line);
  return v;
}

long long ParseInt(std::string_view field, int line) {
  long long v = 0;
  auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw ParseError("not an integer: '" + std::string(field) + "'", line);
  return v;
}

bool LineReader::Next(std::string *line) {
  if (!std::getline(is_, *line)) return false;
  ++line_;
  if (!line->empty() && line->back() == '\r') line->pop_back();
  return true;
}

std::string LineReader::Require(std::string_view what) {
  std::string line;
  if (!Next(&line))
    throw ParseError("unexpected end of input, expected " + std::string(what),
                     line_ + 1);
  return line;
}

std::vector<std::string> ReadHeader(LineReader &reader, std::string_view magic,
                                    size_t n_fields) {
  std::string line = reader.Require(std::string(magic) + " header");
  auto fields = SplitFields(line);
  if (fields.size() < 2 || fields[0] != magic)
    throw ParseError("expected '" + std::string(magic) + " v1' header",
                     reader.line());
  if (fields[1] != "v1")
    throw ParseError("unsupported " + std::string(magic) + " version '" +
                         std::string(fields[1]) + "'",
                     reader.line());
  if (fields.size() != n_fields)
    throw ParseError(std::string(magic) + " header needs " +
                         std::to_string(n_fields) + " fields",
                     reader.line());
  return {fields.begin(), fields.end()};
}

}  // namespace diarkit
