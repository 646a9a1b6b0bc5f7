// include/diarkit/textio.h

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

#ifndef DIARKIT_TEXTIO_H_
#define DIARKIT_TEXTIO_H_

// Small helpers shared by the versioned text formats (RTTM, POST, EMB, LBL,
// LDA, PLDA, SEG, SCORES, LABELS).

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace diarkit {

// Shortest decimal representation that parses back to the same double.
std::string FormatReal(double v);

// Fixed-point with `decimals` digits after the point ("%.3f" style).
std::string FormatFixed(double v, int decimals);

std::vector<std::string_view> SplitFields(std::string_view line);

// Both throw ParseError mentioning `line` on malformed input.
double ParseReal(std::string_view field, int line);
long long ParseInt(std::string_view field, int line);

// Line-oriented reader that tracks 1-based line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream &is) : is_(is) {}

  // Next line, or false at end of stream.  Strips a trailing '\r'.
  bool Next(std::string *line);
  // Next line; throws ParseError("unexpected end of input ...") at EOF.
  std::string Require(std::string_view what);
  int line() const { return line_; }

 private:
  std::istream &is_;
  int line_ = 0;
};

// Reads the header line and checks that its first two fields are
// `magic` and "v1".  Returns all fields of the header.
std::vector<std::string> ReadHeader(LineReader &reader, std::string_view magic,
                                    size_t n_fields);

}  // namespace diarkit

#endif  // DIARKIT_TEXTIO_H_
