// src/error.cc

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

#include "diarkit/error.h"

namespace diarkit {

namespace {
std::string WithLine(const std::string &what, int line) {
  if (line <= 0) return what;
  return "line " + std::to_string(line) + ": " + what;
}
}  // namespace

ParseError::ParseError(const std::string &what, int line)
    : Error(WithLine(what, line)), line_(line) {}

StageError::StageError(const std::string &stage, const Error &cause)
    : Error("[" + stage + "] " + cause.what()),
      stage_(stage),
      numeric_(dynamic_cast<const NumericError *>(&cause) != nullptr ||
               (dynamic_cast<const StageError *>(&cause) != nullptr &&
                static_cast<const StageError &>(cause).numeric())) {}

int ExitCodeFor(const Error &e) {
  if (dynamic_cast<const NumericError *>(&e)) return kExitNumeric;
  if (auto *s = dynamic_cast<const StageError *>(&e))
    return s->numeric() ? kExitNumeric : kExitData;
  return kExitData;
}

}  // namespace diarkit
