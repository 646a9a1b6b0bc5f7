// include/diarkit/error.h

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

#ifndef DIARKIT_ERROR_H_
#define DIARKIT_ERROR_H_

#include <stdexcept>
#include <string>

namespace diarkit {

// Base class for every error raised by the toolkit.  The CLI maps the
// concrete subclasses onto process exit codes (see ExitCodeFor).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated precondition on an argument (bad shape, unsorted input, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed file or stream content.  Carries the 1-based line number when
// one is known (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(const std::string &what, int line = 0);
  int line() const { return line_; }

 private:
  int line_;
};

// Numerical failure: non-PD covariance, non-finite objective, ...
class NumericError : public Error {
 public:
  using Error::Error;
};

// Prefixes the message with the pipeline stage that failed.
class StageError : public Error {
 public:
  StageError(const std::string &stage, const Error &cause);
  const std::string &stage() const { return stage_; }
  bool numeric() const { return numeric_; }

 private:
  std::string stage_;
  bool numeric_;
};

enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitNumeric = 3 };

int ExitCodeFor(const Error &e);

}  // namespace diarkit

#endif  // DIARKIT_ERROR_H_
