// Copyright (c) 2026 The Eigenlane Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EIGENLANE__ERROR_HPP_
#define EIGENLANE__ERROR_HPP_

#include <stdexcept>
#include <string>

namespace eigenlane
{

enum class ErrorCode {
  InvalidAnnotation,
  GridMismatch,
  RankDeficient,
  DimensionMismatch,
  TooManyClusters,
  EmptyInput,
  TooManyNodes,
  IndexError,
  ParseError,
  SchemaError,
  VersionError,
  IoError,
};

const char * to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string & what)
  : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }

  /// True for every code except IoError.
  bool is_validation() const noexcept { return code_ != ErrorCode::IoError; }

private:
  ErrorCode code_;
};

inline const char * to_string(ErrorCode code) noexcept
{
  switch (code) {
    case ErrorCode::InvalidAnnotation: return "InvalidAnnotation";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TooManyClusters: return "TooManyClusters";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::TooManyNodes: return "TooManyNodes";
    case ErrorCode::IndexError: return "IndexError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::VersionError: return "VersionError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Error";
}

}  // namespace eigenlane

#endif  // EIGENLANE__ERROR_HPP_
