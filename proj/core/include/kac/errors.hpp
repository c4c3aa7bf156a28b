/*
   Copyright 2026 The kaclab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kac {

enum class ErrorCode {
  InvalidArgument,
  DegenerateInput,
  NonConvergence,
  ZeroConstantTerm,
  BoundaryRoot,
  CountMismatch,
  DegenerateTail,
  InsufficientMass,
  CoincidentRoots,
  QuadratureNonConvergence,
  ParseError,
  TooManyFailures,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the Monte Carlo driver in particular) can react per kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the root solver; remembers how bad the worst root was.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double worst_residual)
      : Error(ErrorCode::NonConvergence, what), worst_residual_(worst_residual) {}

  double worst_residual() const noexcept { return worst_residual_; }

 private:
  double worst_residual_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::BoundaryRoot: return "BoundaryRoot";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::DegenerateTail: return "DegenerateTail";
    case ErrorCode::InsufficientMass: return "InsufficientMass";
    case ErrorCode::CoincidentRoots: return "CoincidentRoots";
    case ErrorCode::QuadratureNonConvergence: return "QuadratureNonConvergence";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::TooManyFailures: return "TooManyFailures";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace kac
