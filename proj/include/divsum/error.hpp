// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace divsum {

enum class ErrorCode {
  InvalidModulus,
  SingularCurve,
  NotOnCurve,
  ZeroInverse,
  NotFound,
  TwoTorsionPoint,
  InfinityPoint,
  ZeroDenominator,
  InvalidOrder,
  InvalidLabel,
  BadExponentCount,
  LimitTooLarge,
  SmallOrder,
  RangeExceedsR,
  InvalidArgument,
  ConfigError,
};

std::string_view errorName(ErrorCode code) noexcept;

/// Every recoverable failure in the library is reported through this type.
/// The code is stable and is what the CLI prints in per-row error columns.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(errorName(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view errorName(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidModulus: return "InvalidModulus";
    case ErrorCode::SingularCurve: return "SingularCurve";
    case ErrorCode::NotOnCurve: return "NotOnCurve";
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::TwoTorsionPoint: return "TwoTorsionPoint";
    case ErrorCode::InfinityPoint: return "InfinityPoint";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::BadExponentCount: return "BadExponentCount";
    case ErrorCode::LimitTooLarge: return "LimitTooLarge";
    case ErrorCode::SmallOrder: return "SmallOrder";
    case ErrorCode::RangeExceedsR: return "RangeExceedsR";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace divsum
