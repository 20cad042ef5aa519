// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

// The exact-identity suites run by `divsum verify`. Every check is an exact
// equality in F_p or between bucket accumulators; a single mismatch fails it.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "divsum/harness/config.hpp"

namespace divsum::harness {

struct CheckResult {
  std::string name;
  std::string context;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  std::string detail;  // first failure

  bool ok() const noexcept { return failed == 0; }
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool ok() const noexcept;
  std::vector<CheckResult> failures() const;
};

struct VerifyOptions {
  // Replace psi_3 of every base by psi_3 + 1 (fault injection for tests).
  bool corruptPsi3 = false;
};

// Throws Error(ConfigError) when the ensemble is empty.
VerifyReport runVerify(const ExperimentConfig& config, const VerifyOptions& options = {});

}  // namespace divsum::harness
