// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <vector>

#include "divsum/harness/config.hpp"
#include "divsum/harness/report.hpp"
#include "divsum/harness/verify.hpp"

namespace divsum::harness {

enum class RowMode {
  Sum,   // one row per (member, character, twist, N)
  Scan,  // additionally runs the squarefree and smooth audits, filters by theorem
};

// Rough operation count: point counting plus the sums requested.
double estimatedCost(const ExperimentConfig& config);

std::vector<ReportRow> computeRows(const ExperimentConfig& config, RowMode mode);

// Each returns the process exit status. Errors in the configuration itself
// propagate as divsum::Error.
int cmdVerify(const ExperimentConfig& config, std::ostream& out, std::ostream& err, const VerifyOptions& options = {});
int cmdSum(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmdScan(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmdTable(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace divsum::harness
