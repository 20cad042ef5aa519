// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

// CSV and JSON writers. Every table starts with the artifact version and the
// config hash. Floating values use %.12g; absent values are empty cells.

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "divsum/harness/verify.hpp"

namespace divsum::harness {

inline constexpr std::string_view kVersion = "0.1.0";

struct ReportRow {
  std::uint64_t p = 0, a = 0, b = 0, px = 0, py = 0;
  std::uint32_t d = 0, label = 0;
  std::uint64_t ordP = 0, R = 0;
  std::string twist;
  std::uint64_t N = 0;
  std::optional<std::complex<double>> S;
  std::optional<std::uint64_t> zeroCount;
  std::string theorem;
  std::optional<double> rhs;
  std::optional<double> ratio;
  std::vector<std::string> flags;
  double ms = 0;
  // squarefree rows in scans
  std::optional<std::complex<double>> t1, t2;
};

struct TheoremSummary {
  std::string theorem;
  std::uint64_t rows = 0;
  std::uint64_t ratioRows = 0;
  std::uint64_t violatedRows = 0;  // some hypothesis flagged
  std::uint64_t errorRows = 0;
  std::optional<double> maxRatio;
  std::optional<double> medianRatio;
  bool absWithinN = true;  // |S| <= N on every evaluated row
};

// Column names in order; the scan layout appends T1_re,T1_im,T2_re,T2_im.
std::vector<std::string_view> csvColumns(bool withSplit);

std::string formatNumber(double v);

void writeRowsCsv(std::ostream& out, const std::vector<ReportRow>& rows, const std::string& hash, bool withSplit);
void writeRowsJson(std::ostream& out, const std::vector<ReportRow>& rows, const std::string& hash,
                   const std::vector<TheoremSummary>& summary);

std::vector<TheoremSummary> summarize(const std::vector<ReportRow>& rows);
void writeSummaryCsv(std::ostream& out, const std::vector<TheoremSummary>& summary, const std::string& hash);
void writeSummaryJson(std::ostream& out, const std::vector<TheoremSummary>& summary, const std::string& hash);

void writeVerifyCsv(std::ostream& out, const VerifyReport& report, const std::string& hash);
void writeVerifyJson(std::ostream& out, const VerifyReport& report, const std::string& hash);

}  // namespace divsum::harness
