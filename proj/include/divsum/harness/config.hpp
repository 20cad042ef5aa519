// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

// Experiment configuration: an INI file with sections [ensemble],
// [characters], [twists], [schedule] and [audit]. Keys are the field names
// below. Lists are whitespace separated.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace divsum::harness {

// An explicit curve and point, written "p:a:b:Px:Py".
struct CurveFixture {
  std::uint64_t p, a, b, px, py;
  friend bool operator==(const CurveFixture&, const CurveFixture&) = default;
};

struct ExperimentConfig {
  // [ensemble]
  std::vector<CurveFixture> curves;
  std::vector<std::uint64_t> primes;  // one random curve per listed prime
  std::uint64_t primeMin = 1000;
  std::uint64_t primeMax = 100000;
  unsigned curveCount = 20;
  unsigned pointsPerCurve = 1;
  double orderExponent = 0.1;  // eps in R >= p^(1/2 + eps)
  bool requireLargeOrder = true;
  bool requireLargePrimeFactor = false;
  std::uint64_t seed = 1;

  // [characters]
  std::vector<std::string> characters{"modp:d=2,label=1"};

  // [twists]
  std::vector<std::string> twists{"one"};

  // [schedule]
  std::vector<std::uint64_t> nValues;
  std::vector<double> nFractions{1.0};
  bool overrideRange = false;

  // [audit]
  std::vector<std::pair<double, double>> intervals{{2, 10}, {10, 100}, {30, 1000}};
  std::uint64_t smoothY = 100;
  std::uint64_t l0 = 0;  // 0 selects floor(sqrt(N))
  std::vector<std::string> theorems{"divisor-bounded", "dirichlet", "squarefree", "smooth"};
  unsigned workers = 1;
  std::string output;  // empty: standard output
  std::string format = "csv";
  double costCeiling = 1e11;
  unsigned edsTriples = 10000;
  unsigned transportPairs = 1000;
  unsigned periodSamples = 1000;
  std::uint64_t engineLimit = 10000;
  std::uint64_t multLimit = 500;
  std::uint64_t decompositionLimit = 100000;
  unsigned weilSpecs = 5;
  std::uint64_t weilMaxR = 10000;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Throws Error(ConfigError) on unknown sections or keys and malformed values.
ExperimentConfig parseConfig(std::string_view text);
ExperimentConfig loadConfig(const std::string& path);
std::string emitConfig(const ExperimentConfig& config);

// FNV-1a of emitConfig(config), as 16 hex digits.
std::string configHash(const ExperimentConfig& config);

}  // namespace divsum::harness
