// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "divsum/characters.hpp"
#include "divsum/fp_curve.hpp"
#include "divsum/harness/config.hpp"
#include "divsum/harness/specs.hpp"

namespace divsum::harness {

struct EnsembleMember {
  Curve curve;
  Point point;
  PointOrderInfo orderInfo;
  bool fixture;  // from the explicit curve list

  std::uint32_t p() const noexcept { return curve.modulus().value(); }
  std::string label() const;
};

// Fixtures first, then random members. The seed alone fixes the result.
// Random primes are drawn = 1 mod the lcm of the configured mod-p orders so
// that every character applies; listed primes are used as given.
std::vector<EnsembleMember> buildEnsemble(const ExperimentConfig& config);

std::vector<CharacterSpec> characterSpecs(const ExperimentConfig& config);
std::vector<TwistFunction> twistFunctions(const ExperimentConfig& config);

}  // namespace divsum::harness
