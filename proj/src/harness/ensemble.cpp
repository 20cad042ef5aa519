// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

#include "divsum/harness/ensemble.hpp"

#include <cmath>
#include <numeric>

#include "divsum/error.hpp"
#include "divsum/rng.hpp"

namespace divsum::harness {

std::string EnsembleMember::label() const {
  return "p=" + std::to_string(p()) + ",a=" + std::to_string(curve.a().value()) +
         ",b=" + std::to_string(curve.b().value()) + ",P=(" + std::to_string(point.x().value()) + "," +
         std::to_string(point.y().value()) + ")";
}

std::vector<CharacterSpec> characterSpecs(const ExperimentConfig& config) {
  std::vector<CharacterSpec> out;
  for (const auto& s : config.characters) out.push_back(parseCharacterSpec(s));
  return out;
}

std::vector<TwistFunction> twistFunctions(const ExperimentConfig& config) {
  std::vector<TwistFunction> out;
  for (const auto& s : config.twists) out.push_back(parseTwistSpec(s));
  return out;
}

namespace {

double orderThreshold(const ExperimentConfig& config, std::uint64_t p) {
  if (!config.requireLargeOrder) return 3;
  return std::max(3.0, std::pow(static_cast<double>(p), 0.5 + config.orderExponent));
}

// Random curve over F_p with pointsPerCurve points above the threshold;
// returns false when the curve has no such point.
bool addRandomCurve(const ExperimentConfig& config, std::uint64_t p, Rng& rng, std::vector<EnsembleMember>& out) {
  CurveSearchOptions options;
  options.requireLargePrimeFactor = config.requireLargePrimeFactor;
  options.largeFactorEpsilon = config.orderExponent;
  const PrimeModulus m(p);
  const Curve E = randomCurve(m, rng, options);
  const double threshold = orderThreshold(config, p);
  if (threshold > static_cast<double>(groupOrder(E))) return false;
  std::vector<EnsembleMember> members;
  for (unsigned i = 0; i < config.pointsPerCurve; ++i) {
    try {
      auto [P, info] = findPointOfLargeOrder(E, threshold, rng);
      members.push_back({E, P, std::move(info), false});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotFound) throw;
      return false;
    }
  }
  out.insert(out.end(), members.begin(), members.end());
  return true;
}

}  // namespace

std::vector<EnsembleMember> buildEnsemble(const ExperimentConfig& config) {
  std::vector<EnsembleMember> out;
  for (const CurveFixture& f : config.curves) {
    const Curve E(PrimeModulus(f.p), f.a, f.b);
    const Point P = E.point(f.px, f.py);
    out.push_back({E, P, pointOrder(P, E), true});
  }

  std::uint64_t congruence = 1;
  for (const CharacterSpec& c : characterSpecs(config)) {
    if (c.kind == CharacterSpec::Kind::ModP) congruence = std::lcm(congruence, std::uint64_t{c.d});
  }
  Rng rng(config.seed);
  constexpr unsigned kCurveAttempts = 64;
  for (std::uint64_t p : config.primes) {
    if (!isPrime(p) || p <= 3) throw Error(ErrorCode::ConfigError, std::to_string(p) + " is not a usable prime");
    bool ok = false;
    for (unsigned attempt = 0; attempt < kCurveAttempts && !ok; ++attempt) ok = addRandomCurve(config, p, rng, out);
    if (!ok) throw Error(ErrorCode::ConfigError, "no curve with a large-order point over F_" + std::to_string(p));
  }
  if (config.primes.empty()) {
    if (config.curveCount > 0 && config.primeMin > config.primeMax) {
      throw Error(ErrorCode::ConfigError, "primeMin exceeds primeMax");
    }
    const std::uint64_t budget = std::uint64_t{config.curveCount} * 16;
    std::uint64_t tries = 0;
    for (unsigned made = 0; made < config.curveCount;) {
      if (++tries > budget) throw Error(ErrorCode::ConfigError, "cannot fill the ensemble from the prime range");
      std::uint64_t p;
      try {
        p = randomPrime(std::max<std::uint64_t>(config.primeMin, 5), config.primeMax, congruence, rng);
      } catch (const Error& e) {
        throw Error(ErrorCode::ConfigError, std::string("prime range: ") + e.what());
      }
      bool ok = false;
      for (unsigned attempt = 0; attempt < kCurveAttempts && !ok; ++attempt) ok = addRandomCurve(config, p, rng, out);
      if (ok) ++made;
    }
  }
  return out;
}

}  // namespace divsum::harness
