// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

// Sieve tables and the multiplicative twists f(n) used in the sums.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "divsum/characters.hpp"
#include "divsum/fp_curve.hpp"

namespace divsum {

/// Smallest prime factor, largest prime factor and Moebius values up to a limit.
class SieveTables {
 public:
  static constexpr std::uint64_t kMaxLimit = 100'000'000;

  // Linear sieve. Throws LimitTooLarge above kMaxLimit.
  explicit SieveTables(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }
  // spf(1) = 1.
  std::uint32_t spf(std::uint64_t n) const { return spf_[n]; }
  // lpf(1) = 1.
  std::uint32_t lpf(std::uint64_t n) const { return lpf_[n]; }
  int mu(std::uint64_t n) const { return mu_[n]; }
  bool isPrime(std::uint64_t n) const { return n >= 2 && spf_[n] == n; }

  // Prime factorization in increasing prime order.
  Factorization factor(std::uint64_t n) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> lpf_;
  std::vector<std::int8_t> mu_;
};

SieveTables buildSieve(std::uint64_t limit);

// Number of ordered nu-tuples with product n.
std::uint64_t tauNu(std::uint64_t n, unsigned nu, const SieveTables& tables);

// (sum_{n<=N} tau_nu(n)^C) / (N (log N)^(nu^C - 1)).
double tauMomentRatio(std::uint64_t N, unsigned nu, unsigned C, const SieveTables& tables);

/// The half-open interval (lo, hi].
struct Interval {
  double lo;
  double hi;
  bool contains(double v) const noexcept { return v > lo && v <= hi; }
};

// Number of prime factors of n in I, counted with multiplicity.
unsigned classifyAr(std::uint64_t n, Interval I, const SieveTables& tables);

// Number of primes of n in I whose exponent is at least two.
unsigned repeatedPrimesIn(std::uint64_t n, Interval I, const SieveTables& tables);

/// n = ell * m with L0 < ell <= P(ell) L0 and p(m) >= P(ell).
struct SmoothSplit {
  std::uint64_t ell;
  std::uint64_t m;
};

// Collects the sorted prime factors of n until the running product first
// exceeds L0. nullopt when n <= L0 (nothing to decompose).
std::optional<SmoothSplit> smoothDecompose(std::uint64_t n, std::uint64_t L0, const SieveTables& tables);

// Largest prime factor with P(1) = 1, smallest prime factor with p(1) = +inf.
std::uint64_t largestPrimeFactor(std::uint64_t n, const SieveTables& tables);
std::uint64_t smallestPrimeFactor(std::uint64_t n, const SieveTables& tables);

struct SmoothParams {
  std::uint64_t N;
  std::uint64_t y;
  double alpha;
  std::uint64_t psiCount;
  // log(psiCount) / log(N)
  double empiricalExponent;
};

// log(1 + y / log N) / log y, with the o(1) correction omitted.
double smoothAlpha(double N, double y);

SmoothParams psiCountAndAlpha(std::uint64_t N, std::uint64_t y, const SieveTables& tables);

/// f(n) = coefficient * exp(2 pi i phase / phaseOrder).
struct TwistValue {
  std::int64_t coefficient;
  std::uint32_t phase;
};

class TwistFunction {
 public:
  enum class Kind { One, TauNu, Moebius, MoebiusSq, KFree, Smooth, SumTwoSquares, Dirichlet };

  static TwistFunction one() { return TwistFunction(Kind::One, 0); }
  static TwistFunction tauNu(unsigned nu) { return TwistFunction(Kind::TauNu, nu); }
  static TwistFunction moebius() { return TwistFunction(Kind::Moebius, 0); }
  static TwistFunction moebiusSq() { return TwistFunction(Kind::MoebiusSq, 0); }
  static TwistFunction kFree(unsigned k) { return TwistFunction(Kind::KFree, k); }
  static TwistFunction smooth(std::uint64_t y) { return TwistFunction(Kind::Smooth, y); }
  static TwistFunction sumTwoSquares() { return TwistFunction(Kind::SumTwoSquares, 0); }
  static TwistFunction dirichlet(DirichletCharacter chi);

  Kind kind() const noexcept { return kind_; }
  std::uint64_t parameter() const noexcept { return param_; }
  const std::optional<DirichletCharacter>& character() const noexcept { return character_; }

  // Order of the roots of unity in phase; 1 for integer-valued kinds.
  std::uint32_t phaseOrder() const noexcept;

  // nu such that |f(n)| <= tau_nu(n) for all n.
  unsigned tauBound() const noexcept;

  // |f(n)| <= 1 for all n.
  bool isOneBounded() const noexcept { return kind_ != Kind::TauNu || param_ <= 1; }

  // Canonical descriptor, e.g. "tau:2" or "dirichlet:q=4,exp=1".
  std::string describe() const;

 private:
  TwistFunction(Kind k, std::uint64_t param) : kind_(k), param_(param) {}

  Kind kind_;
  std::uint64_t param_;
  std::optional<DirichletCharacter> character_;
};

TwistValue evalTwist(const TwistFunction& f, std::uint64_t n, const SieveTables& tables);

}  // namespace divsum
