// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

// Character sums along the division-polynomial sequence:
//   S_{f,chi,P}(N) = sum_{n <= N} f(n) chi(psi_n(P))
// and the correlation, progression, scaled-index and complete twisted sums
// built from the same sequence, plus the exact audits of the splitting
// identities used to bound them.
//
// Every sum is accumulated exactly as integer weights on root-of-unity
// buckets. Work is split into contiguous chunks, each seeded by the ladder,
// and chunk accumulators are merged by integer addition, so results do not
// depend on the number of workers.

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "divsum/bounds.hpp"
#include "divsum/characters.hpp"
#include "divsum/divpoly.hpp"
#include "divsum/fp_curve.hpp"
#include "divsum/multfunc.hpp"

namespace divsum {

struct SumContext {
  Curve curve;
  Point point;
  DivPolyBase base;
  CharacterModP chi;
  PointOrderInfo orderInfo;
  std::uint64_t R;  // chi.order() * ord P
  double epsilon;
  bool strongR;  // R >= p^(1/2 + epsilon)
  bool weakR;    // R >= p^(1/2) exp(2.1 log p / log log p)

  std::uint32_t p() const noexcept { return curve.modulus().value(); }
  std::uint32_t d() const noexcept { return chi.order(); }
  std::uint64_t ordP() const noexcept { return orderInfo.pointOrder; }
};

// Throws SmallOrder if ord P < 3, TwoTorsionPoint/InfinityPoint from seeding,
// InvalidArgument if chi is defined over a different field.
SumContext makeContext(const Curve& E, const Point& P, const CharacterModP& chi, double epsilon = 0.1);
SumContext makeContext(const Curve& E, const Point& P, const PointOrderInfo& info, const CharacterModP& chi,
                       double epsilon = 0.1);

class BucketAccumulator {
 public:
  explicit BucketAccumulator(std::uint32_t order);

  std::uint32_t order() const noexcept { return static_cast<std::uint32_t>(weights_.size()); }
  std::span<const std::int64_t> weights() const noexcept { return weights_; }
  std::uint64_t zeroCount() const noexcept { return zeroCount_; }
  std::uint64_t zeroDenominatorCount() const noexcept { return zeroDenominatorCount_; }

  void add(std::uint32_t index, std::int64_t weight) { weights_[index] += weight; }
  void addZero(std::uint64_t count = 1) noexcept { zeroCount_ += count; }
  void addZeroDenominator() noexcept {
    ++zeroDenominatorCount_;
    ++zeroCount_;
  }

  // this += factor * exp(2 pi i rotation / order()) * other; other's order
  // must divide order(). Zero counters are added unscaled.
  void addScaled(const BucketAccumulator& other, std::int64_t factor = 1, std::uint32_t rotation = 0);
  void merge(const BucketAccumulator& other) { addScaled(other); }

  BucketAccumulator lifted(std::uint32_t order) const;

  std::complex<double> value() const;

  // Weight-level equality after lifting both sides to a common order.
  bool sameWeights(const BucketAccumulator& other) const;
  bool empty() const noexcept;

 private:
  std::vector<std::int64_t> weights_;
  std::uint64_t zeroCount_ = 0;
  std::uint64_t zeroDenominatorCount_ = 0;
};

struct SumResult {
  BucketAccumulator buckets;
  std::complex<double> value;
  double absValue = 0;
  std::uint64_t N = 0;
  std::uint64_t R = 0;
  std::uint64_t zeroCount = 0;
  std::uint64_t zeroDenominatorCount = 0;
  std::string twist;
  std::optional<double> boundRhs;
  std::optional<double> ratio;

  static SumResult from(BucketAccumulator buckets, std::uint64_t N, std::uint64_t R, std::string twist);
  void attachBound(std::optional<double> rhs);
};

// chi(psi_n(P)) for n = 1..values.size(); used to share one sequence
// evaluation among many sums over the same context.
struct ChiPsiTable {
  std::vector<CharValue> values;

  std::uint64_t size() const noexcept { return values.size(); }
  CharValue at(std::uint64_t n) const { return values[n - 1]; }
};

struct SumOptions {
  bool overrideRange = false;
  unsigned workers = 1;
  const ChiPsiTable* table = nullptr;
};

ChiPsiTable chiPsiTable(const SumContext& ctx, std::uint64_t length, unsigned workers = 1);

// Throws RangeExceedsR when N > R without overrideRange.
SumResult sumS(const SumContext& ctx, const TwistFunction& f, std::uint64_t N, const SieveTables& tables,
               const SumOptions& opts = {});

// Same sum with one ladder evaluation per term; an engine-independent check.
SumResult sumSByLadder(const SumContext& ctx, const TwistFunction& f, std::uint64_t N, const SieveTables& tables);

// sum_{n<=N} chi(psi_{l1 n}) conj(chi(psi_{l2 n})). Throws InvalidArgument if l1 == l2.
SumResult correlationSum(const SumContext& ctx, std::uint64_t l1, std::uint64_t l2, std::uint64_t N,
                         const SumOptions& opts = {});

// sum over n <= N with n = k mod q, 1 <= k <= q.
SumResult progressionSum(const SumContext& ctx, std::uint64_t q, std::uint64_t k, std::uint64_t N,
                         const SumOptions& opts = {});
// All q progression sums in one pass; element k-1 holds residue class k.
std::vector<SumResult> progressionSums(const SumContext& ctx, std::uint64_t q, std::uint64_t N,
                                       const SumOptions& opts = {});

// sum_{n<=N} chi(psi_{mn}(P)).
SumResult scaledSum(const SumContext& ctx, std::uint64_t m, std::uint64_t N, const SumOptions& opts = {});

// The same sum evaluated at the point mP:
//   chi(psi_{mn}(P)) = chi(psi_n(mP)) chi(psi_m(P))^(n^2).
// Throws TwoTorsionPoint when mP has y = 0.
SumResult scaledSumTransported(const SumContext& ctx, std::uint64_t m, std::uint64_t N, unsigned workers = 1);

// sum_{n<=R} chi(Psi(nP)) e_R(a n) with Psi = prod psi_{m_i}^{e_i}. Terms where
// nP = O, y(nP) = 0 or a negative-exponent factor vanishes count as zero;
// the last kind is reported in zeroDenominatorCount.
SumResult completeTwistedSum(const SumContext& ctx, std::span<const PsiFactor> spec, std::int64_t a,
                             unsigned workers = 1);

struct PartitionClass {
  unsigned r;
  std::uint64_t members;
  BucketAccumulator all;       // U_r
  BucketAccumulator simple;    // U_{r,1}: primes from I appear once
  BucketAccumulator repeated;  // U_{r,2}
};

struct PartitionAudit {
  Interval interval;
  std::vector<PartitionClass> classes;
  SumResult direct;
  BucketAccumulator total;
  unsigned log2N;
  unsigned maxNonEmptyR;
  bool totalMatches;
  bool splitMatches;
  bool emptyBeyondLog;

  bool holds() const noexcept { return totalMatches && splitMatches && emptyBeyondLog; }
};

// Splits S_{f,chi,P}(N) by the number r of prime factors in I = (x, y].
PartitionAudit partitionAudit(const SumContext& ctx, const TwistFunction& f, std::uint64_t N, Interval I,
                              const SieveTables& tables, const SumOptions& opts = {});

struct MoebiusSqAudit {
  SumResult lhs;                // sum mu^2(n) chi(psi_n)
  BucketAccumulator rhs;        // sum_{d^2 <= N} mu(d) sum_{n <= N/d^2} chi(psi_{d^2 n})
  SumResult t1;                 // d with gcd(d, R) <= p^(eps/4)
  SumResult t2;                 // remaining d
  double threshold;
  std::uint64_t t1Divisors = 0;
  std::uint64_t t2Divisors = 0;
  bool identityHolds;
  bool splitHolds;

  bool holds() const noexcept { return identityHolds && splitHolds; }
};

MoebiusSqAudit moebiusSqAudit(const SumContext& ctx, std::uint64_t N, const SieveTables& tables,
                              const SumOptions& opts = {});

struct SmoothAudit {
  SumResult direct;
  BucketAccumulator small;       // smooth n <= L0
  BucketAccumulator decomposed;  // smooth n > L0 enumerated as ell * m
  std::uint64_t L0;
  std::uint64_t decomposedTerms = 0;
  std::uint64_t largeSmoothCount = 0;
  std::uint64_t conditionViolations = 0;
  SmoothParams params;
  BoundEvaluation bound;
  bool agree;

  bool holds() const noexcept { return agree && decomposedTerms == largeSmoothCount && conditionViolations == 0; }
};

SmoothAudit smoothSum(const SumContext& ctx, std::uint64_t y, std::uint64_t N, std::uint64_t L0,
                      const SieveTables& tables, const SumOptions& opts = {});

// Bound inputs for a context; N and theorem-specific fields filled by caller.
BoundInputs boundInputs(const SumContext& ctx, std::uint64_t N);

}  // namespace divsum
