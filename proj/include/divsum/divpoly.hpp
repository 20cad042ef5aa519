// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

// Division polynomials psi_n evaluated at a fixed point P.
//
// Two engines compute the same sequence:
//   * psiLadder: random access in O(log n) via an eight-term window that is
//     doubled with the odd/even duplication formulas,
//   * PsiStream: sequential access, one term of the four-term recurrence per
//     step, re-seeded from the ladder whenever its divisor vanishes.
// Both are derived from the elliptic divisibility identity
//   psi_{m+n} psi_{m-n} psi_r^2 = psi_{m+r} psi_{m-r} psi_n^2 - psi_{n+r} psi_{n-r} psi_m^2.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "divsum/fp_curve.hpp"

namespace divsum {

class DivPolyBase {
 public:
  const Curve& curve() const noexcept { return curve_; }
  const Point& point() const noexcept { return point_; }

  // Seed value psi_k for k in [0, 4].
  const FieldElement& seed(unsigned k) const { return seeds_.at(k); }
  const FieldElement& psi2Inverse() const noexcept { return psi2Inverse_; }
  const FieldElement& psi2Squared() const noexcept { return psi2Squared_; }

  // Builds a base from caller-supplied psi_3, psi_4 without checking them
  // against the curve. Exists so that verification suites can be exercised
  // with a corrupted seed.
  static DivPolyBase withSeeds(const Curve& E, const Point& P, const FieldElement& psi3, const FieldElement& psi4);

 private:
  friend DivPolyBase psiSeed(const Curve& E, const Point& P);
  DivPolyBase(const Curve& E, const Point& P, const FieldElement& psi3, const FieldElement& psi4);

  Curve curve_;
  Point point_;
  std::array<FieldElement, 5> seeds_;
  FieldElement psi2Inverse_;
  FieldElement psi2Squared_;
};

// Throws InfinityPoint for P = O and TwoTorsionPoint for y(P) = 0.
DivPolyBase psiSeed(const Curve& E, const Point& P);

/// psi_{center-2} .. psi_{center+2}.
struct DivPolyWindow {
  std::int64_t center = 0;
  std::array<FieldElement, 5> values;

  const FieldElement& at(std::int64_t index) const { return values.at(static_cast<std::size_t>(index - center + 2)); }
};

// psi_n(P); psi_0 = 0 and psi_{-n} = -psi_n.
FieldElement psiLadder(std::int64_t n, const DivPolyBase& base);

DivPolyWindow psiWindow(std::int64_t center, const DivPolyBase& base);

// Sequential evaluation of psi_{stride*k}(P) for k = start, start+1, ...
//
// For stride s the subsequence V_k = psi_{sk} is itself an elliptic
// divisibility sequence, so the same recurrence
//   V_{k+2} V_{k-2} V_1^2 = V_{k+1} V_{k-1} V_2^2 - V_3 V_k^2
// drives it. When V_{k-2} = 0 the window is rebuilt from the ladder.
class PsiStream {
 public:
  PsiStream(const DivPolyBase& base, std::uint64_t start, std::uint64_t stride = 1);

  std::uint64_t nextIndex() const noexcept { return k_; }
  FieldElement next();

  std::uint64_t reseedCount() const noexcept { return reseeds_; }

 private:
  void seedAt(std::uint64_t k);
  FieldElement term(std::int64_t k) const;

  const DivPolyBase* base_;
  std::uint64_t stride_;
  std::uint64_t k_;
  // window_[i] = V_{k_-2+i}
  std::array<FieldElement, 4> window_;
  bool allZero_ = false;
  FieldElement v2sq_;
  FieldElement v3_;  // V_3 V_1
  FieldElement v1sqInv_;
  std::uint64_t reseeds_ = 0;
};

std::vector<FieldElement> psiStream(const DivPolyBase& base, std::uint64_t nStart, std::uint64_t count);

// x(nP) from division polynomials, or nullopt when psi_n(P) = 0 (nP = O).
std::optional<FieldElement> multByNX(std::int64_t n, const DivPolyBase& base);

// nP from division polynomials, including the y-coordinate formula.
Point multByN(std::int64_t n, const DivPolyBase& base);

struct PsiFactor {
  std::uint64_t index;
  int exponent;
};

// prod_i psi_{m_i}(Q)^{e_i}. nullopt signals a vanishing factor with negative
// exponent (ZeroDenominator). Q must be affine with y(Q) != 0.
std::optional<FieldElement> psiProductAt(const Curve& E, const Point& Q, std::span<const PsiFactor> spec);

// sum_i |e_i| (m_i^2 - 1): the number of zeros of the product counted with
// multiplicity, used as the degree in complete-sum bounds.
std::uint64_t psiProductDegree(std::span<const PsiFactor> spec);

// gcd(m1 n1, m2 n2) == gcd(m1 n2, m2 n1), m1 != m2 and n1 != n2.
bool gcdConditionHolds(std::uint64_t m1, std::uint64_t m2, std::uint64_t n1, std::uint64_t n2);

// psi_{m1 n1} psi_{m2 n2} psi_{m1 n2}^{-1} psi_{m2 n1}^{-1}.
std::vector<PsiFactor> quadrupleSpec(std::uint64_t m1, std::uint64_t m2, std::uint64_t n1, std::uint64_t n2);

}  // namespace divsum
