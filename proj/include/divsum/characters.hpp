// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

// Multiplicative characters of F_p^* and Dirichlet characters mod q. Values
// are exact root-of-unity indices; conversion to complex numbers happens only
// when a result is reported.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "divsum/fp_curve.hpp"

namespace divsum {

/// Either Zero or the root of unity exp(2 pi i k / e), stored as k. The order
/// e belongs to the character that produced the value.
class CharValue {
 public:
  static constexpr CharValue zero() noexcept { return CharValue(kZero); }
  static constexpr CharValue root(std::uint32_t k) noexcept { return CharValue(k); }

  constexpr bool isZero() const noexcept { return index_ == kZero; }
  constexpr std::uint32_t index() const noexcept { return index_; }

  friend constexpr bool operator==(CharValue, CharValue) = default;

 private:
  static constexpr std::uint32_t kZero = UINT32_MAX;
  constexpr explicit CharValue(std::uint32_t k) noexcept : index_(k) {}
  std::uint32_t index_;
};

std::complex<double> toComplex(CharValue v, std::uint32_t order);

// Product of two values of the same order.
CharValue charMultiply(CharValue a, CharValue b, std::uint32_t order) noexcept;
CharValue charConjugate(CharValue a, std::uint32_t order) noexcept;

// Smallest primitive root mod p.
std::uint32_t primitiveRoot(PrimeModulus p);

/// chi(x) = index of x^((p-1)/d) among the d-th roots of unity, where the
/// root g^((p-1)/d) for the smallest primitive root g carries index `label`.
class CharacterModP {
 public:
  PrimeModulus modulus() const noexcept { return p_; }
  std::uint32_t order() const noexcept { return d_; }
  std::uint32_t label() const noexcept { return label_; }
  std::uint32_t generator() const noexcept { return g_; }

  CharValue operator()(const FieldElement& x) const;
  CharValue operator()(std::uint32_t residue) const;

  // The d-th roots of unity with their indices, sorted by residue.
  std::span<const std::pair<std::uint32_t, std::uint32_t>> rootTable() const noexcept { return roots_; }

 private:
  friend CharacterModP buildCharacterModP(PrimeModulus p, std::uint32_t d, std::uint32_t label);
  CharacterModP(PrimeModulus p) : p_(p) {}

  PrimeModulus p_;
  std::uint32_t d_ = 0;
  std::uint32_t label_ = 0;
  std::uint32_t g_ = 0;
  std::uint32_t exponent_ = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> roots_;
};

// Throws InvalidOrder if d < 2 or d does not divide p - 1, InvalidLabel if
// gcd(label, d) > 1.
CharacterModP buildCharacterModP(PrimeModulus p, std::uint32_t d, std::uint32_t label);

CharValue evalCharModP(const CharacterModP& chi, const FieldElement& x);

/// One cyclic factor of (Z/q)^*: a generator (as a residue mod q) and its order.
struct CyclicFactor {
  std::uint64_t generator;
  std::uint64_t order;
};

// Canonical decomposition of (Z/q)^* via its prime-power components: for each
// odd p^k a primitive root, for 4 the element -1, for 2^k (k >= 3) the pair
// -1 and 5. Each generator is lifted by CRT to be 1 in the other components.
std::vector<CyclicFactor> unitGroupFactors(std::uint64_t q);

class DirichletCharacter {
 public:
  std::uint64_t modulus() const noexcept { return q_; }
  std::uint32_t order() const noexcept { return order_; }
  bool isPrincipal() const noexcept { return order_ == 1; }
  std::span<const std::uint32_t> exponents() const noexcept { return exponents_; }
  std::span<const CyclicFactor> factors() const noexcept { return factors_; }

  CharValue operator()(std::uint64_t n) const { return table_[n % q_]; }
  std::span<const CharValue> table() const noexcept { return table_; }

 private:
  friend DirichletCharacter buildDirichlet(std::uint64_t q, std::span<const std::uint32_t> exponents);
  DirichletCharacter() = default;

  std::uint64_t q_ = 0;
  std::uint32_t order_ = 1;
  std::vector<std::uint32_t> exponents_;
  std::vector<CyclicFactor> factors_;
  std::vector<CharValue> table_;
};

// exponents[i] assigns exp(2 pi i a_i / n_i) to the i-th cyclic factor.
// Throws BadExponentCount on a length mismatch.
DirichletCharacter buildDirichlet(std::uint64_t q, std::span<const std::uint32_t> exponents);

}  // namespace divsum
