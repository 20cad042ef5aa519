// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

#include "divsum/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "divsum/error.hpp"

namespace divsum {

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t powmodSmall(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = static_cast<std::uint64_t>(static_cast<u128>(r) * b % m);
    b = static_cast<std::uint64_t>(static_cast<u128>(b) * b % m);
    e >>= 1;
  }
  return r;
}

bool hasOrder(std::uint64_t g, std::uint64_t order, const Factorization& orderFactors, std::uint64_t m) {
  if (powmodSmall(g, order, m) != 1) return false;
  for (const auto& f : orderFactors) {
    if (powmodSmall(g, order / f.prime, m) == 1) return false;
  }
  return true;
}

// The residue mod q that is g mod `component` and 1 mod q / component.
std::uint64_t liftGenerator(std::uint64_t g, std::uint64_t component, std::uint64_t q) {
  const std::uint64_t rest = q / component;
  for (std::uint64_t t = 0; t < rest; ++t) {
    const std::uint64_t G = g + component * t;
    if (G % rest == 1 % rest) return G % q;
  }
  return g;  // unreachable: component and rest are coprime
}

}  // namespace

std::complex<double> toComplex(CharValue v, std::uint32_t order) {
  if (v.isZero()) return {0.0, 0.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(v.index()) / static_cast<double>(order);
  return std::polar(1.0, angle);
}

CharValue charMultiply(CharValue a, CharValue b, std::uint32_t order) noexcept {
  if (a.isZero() || b.isZero()) return CharValue::zero();
  return CharValue::root((a.index() + b.index()) % order);
}

CharValue charConjugate(CharValue a, std::uint32_t order) noexcept {
  if (a.isZero()) return a;
  return CharValue::root((order - a.index()) % order);
}

std::uint32_t primitiveRoot(PrimeModulus p) {
  const std::uint32_t n = p.value() - 1;
  const Factorization f = factorize(n);
  for (std::uint32_t g = 2; g < p.value(); ++g) {
    bool ok = true;
    for (const auto& pp : f) {
      if (p.pow(g, n / pp.prime) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;  // p = 2 only; excluded by PrimeModulus
}

CharacterModP buildCharacterModP(PrimeModulus p, std::uint32_t d, std::uint32_t label) {
  const std::uint32_t n = p.value() - 1;
  if (d < 2 || n % d != 0) {
    throw Error(ErrorCode::InvalidOrder,
                "character order " + std::to_string(d) + " must be >= 2 and divide p - 1 = " + std::to_string(n));
  }
  if (std::gcd(label, d) != 1) {
    throw Error(ErrorCode::InvalidLabel, "label " + std::to_string(label) + " is not a unit mod " + std::to_string(d));
  }
  CharacterModP chi(p);
  chi.d_ = d;
  chi.label_ = label % d;
  chi.g_ = primitiveRoot(p);
  chi.exponent_ = n / d;
  const std::uint32_t zeta = p.pow(chi.g_, chi.exponent_);
  std::uint32_t power = 1;
  chi.roots_.reserve(d);
  for (std::uint32_t j = 0; j < d; ++j) {
    chi.roots_.emplace_back(power, static_cast<std::uint32_t>(static_cast<std::uint64_t>(j) * label % d));
    power = p.mul(power, zeta);
  }
  std::sort(chi.roots_.begin(), chi.roots_.end());
  return chi;
}

CharValue CharacterModP::operator()(std::uint32_t residue) const {
  residue = p_.reduce(residue);
  if (residue == 0) return CharValue::zero();
  const std::uint32_t r = p_.pow(residue, exponent_);
  const auto it = std::lower_bound(roots_.begin(), roots_.end(), std::pair<std::uint32_t, std::uint32_t>{r, 0});
  return CharValue::root(it->second);
}

CharValue CharacterModP::operator()(const FieldElement& x) const { return (*this)(x.value()); }

CharValue evalCharModP(const CharacterModP& chi, const FieldElement& x) { return chi(x); }

std::vector<CyclicFactor> unitGroupFactors(std::uint64_t q) {
  if (q < 2) throw Error(ErrorCode::InvalidArgument, "Dirichlet modulus must be >= 2");
  std::vector<CyclicFactor> out;
  for (const auto& [prime, k] : factorize(q)) {
    std::uint64_t component = 1;
    for (unsigned i = 0; i < k; ++i) component *= prime;
    if (prime == 2) {
      if (k == 1) continue;
      out.push_back({liftGenerator(component - 1, component, q), 2});
      if (k >= 3) out.push_back({liftGenerator(5, component, q), component / 4});
      continue;
    }
    const std::uint64_t phi = component / prime * (prime - 1);
    const Factorization phiFactors = factorize(phi);
    std::uint64_t g = 2;
    while (!hasOrder(g, phi, phiFactors, component)) ++g;
    out.push_back({liftGenerator(g, component, q), phi});
  }
  return out;
}

DirichletCharacter buildDirichlet(std::uint64_t q, std::span<const std::uint32_t> exponents) {
  DirichletCharacter chi;
  chi.q_ = q;
  chi.factors_ = unitGroupFactors(q);
  if (exponents.size() != chi.factors_.size()) {
    throw Error(ErrorCode::BadExponentCount, "(Z/" + std::to_string(q) + ")^* has " +
                                                 std::to_string(chi.factors_.size()) + " cyclic factors, got " +
                                                 std::to_string(exponents.size()) + " exponents");
  }
  std::uint64_t common = 1;
  for (const auto& f : chi.factors_) common = std::lcm(common, f.order);
  std::vector<std::uint64_t> step(chi.factors_.size());
  std::uint64_t g = common;
  for (std::size_t i = 0; i < chi.factors_.size(); ++i) {
    chi.exponents_.push_back(static_cast<std::uint32_t>(exponents[i] % chi.factors_[i].order));
    step[i] = chi.exponents_[i] * (common / chi.factors_[i].order);
    g = std::gcd(g, step[i]);
  }
  chi.order_ = static_cast<std::uint32_t>(common / g);
  for (auto& s : step) s /= g;

  chi.table_.assign(q, CharValue::zero());
  // Walk every exponent tuple of the generators in mixed radix.
  std::vector<std::uint64_t> digits(chi.factors_.size(), 0);
  std::uint64_t residue = 1 % q;
  std::uint64_t index = 0;
  std::uint64_t filled = 0;
  while (true) {
    if (chi.table_[residue].isZero()) ++filled;
    chi.table_[residue] = CharValue::root(static_cast<std::uint32_t>(index % chi.order_));
    std::size_t i = 0;
    for (; i < digits.size(); ++i) {
      // One more factor of the generator either advances the digit or, since
      // g^order = 1 and the index step times order is 0 mod the character
      // order, wraps it back to zero.
      const auto& f = chi.factors_[i];
      residue = static_cast<std::uint64_t>(static_cast<u128>(residue) * f.generator % q);
      index = (index + step[i]) % chi.order_;
      if (++digits[i] < f.order) break;
      digits[i] = 0;
    }
    if (i == digits.size()) break;
  }
  std::uint64_t phi = 0;
  for (std::uint64_t r = 0; r < q; ++r) phi += std::gcd(r, q) == 1 ? 1 : 0;
  if (filled != phi) {
    throw Error(ErrorCode::InvalidArgument, "unit group decomposition of (Z/" + std::to_string(q) + ")^* is not direct");
  }
  return chi;
}

}  // namespace divsum
