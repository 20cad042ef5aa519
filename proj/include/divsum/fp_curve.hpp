// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

// Prime-field arithmetic and short-Weierstrass curve groups over F_p.
//
// Moduli are capped below 2^31 so that the product of two canonical residues
// fits in 64 bits. All residues are kept canonical in [0, p).

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "divsum/rng.hpp"

namespace divsum {

bool isPrime(std::uint64_t n) noexcept;

class PrimeModulus {
 public:
  static constexpr std::uint64_t kMaxExclusive = std::uint64_t{1} << 31;

  // Throws InvalidModulus unless 3 < p < 2^31 and p is prime.
  explicit PrimeModulus(std::uint64_t p);

  std::uint32_t value() const noexcept { return p_; }

  std::uint32_t reduce(std::uint64_t v) const noexcept { return static_cast<std::uint32_t>(v % p_); }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    std::uint32_t s = a + b;  // < 2^32
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  std::uint32_t pow(std::uint32_t base, std::uint64_t e) const noexcept;
  // Throws ZeroInverse for a == 0.
  std::uint32_t inverse(std::uint32_t a) const;

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  std::uint32_t p_;
};

class FieldElement {
 public:
  FieldElement(std::uint64_t v, PrimeModulus m) : value_(m.reduce(v)), mod_(m) {}

  static FieldElement fromSigned(std::int64_t v, PrimeModulus m) {
    const std::int64_t p = m.value();
    std::int64_t r = v % p;
    if (r < 0) r += p;
    return FieldElement(static_cast<std::uint64_t>(r), m);
  }

  std::uint32_t value() const noexcept { return value_; }
  PrimeModulus modulus() const noexcept { return mod_; }
  bool isZero() const noexcept { return value_ == 0; }

  FieldElement operator+(const FieldElement& o) const noexcept { return raw(mod_.add(value_, o.value_)); }
  FieldElement operator-(const FieldElement& o) const noexcept { return raw(mod_.sub(value_, o.value_)); }
  FieldElement operator*(const FieldElement& o) const noexcept { return raw(mod_.mul(value_, o.value_)); }
  FieldElement operator-() const noexcept { return raw(mod_.sub(0, value_)); }
  FieldElement& operator+=(const FieldElement& o) noexcept { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) noexcept { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) noexcept { return *this = *this * o; }

  FieldElement pow(std::uint64_t e) const noexcept { return raw(mod_.pow(value_, e)); }
  FieldElement square() const noexcept { return *this * *this; }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  FieldElement raw(std::uint32_t v) const noexcept {
    FieldElement r = *this;
    r.value_ = v;
    return r;
  }

  std::uint32_t value_;
  PrimeModulus mod_;
};

// Throws ZeroInverse if x == 0.
FieldElement fieldInverse(const FieldElement& x);

// Legendre symbol in {-1, 0, 1}.
int legendre(const FieldElement& x) noexcept;

// A square root of x if x is a square (Tonelli-Shanks).
std::optional<FieldElement> fieldSqrt(const FieldElement& x);

/// A point of E(F_p): either the point at infinity or an affine pair.
class Point {
 public:
  static Point infinity() { return Point(); }
  static Point affine(FieldElement x, FieldElement y) { return Point(Coords{x, y}); }

  bool isInfinity() const noexcept { return !coords_.has_value(); }
  const FieldElement& x() const { return coords_->x; }
  const FieldElement& y() const { return coords_->y; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  struct Coords {
    FieldElement x;
    FieldElement y;
    friend bool operator==(const Coords&, const Coords&) = default;
  };

  Point() = default;
  explicit Point(Coords c) : coords_(c) {}

  std::optional<Coords> coords_;
};

/// y^2 = x^3 + a x + b over F_p, nonsingular.
class Curve {
 public:
  // Throws SingularCurve when 4a^3 + 27b^2 == 0 mod p.
  Curve(PrimeModulus p, std::uint64_t a, std::uint64_t b);

  PrimeModulus modulus() const noexcept { return p_; }
  const FieldElement& a() const noexcept { return a_; }
  const FieldElement& b() const noexcept { return b_; }

  FieldElement element(std::uint64_t v) const { return FieldElement(v, p_); }
  FieldElement rhs(const FieldElement& x) const { return (x.square() + a_) * x + b_; }
  bool contains(const Point& P) const;

  // Throws NotOnCurve when (x, y) does not satisfy the equation.
  Point point(std::uint64_t x, std::uint64_t y) const;

  friend bool operator==(const Curve&, const Curve&) = default;

 private:
  PrimeModulus p_;
  FieldElement a_;
  FieldElement b_;
};

Point pointNegate(const Point& P);
Point pointAdd(const Point& P, const Point& Q, const Curve& E);
Point scalarMul(std::uint64_t n, const Point& P, const Curve& E);

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};
using Factorization = std::vector<PrimePower>;

// Trial division; intended for n < 2^40.
Factorization factorize(std::uint64_t n);

// #E(F_p) = p + 1 + sum_x legendre(x^3 + ax + b), by an O(p) scan.
std::uint64_t groupOrder(const Curve& E);

struct PointOrderInfo {
  std::uint64_t groupOrder = 0;
  std::uint64_t pointOrder = 0;
  Factorization groupFactors;
  Factorization orderFactors;
};

PointOrderInfo pointOrder(const Point& P, const Curve& E, std::uint64_t groupOrder,
                          const Factorization& groupFactors);
PointOrderInfo pointOrder(const Point& P, const Curve& E);

struct PointSearchOptions {
  unsigned attempts = 256;
};

// Samples random affine points until one of order >= threshold is found.
// Throws NotFound when the attempt budget runs out.
std::pair<Point, PointOrderInfo> findPointOfLargeOrder(const Curve& E, double threshold, Rng& rng,
                                                       PointSearchOptions options = {});

struct CurveSearchOptions {
  // When set, only curves whose group order has a prime factor
  // > p^(1/2 + largeFactorEpsilon) are accepted.
  bool requireLargePrimeFactor = false;
  double largeFactorEpsilon = 0.1;
  unsigned attempts = 1000;
};

Curve randomCurve(PrimeModulus p, Rng& rng, CurveSearchOptions options = {});

// Uniformly random prime in [lo, hi] with p = 1 mod congruence. Throws NotFound.
std::uint64_t randomPrime(std::uint64_t lo, std::uint64_t hi, std::uint64_t congruence, Rng& rng);

}  // namespace divsum
