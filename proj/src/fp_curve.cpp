// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

#include "divsum/fp_curve.hpp"

#include <cmath>
#include <string>

#include "divsum/error.hpp"

namespace divsum {

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, b, m);
    b = mulmod64(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

// Deterministic Miller-Rabin; these bases are exact for all n < 3.3e24.
bool isPrime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(std::uint64_t p) {
  if (p <= 3 || p >= kMaxExclusive || !isPrime(p)) {
    throw Error(ErrorCode::InvalidModulus, "modulus must be a prime with 3 < p < 2^31, got " + std::to_string(p));
  }
  p_ = static_cast<std::uint32_t>(p);
}

std::uint32_t PrimeModulus::pow(std::uint32_t base, std::uint64_t e) const noexcept {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

std::uint32_t PrimeModulus::inverse(std::uint32_t a) const {
  if (a == 0) throw Error(ErrorCode::ZeroInverse, "zero has no inverse mod " + std::to_string(p_));
  std::int64_t r0 = p_, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::int64_t tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t0 < 0) t0 += p_;
  return static_cast<std::uint32_t>(t0);
}

FieldElement fieldInverse(const FieldElement& x) {
  return FieldElement(x.modulus().inverse(x.value()), x.modulus());
}

int legendre(const FieldElement& x) noexcept {
  if (x.isZero()) return 0;
  const std::uint32_t p = x.modulus().value();
  return x.pow((p - 1) / 2).value() == 1 ? 1 : -1;
}

std::optional<FieldElement> fieldSqrt(const FieldElement& x) {
  if (x.isZero()) return x;
  if (legendre(x) != 1) return std::nullopt;
  const PrimeModulus m = x.modulus();
  const std::uint32_t p = m.value();
  if (p % 4 == 3) return x.pow((p + 1) / 4);

  std::uint32_t q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  FieldElement z(2, m);
  while (legendre(z) != -1) z += FieldElement(1, m);

  FieldElement c = z.pow(q);
  FieldElement r = x.pow((q + 1) / 2);
  FieldElement t = x.pow(q);
  unsigned e = s;
  const FieldElement one(1, m);
  while (!(t == one)) {
    unsigned i = 0;
    FieldElement t2 = t;
    while (!(t2 == one)) {
      t2 = t2.square();
      ++i;
    }
    FieldElement b = c;
    for (unsigned j = 0; j + i + 1 < e; ++j) b = b.square();
    r *= b;
    c = b.square();
    t *= c;
    e = i;
  }
  return r;
}

Curve::Curve(PrimeModulus p, std::uint64_t a, std::uint64_t b)
    : p_(p), a_(a, p), b_(b, p) {
  const FieldElement disc = FieldElement(4, p) * a_.square() * a_ + FieldElement(27, p) * b_.square();
  if (disc.isZero()) {
    throw Error(ErrorCode::SingularCurve, "4a^3 + 27b^2 vanishes mod " + std::to_string(p.value()));
  }
}

bool Curve::contains(const Point& P) const {
  if (P.isInfinity()) return true;
  if (!(P.x().modulus() == p_) || !(P.y().modulus() == p_)) return false;
  return P.y().square() == rhs(P.x());
}

Point Curve::point(std::uint64_t x, std::uint64_t y) const {
  Point P = Point::affine(element(x), element(y));
  if (!contains(P)) {
    throw Error(ErrorCode::NotOnCurve, "(" + std::to_string(x) + ", " + std::to_string(y) + ") is not on the curve");
  }
  return P;
}

Point pointNegate(const Point& P) {
  if (P.isInfinity()) return P;
  return Point::affine(P.x(), -P.y());
}

Point pointAdd(const Point& P, const Point& Q, const Curve& E) {
  if (P.isInfinity()) return Q;
  if (Q.isInfinity()) return P;
  FieldElement lambda = E.element(0);
  if (P.x() == Q.x()) {
    if ((P.y() + Q.y()).isZero()) return Point::infinity();
    // doubling
    const FieldElement num = FieldElement(3, E.modulus()) * P.x().square() + E.a();
    lambda = num * fieldInverse(P.y() + P.y());
  } else {
    lambda = (Q.y() - P.y()) * fieldInverse(Q.x() - P.x());
  }
  const FieldElement x3 = lambda.square() - P.x() - Q.x();
  const FieldElement y3 = lambda * (P.x() - x3) - P.y();
  return Point::affine(x3, y3);
}

Point scalarMul(std::uint64_t n, const Point& P, const Curve& E) {
  Point result = Point::infinity();
  Point addend = P;
  while (n) {
    if (n & 1) result = pointAdd(result, addend, E);
    n >>= 1;
    if (n) addend = pointAdd(addend, addend, E);
  }
  return result;
}

Factorization factorize(std::uint64_t n) {
  Factorization out;
  for (std::uint64_t q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
    if (n % q) continue;
    unsigned e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.push_back({q, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::uint64_t groupOrder(const Curve& E) {
  const PrimeModulus m = E.modulus();
  const std::uint32_t p = m.value();
  std::vector<bool> isSquare(p, false);
  for (std::uint64_t x = 1; x <= p / 2; ++x) isSquare[x * x % p] = true;

  std::int64_t sum = 0;
  for (std::uint32_t x = 0; x < p; ++x) {
    const std::uint32_t v = E.rhs(FieldElement(x, m)).value();
    if (v == 0) continue;
    sum += isSquare[v] ? 1 : -1;
  }
  return static_cast<std::uint64_t>(static_cast<std::int64_t>(p) + 1 + sum);
}

PointOrderInfo pointOrder(const Point& P, const Curve& E, std::uint64_t groupOrder,
                          const Factorization& groupFactors) {
  PointOrderInfo info;
  info.groupOrder = groupOrder;
  info.groupFactors = groupFactors;
  std::uint64_t order = groupOrder;
  for (const auto& [q, e] : groupFactors) {
    unsigned kept = e;
    while (kept > 0 && scalarMul(order / q, P, E).isInfinity()) {
      order /= q;
      --kept;
    }
    if (kept > 0) info.orderFactors.push_back({q, kept});
  }
  info.pointOrder = order;
  return info;
}

PointOrderInfo pointOrder(const Point& P, const Curve& E) {
  const std::uint64_t n = groupOrder(E);
  return pointOrder(P, E, n, factorize(n));
}

std::pair<Point, PointOrderInfo> findPointOfLargeOrder(const Curve& E, double threshold, Rng& rng,
                                                       PointSearchOptions options) {
  const std::uint64_t n = groupOrder(E);
  if (threshold > static_cast<double>(n)) {
    throw Error(ErrorCode::NotFound, "no point can have order above the group order " + std::to_string(n));
  }
  const Factorization factors = factorize(n);
  const std::uint32_t p = E.modulus().value();
  for (unsigned attempt = 0; attempt < options.attempts; ++attempt) {
    const FieldElement x = E.element(rng.below(p));
    const auto y = fieldSqrt(E.rhs(x));
    if (!y) continue;
    const FieldElement yy = (rng.next() & 1) ? *y : -*y;
    const Point P = Point::affine(x, yy);
    PointOrderInfo info = pointOrder(P, E, n, factors);
    if (static_cast<double>(info.pointOrder) >= threshold) return {P, std::move(info)};
  }
  throw Error(ErrorCode::NotFound, "no point of order >= " + std::to_string(threshold) + " within the attempt budget");
}

Curve randomCurve(PrimeModulus p, Rng& rng, CurveSearchOptions options) {
  const double bound = std::pow(static_cast<double>(p.value()), 0.5 + options.largeFactorEpsilon);
  for (unsigned attempt = 0; attempt < options.attempts; ++attempt) {
    const std::uint64_t a = rng.below(p.value());
    const std::uint64_t b = rng.below(p.value());
    const FieldElement fa(a, p), fb(b, p);
    if ((FieldElement(4, p) * fa.square() * fa + FieldElement(27, p) * fb.square()).isZero()) continue;
    Curve E(p, a, b);
    if (!options.requireLargePrimeFactor) return E;
    const Factorization f = factorize(groupOrder(E));
    if (static_cast<double>(f.back().prime) > bound) return E;
  }
  throw Error(ErrorCode::NotFound, "no suitable curve mod " + std::to_string(p.value()));
}

std::uint64_t randomPrime(std::uint64_t lo, std::uint64_t hi, std::uint64_t congruence, Rng& rng) {
  if (lo < 5) lo = 5;
  if (congruence == 0) congruence = 1;
  if (hi >= PrimeModulus::kMaxExclusive) hi = PrimeModulus::kMaxExclusive - 1;
  if (lo > hi) throw Error(ErrorCode::NotFound, "empty prime range");
  for (unsigned attempt = 0; attempt < 100000; ++attempt) {
    std::uint64_t c = rng.between(lo, hi);
    // step to the next admissible residue class member
    c += (congruence + 1 - c % congruence) % congruence;
    if (c > hi) continue;
    if (isPrime(c)) return c;
  }
  throw Error(ErrorCode::NotFound, "no prime = 1 mod " + std::to_string(congruence) + " in [" + std::to_string(lo) +
                                       ", " + std::to_string(hi) + "]");
}

}  // namespace divsum
