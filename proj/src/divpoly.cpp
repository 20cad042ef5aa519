// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

#include "divsum/divpoly.hpp"

#include <bit>
#include <cstdlib>
#include <numeric>

#include "divsum/error.hpp"

namespace divsum {

namespace {

FieldElement psi3At(const Curve& E, const FieldElement& x) {
  const PrimeModulus m = E.modulus();
  const FieldElement& a = E.a();
  const FieldElement& b = E.b();
  const FieldElement x2 = x.square();
  return FieldElement(3, m) * x2.square() + FieldElement(6, m) * a * x2 + FieldElement(12, m) * b * x - a.square();
}

FieldElement psi4At(const Curve& E, const FieldElement& x, const FieldElement& y) {
  const PrimeModulus m = E.modulus();
  const FieldElement& a = E.a();
  const FieldElement& b = E.b();
  const FieldElement x2 = x.square();
  const FieldElement x3 = x2 * x;
  const FieldElement inner = x3.square() + FieldElement(5, m) * a * x2.square() + FieldElement(20, m) * b * x3 -
                             FieldElement(5, m) * a.square() * x2 - FieldElement(4, m) * a * b * x -
                             FieldElement(8, m) * b.square() - a.square() * a;
  return FieldElement(4, m) * y * inner;
}

// window[i] = psi_{k-3+i}, i = 0..7
using LadderWindow = std::array<FieldElement, 8>;

LadderWindow initialWindow(const DivPolyBase& base) {
  const FieldElement& p1 = base.seed(1);
  const FieldElement& p2 = base.seed(2);
  const FieldElement& p3 = base.seed(3);
  const FieldElement& p4 = base.seed(4);
  const FieldElement p5 = p4 * p2.square() * p2 - p1 * p3.square() * p3;
  return {-p2, -p1, base.seed(0), p1, p2, p3, p4, p5};
}

// Moves the window centre from k to 2k + bit.
LadderWindow doubleWindow(const LadderWindow& w, bool addOne, const FieldElement& inv2) {
  auto at = [&](int j) -> const FieldElement& { return w[static_cast<std::size_t>(j + 3)]; };
  // psi_{2(k+j)+1}
  auto odd = [&](int j) {
    return at(j + 2) * at(j).square() * at(j) - at(j - 1) * at(j + 1).square() * at(j + 1);
  };
  // psi_{2(k+j)}
  auto even = [&](int j) {
    return at(j) * (at(j + 2) * at(j - 1).square() - at(j - 2) * at(j + 1).square()) * inv2;
  };
  // psi_{2k-3} .. psi_{2k+5}
  const std::array<FieldElement, 9> d = {odd(-2), even(-1), odd(-1), even(0), odd(0),
                                         even(1), odd(1),   even(2), odd(2)};
  LadderWindow out = w;
  const std::size_t shift = addOne ? 1 : 0;
  for (std::size_t i = 0; i < 8; ++i) out[i] = d[i + shift];
  return out;
}

LadderWindow ladderWindow(std::uint64_t n, const DivPolyBase& base) {
  LadderWindow w = initialWindow(base);
  const int top = std::bit_width(n) - 1;
  for (int bit = top - 1; bit >= 0; --bit) {
    w = doubleWindow(w, (n >> bit) & 1, base.psi2Inverse());
  }
  return w;
}

}  // namespace

DivPolyBase::DivPolyBase(const Curve& E, const Point& P, const FieldElement& psi3, const FieldElement& psi4)
    : curve_(E),
      point_(P),
      seeds_{E.element(0), E.element(1), P.y() + P.y(), psi3, psi4},
      psi2Inverse_(fieldInverse(P.y() + P.y())),
      psi2Squared_((P.y() + P.y()).square()) {}

DivPolyBase DivPolyBase::withSeeds(const Curve& E, const Point& P, const FieldElement& psi3,
                                   const FieldElement& psi4) {
  if (P.isInfinity()) throw Error(ErrorCode::InfinityPoint, "division polynomials need an affine point");
  if (P.y().isZero()) throw Error(ErrorCode::TwoTorsionPoint, "y(P) = 0");
  return DivPolyBase(E, P, psi3, psi4);
}

DivPolyBase psiSeed(const Curve& E, const Point& P) {
  if (P.isInfinity()) throw Error(ErrorCode::InfinityPoint, "division polynomials need an affine point");
  if (P.y().isZero()) throw Error(ErrorCode::TwoTorsionPoint, "y(P) = 0");
  return DivPolyBase(E, P, psi3At(E, P.x()), psi4At(E, P.x(), P.y()));
}

FieldElement psiLadder(std::int64_t n, const DivPolyBase& base) {
  if (n < 0) return -psiLadder(-n, base);
  if (n <= 4) return base.seed(static_cast<unsigned>(n));
  return ladderWindow(static_cast<std::uint64_t>(n), base)[3];
}

DivPolyWindow psiWindow(std::int64_t center, const DivPolyBase& base) {
  const FieldElement zero = base.seed(0);
  DivPolyWindow out{center, {zero, zero, zero, zero, zero}};
  if (center <= 2) {
    for (std::int64_t i = -2; i <= 2; ++i) out.values[static_cast<std::size_t>(i + 2)] = psiLadder(center + i, base);
    return out;
  }
  const LadderWindow w = ladderWindow(static_cast<std::uint64_t>(center), base);
  for (std::size_t i = 0; i < 5; ++i) out.values[i] = w[i + 1];
  return out;
}

PsiStream::PsiStream(const DivPolyBase& base, std::uint64_t start, std::uint64_t stride)
    : base_(&base),
      stride_(stride),
      k_(start),
      window_{base.seed(0), base.seed(0), base.seed(0), base.seed(0)},
      v2sq_(base.seed(0)),
      v3_(base.seed(0)),
      v1sqInv_(base.seed(0)) {
  if (stride == 0 || start == 0) throw Error(ErrorCode::InvalidArgument, "stream start and stride must be >= 1");
  const FieldElement v1 = psiLadder(static_cast<std::int64_t>(stride), base);
  if (v1.isZero()) {
    // ord P divides the stride: every term vanishes.
    allZero_ = true;
    return;
  }
  v1sqInv_ = fieldInverse(v1.square());
  v2sq_ = psiLadder(static_cast<std::int64_t>(2 * stride), base).square();
  v3_ = psiLadder(static_cast<std::int64_t>(3 * stride), base) * v1;
  seedAt(start);
  reseeds_ = 0;
}

FieldElement PsiStream::term(std::int64_t k) const {
  return psiLadder(k * static_cast<std::int64_t>(stride_), *base_);
}

void PsiStream::seedAt(std::uint64_t k) {
  const auto kk = static_cast<std::int64_t>(k);
  if (stride_ == 1) {
    const DivPolyWindow w = psiWindow(kk, *base_);
    for (std::size_t i = 0; i < 4; ++i) window_[i] = w.values[i];
  } else {
    for (std::int64_t i = 0; i < 4; ++i) window_[static_cast<std::size_t>(i)] = term(kk - 2 + i);
  }
  ++reseeds_;
}

FieldElement PsiStream::next() {
  if (allZero_) {
    ++k_;
    return base_->seed(0);
  }
  const FieldElement out = window_[2];
  if (window_[0].isZero()) {
    seedAt(k_ + 1);
  } else {
    const FieldElement numer = window_[3] * window_[1] * v2sq_ - v3_ * window_[2].square();
    const FieldElement ahead = numer * fieldInverse(window_[0]) * v1sqInv_;
    window_ = {window_[1], window_[2], window_[3], ahead};
  }
  ++k_;
  return out;
}

std::vector<FieldElement> psiStream(const DivPolyBase& base, std::uint64_t nStart, std::uint64_t count) {
  std::vector<FieldElement> out;
  out.reserve(count);
  PsiStream stream(base, nStart);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(stream.next());
  return out;
}

std::optional<FieldElement> multByNX(std::int64_t n, const DivPolyBase& base) {
  const DivPolyWindow w = psiWindow(n, base);
  const FieldElement& psiN = w.at(n);
  if (psiN.isZero()) return std::nullopt;
  return base.point().x() - w.at(n - 1) * w.at(n + 1) * fieldInverse(psiN.square());
}

Point multByN(std::int64_t n, const DivPolyBase& base) {
  const DivPolyWindow w = psiWindow(n, base);
  const FieldElement& psiN = w.at(n);
  if (psiN.isZero()) return Point::infinity();
  const FieldElement x = base.point().x() - w.at(n - 1) * w.at(n + 1) * fieldInverse(psiN.square());
  const FieldElement omega = w.at(n + 2) * w.at(n - 1).square() - w.at(n - 2) * w.at(n + 1).square();
  const FieldElement denom = FieldElement(4, base.curve().modulus()) * base.point().y() * psiN.square() * psiN;
  return Point::affine(x, omega * fieldInverse(denom));
}

std::optional<FieldElement> psiProductAt(const Curve& E, const Point& Q, std::span<const PsiFactor> spec) {
  const DivPolyBase base = psiSeed(E, Q);
  FieldElement product = E.element(1);
  bool numeratorZero = false;
  for (const PsiFactor& f : spec) {
    if (f.index == 0) throw Error(ErrorCode::InvalidArgument, "psi-product indices must be >= 1");
    if (f.exponent == 0) continue;
    const FieldElement v = psiLadder(static_cast<std::int64_t>(f.index), base);
    if (v.isZero()) {
      if (f.exponent < 0) return std::nullopt;
      numeratorZero = true;
      continue;
    }
    const unsigned e = static_cast<unsigned>(std::abs(f.exponent));
    product *= f.exponent > 0 ? v.pow(e) : fieldInverse(v).pow(e);
  }
  if (numeratorZero) return E.element(0);
  return product;
}

std::uint64_t psiProductDegree(std::span<const PsiFactor> spec) {
  std::uint64_t deg = 0;
  for (const PsiFactor& f : spec) {
    deg += static_cast<std::uint64_t>(std::abs(f.exponent)) * (f.index * f.index - 1);
  }
  return deg;
}

bool gcdConditionHolds(std::uint64_t m1, std::uint64_t m2, std::uint64_t n1, std::uint64_t n2) {
  if (m1 == m2 || n1 == n2) return false;
  return std::gcd(m1 * n1, m2 * n2) == std::gcd(m1 * n2, m2 * n1);
}

std::vector<PsiFactor> quadrupleSpec(std::uint64_t m1, std::uint64_t m2, std::uint64_t n1, std::uint64_t n2) {
  return {{m1 * n1, 1}, {m2 * n2, 1}, {m1 * n2, -1}, {m2 * n1, -1}};
}

}  // namespace divsum
