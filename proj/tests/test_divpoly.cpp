// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vector>

#include "doctest.h"
#include "divsum/divpoly.hpp"
#include "divsum/error.hpp"
#include "divsum/rng.hpp"
#include "oracles.hpp"

using namespace divsum;

namespace {

struct Fixture {
  Curve curve;
  Point point;
  std::uint64_t order;
};

// A few random curves with points of order >= 3, p in [1000, 20000].
std::vector<Fixture> randomFixtures(std::uint64_t seed, int count) {
  Rng rng(seed);
  std::vector<Fixture> out;
  while (static_cast<int>(out.size()) < count) {
    const PrimeModulus p(randomPrime(1000, 20000, 1, rng));
    const Curve E = randomCurve(p, rng);
    const auto [P, info] = findPointOfLargeOrder(E, 3, rng);
    out.push_back({E, P, info.pointOrder});
  }
  return out;
}

}  // namespace

TEST_SUITE("divpoly") {

TEST_CASE("seed values on the small fixture") {
  const Curve E(PrimeModulus(5), 1, 1);
  const DivPolyBase base = psiSeed(E, E.point(0, 1));
  const std::uint32_t expected[] = {0, 1, 2, 4, 4};
  for (unsigned k = 0; k <= 4; ++k) CHECK(base.seed(k).value() == expected[k]);
}

TEST_CASE("first twenty terms on the small fixture") {
  // frozen from an independent evaluation of the recursion
  const std::uint32_t expected[] = {1, 2, 4, 4, 3, 2, 4, 3, 0, 2, 1, 3, 2, 1, 1, 3, 4, 0, 1, 2};
  const Curve E(PrimeModulus(5), 1, 1);
  const DivPolyBase base = psiSeed(E, E.point(0, 1));
  const auto stream = psiStream(base, 1, 20);
  for (int n = 1; n <= 20; ++n) {
    CAPTURE(n);
    CHECK(psiLadder(n, base).value() == expected[n - 1]);
    CHECK(stream[static_cast<std::size_t>(n - 1)].value() == expected[n - 1]);
    CHECK(psiLadder(-n, base) == -psiLadder(n, base));
  }
}

TEST_CASE("seeding rejects infinity and 2-torsion") {
  const Curve E(PrimeModulus(5), 0, 1);  // y^2 = x^3 + 1 has (4, 0)
  CHECK_THROWS_AS(psiSeed(E, Point::infinity()), Error);
  try {
    psiSeed(E, E.point(4, 0));
    FAIL("expected TwoTorsionPoint");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TwoTorsionPoint);
  }
}

TEST_CASE("ladder matches the recursive oracle") {
  for (const auto& fx : randomFixtures(21, 4)) {
    const DivPolyBase base = psiSeed(fx.curve, fx.point);
    oracle::Psi psi(fx.curve, fx.point);
    for (std::int64_t n = -50; n <= 2000; ++n) REQUIRE(psiLadder(n, base) == psi(n));
  }
}

TEST_CASE("windows are centred slices of the sequence") {
  for (const auto& fx : randomFixtures(22, 2)) {
    const DivPolyBase base = psiSeed(fx.curve, fx.point);
    for (std::int64_t c : {-3, 0, 1, 2, 3, 4, 17, 1000, 4097}) {
      const DivPolyWindow w = psiWindow(c, base);
      for (std::int64_t i = c - 2; i <= c + 2; ++i) REQUIRE(w.at(i) == psiLadder(i, base));
    }
  }
}

TEST_CASE("stream equals ladder for n <= 10^4") {
  for (const auto& fx : randomFixtures(23, 3)) {
    const DivPolyBase base = psiSeed(fx.curve, fx.point);
    const auto s = psiStream(base, 1, 10000);
    for (std::uint64_t n = 1; n <= 10000; ++n) REQUIRE(s[n - 1] == psiLadder(static_cast<std::int64_t>(n), base));
  }
}

TEST_CASE("strided streams from arbitrary starts, including through zeros") {
  const Curve E(PrimeModulus(5), 1, 1);
  const DivPolyBase tiny = psiSeed(E, E.point(0, 1));
  for (std::uint64_t stride = 1; stride <= 20; ++stride) {
    for (std::uint64_t start = 1; start <= 12; ++start) {
      PsiStream s(tiny, start, stride);
      for (std::uint64_t k = start; k < start + 40; ++k) {
        CAPTURE(stride);
        CAPTURE(k);
        REQUIRE(s.next() == psiLadder(static_cast<std::int64_t>(stride * k), tiny));
      }
    }
  }
  for (const auto& fx : randomFixtures(24, 3)) {
    const DivPolyBase base = psiSeed(fx.curve, fx.point);
    for (std::uint64_t stride : {std::uint64_t{2}, std::uint64_t{7}, fx.order, fx.order + 1, 2 * fx.order}) {
      PsiStream s(base, 5, stride);
      for (std::uint64_t k = 5; k < 5 + 3 * fx.order; ++k) {
        REQUIRE(s.next() == psiLadder(static_cast<std::int64_t>(stride * k), base));
      }
    }
  }
}

TEST_CASE("EDS identity on random triples") {
  Rng rng(25);
  for (const auto& fx : randomFixtures(25, 3)) {
    const DivPolyBase base = psiSeed(fx.curve, fx.point);
    auto psi = [&](std::int64_t n) { return psiLadder(n, base); };
    for (int t = 0; t < 500; ++t) {
      const auto r = static_cast<std::int64_t>(rng.between(1, 600));
      const auto n = static_cast<std::int64_t>(rng.between(static_cast<std::uint64_t>(r) + 1, 800));
      const auto m = static_cast<std::int64_t>(rng.between(static_cast<std::uint64_t>(n) + 1, 1200));
      const FieldElement lhs = psi(m + n) * psi(m - n) * psi(r).square();
      const FieldElement rhs = psi(m + r) * psi(m - r) * psi(n).square() - psi(n + r) * psi(n - r) * psi(m).square();
      REQUIRE(lhs == rhs);
    }
  }
}

TEST_CASE("corrupted seed breaks the identity once small terms are anchored to the curve") {
  // Any seeds generate some EDS, so the identity only detects corruption
  // when the low-index terms come from the curve rather than the base.
  const auto fx = randomFixtures(26, 1).front();
  const DivPolyBase good = psiSeed(fx.curve, fx.point);
  const DivPolyBase bad =
      DivPolyBase::withSeeds(fx.curve, fx.point, good.seed(3) + fx.curve.element(1), good.seed(4));
  auto holds = [&](const DivPolyBase& b, std::int64_t m, std::int64_t n, std::int64_t r) {
    auto psi = [&](std::int64_t k) {
      if (k >= -4 && k <= 4) return k < 0 ? -good.seed(static_cast<unsigned>(-k)) : good.seed(static_cast<unsigned>(k));
      return psiLadder(k, b);
    };
    return psi(m + n) * psi(m - n) * psi(r).square() ==
           psi(m + r) * psi(m - r) * psi(n).square() - psi(n + r) * psi(n - r) * psi(m).square();
  };
  int goodFailures = 0, badFailures = 0;
  for (std::int64_t m = 6; m < 40; ++m) {
    for (std::int64_t n = 2; n < m; ++n) {
      for (std::int64_t r = 1; r < n; ++r) {
        goodFailures += holds(good, m, n, r) ? 0 : 1;
        badFailures += holds(bad, m, n, r) ? 0 : 1;
      }
    }
  }
  CHECK(goodFailures == 0);
  CHECK(badFailures > 0);
}

TEST_CASE("transport identity at field level") {
  Rng rng(27);
  for (const auto& fx : randomFixtures(27, 3)) {
    const DivPolyBase base = psiSeed(fx.curve, fx.point);
    for (int t = 0; t < 300; ++t) {
      const std::uint64_t m = rng.between(1, 300);
      const std::uint64_t n = rng.between(1, 300);
      const Point mP = scalarMul(m, fx.point, fx.curve);
      if (mP.isInfinity() || mP.y().isZero()) continue;
      const DivPolyBase moved = psiSeed(fx.curve, mP);
      const FieldElement lhs = psiLadder(static_cast<std::int64_t>(m * n), base);
      const FieldElement rhs = psiLadder(static_cast<std::int64_t>(n), moved) *
                               psiLadder(static_cast<std::int64_t>(m), base).pow(n * n);
      REQUIRE(lhs == rhs);
    }
  }
}

TEST_CASE("zero locus") {
  for (const auto& fx : randomFixtures(28, 4)) {
    const DivPolyBase base = psiSeed(fx.curve, fx.point);
    PsiStream s(base, 1);
    for (std::uint64_t n = 1; n <= 3 * fx.order; ++n) REQUIRE(s.next().isZero() == (n % fx.order == 0));
  }
}

TEST_CASE("multiplication formula") {
  const Curve E(PrimeModulus(5), 1, 1);
  const DivPolyBase tiny = psiSeed(E, E.point(0, 1));
  CHECK(multByNX(1, tiny)->value() == 0u);
  CHECK_FALSE(multByNX(9, tiny).has_value());
  CHECK(multByN(9, tiny).isInfinity());
  for (const auto& fx : randomFixtures(29, 3)) {
    const DivPolyBase base = psiSeed(fx.curve, fx.point);
    for (std::int64_t n = 1; n <= 500; ++n) {
      const Point Q = scalarMul(static_cast<std::uint64_t>(n), fx.point, fx.curve);
      const auto x = multByNX(n, base);
      REQUIRE(x.has_value() == !Q.isInfinity());
      if (x) REQUIRE(*x == Q.x());
      REQUIRE(multByN(n, base) == Q);
    }
  }
}

TEST_CASE("psi products") {
  const Curve E(PrimeModulus(5), 1, 1);
  const Point Q = E.point(0, 1);
  const std::vector<PsiFactor> one{{1, 5}};
  CHECK(psiProductAt(E, Q, one)->value() == 1u);
  const std::vector<PsiFactor> two{{2, 1}};
  CHECK(psiProductAt(E, Q, two)->value() == 2u);
  const std::vector<PsiFactor> cancel{{3, 1}, {3, -1}};
  CHECK(psiProductAt(E, Q, cancel)->value() == 1u);
  const std::vector<PsiFactor> pole{{9, -1}, {2, 1}};
  CHECK_FALSE(psiProductAt(E, Q, pole).has_value());
  const std::vector<PsiFactor> zero{{9, 1}, {2, -1}};
  CHECK(psiProductAt(E, Q, zero)->isZero());
  CHECK(psiProductDegree(cancel) == 16);
  CHECK(psiProductDegree(quadrupleSpec(1, 2, 3, 5)) == 8 + 99 + 24 + 35);
}

TEST_CASE("gcd condition") {
  CHECK_FALSE(gcdConditionHolds(2, 2, 3, 5));
  CHECK_FALSE(gcdConditionHolds(2, 3, 4, 6));
  CHECK(gcdConditionHolds(2, 3, 5, 7));
  CHECK(gcdConditionHolds(3, 7, 11, 13));
  CHECK_FALSE(gcdConditionHolds(2, 3, 5, 5));
  const auto spec = quadrupleSpec(2, 3, 5, 7);
  REQUIRE(spec.size() == 4);
  CHECK(spec[0].index == 10);
  CHECK(spec[1].index == 21);
  CHECK(spec[2].index == 14);
  CHECK(spec[2].exponent == -1);
  CHECK(spec[3].index == 15);
}

}  // TEST_SUITE
