// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

#include "divsum/multfunc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "divsum/error.hpp"

namespace divsum {

SieveTables::SieveTables(std::uint64_t limit) : limit_(limit) {
  if (limit > kMaxLimit) {
    throw Error(ErrorCode::LimitTooLarge,
                "sieve limit " + std::to_string(limit) + " exceeds " + std::to_string(kMaxLimit));
  }
  const std::size_t size = static_cast<std::size_t>(limit) + 1;
  spf_.assign(size, 0);
  lpf_.assign(size, 0);
  mu_.assign(size, 0);
  if (limit >= 1) {
    spf_[1] = 1;
    lpf_[1] = 1;
    mu_[1] = 1;
  }
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t q : primes) {
      const std::uint64_t c = q * i;
      if (q > spf_[i] || c > limit) break;
      spf_[c] = q;
    }
    const std::uint64_t rest = i / spf_[i];
    lpf_[i] = std::max<std::uint32_t>(lpf_[rest], spf_[i]);
    mu_[i] = spf_[rest] == spf_[i] ? 0 : static_cast<std::int8_t>(-mu_[rest]);
  }
}

Factorization SieveTables::factor(std::uint64_t n) const {
  Factorization out;
  while (n > 1) {
    const std::uint32_t q = spf_[n];
    unsigned e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.push_back({q, e});
  }
  return out;
}

SieveTables buildSieve(std::uint64_t limit) { return SieveTables(limit); }

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void requireInTable(std::uint64_t n, const SieveTables& tables) {
  if (n == 0 || n > tables.limit()) {
    throw Error(ErrorCode::InvalidArgument,
                std::to_string(n) + " is outside the sieve range [1, " + std::to_string(tables.limit()) + "]");
  }
}

}  // namespace

std::uint64_t tauNu(std::uint64_t n, unsigned nu, const SieveTables& tables) {
  requireInTable(n, tables);
  if (nu == 0) return n == 1 ? 1 : 0;
  std::uint64_t r = 1;
  for (const auto& [q, a] : tables.factor(n)) r *= binomial(a + nu - 1, nu - 1);
  return r;
}

double tauMomentRatio(std::uint64_t N, unsigned nu, unsigned C, const SieveTables& tables) {
  if (N < 2) throw Error(ErrorCode::InvalidArgument, "moment ratio needs N >= 2");
  requireInTable(N, tables);
  long double sum = 0;
  for (std::uint64_t n = 1; n <= N; ++n) sum += std::pow(static_cast<long double>(tauNu(n, nu, tables)), C);
  const double exponent = std::pow(static_cast<double>(nu), C) - 1.0;
  return static_cast<double>(sum / (static_cast<long double>(N) * std::pow(std::log(static_cast<long double>(N)), exponent)));
}

unsigned classifyAr(std::uint64_t n, Interval I, const SieveTables& tables) {
  requireInTable(n, tables);
  unsigned r = 0;
  for (const auto& [q, a] : tables.factor(n)) {
    if (I.contains(static_cast<double>(q))) r += a;
  }
  return r;
}

unsigned repeatedPrimesIn(std::uint64_t n, Interval I, const SieveTables& tables) {
  requireInTable(n, tables);
  unsigned r = 0;
  for (const auto& [q, a] : tables.factor(n)) {
    if (a >= 2 && I.contains(static_cast<double>(q))) ++r;
  }
  return r;
}

std::optional<SmoothSplit> smoothDecompose(std::uint64_t n, std::uint64_t L0, const SieveTables& tables) {
  requireInTable(n, tables);
  if (n <= L0) return std::nullopt;
  std::uint64_t ell = 1;
  std::uint64_t rest = n;
  while (ell <= L0) {
    ell *= tables.spf(rest);
    rest /= tables.spf(rest);
  }
  return SmoothSplit{ell, rest};
}

std::uint64_t largestPrimeFactor(std::uint64_t n, const SieveTables& tables) {
  requireInTable(n, tables);
  return tables.lpf(n);
}

std::uint64_t smallestPrimeFactor(std::uint64_t n, const SieveTables& tables) {
  requireInTable(n, tables);
  return n == 1 ? std::numeric_limits<std::uint64_t>::max() : tables.spf(n);
}

double smoothAlpha(double N, double y) { return std::log(1.0 + y / std::log(N)) / std::log(y); }

SmoothParams psiCountAndAlpha(std::uint64_t N, std::uint64_t y, const SieveTables& tables) {
  if (y < 2 || N < 2) throw Error(ErrorCode::InvalidArgument, "need 2 <= y and 2 <= N");
  requireInTable(N, tables);
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= N; ++n) count += tables.lpf(n) <= y ? 1 : 0;
  SmoothParams out{N, y, smoothAlpha(static_cast<double>(N), static_cast<double>(y)), count, 0.0};
  out.empiricalExponent = std::log(static_cast<double>(count)) / std::log(static_cast<double>(N));
  return out;
}

TwistFunction TwistFunction::dirichlet(DirichletCharacter chi) {
  TwistFunction f(Kind::Dirichlet, chi.modulus());
  f.character_ = std::move(chi);
  return f;
}

std::uint32_t TwistFunction::phaseOrder() const noexcept {
  return kind_ == Kind::Dirichlet ? character_->order() : 1;
}

unsigned TwistFunction::tauBound() const noexcept {
  return kind_ == Kind::TauNu ? static_cast<unsigned>(param_) : 1;
}

std::string TwistFunction::describe() const {
  switch (kind_) {
    case Kind::One: return "one";
    case Kind::TauNu: return "tau:" + std::to_string(param_);
    case Kind::Moebius: return "mu";
    case Kind::MoebiusSq: return "mu2";
    case Kind::KFree: return "kfree:" + std::to_string(param_);
    case Kind::Smooth: return "smooth:y=" + std::to_string(param_);
    case Kind::SumTwoSquares: return "r0";
    case Kind::Dirichlet: {
      std::string s = "dirichlet:q=" + std::to_string(param_) + ",exp=";
      const auto exps = character_->exponents();
      for (std::size_t i = 0; i < exps.size(); ++i) s += (i ? "/" : "") + std::to_string(exps[i]);
      return s;
    }
  }
  return "?";
}

TwistValue evalTwist(const TwistFunction& f, std::uint64_t n, const SieveTables& tables) {
  using Kind = TwistFunction::Kind;
  switch (f.kind()) {
    case Kind::One: return {1, 0};
    case Kind::TauNu: return {static_cast<std::int64_t>(tauNu(n, static_cast<unsigned>(f.parameter()), tables)), 0};
    case Kind::Moebius: requireInTable(n, tables); return {tables.mu(n), 0};
    case Kind::MoebiusSq: requireInTable(n, tables); return {tables.mu(n) != 0 ? 1 : 0, 0};
    case Kind::KFree: {
      requireInTable(n, tables);
      for (const auto& [q, a] : tables.factor(n)) {
        if (a >= f.parameter()) return {0, 0};
      }
      return {1, 0};
    }
    case Kind::Smooth: requireInTable(n, tables); return {tables.lpf(n) <= f.parameter() ? 1 : 0, 0};
    case Kind::SumTwoSquares: {
      requireInTable(n, tables);
      for (const auto& [q, a] : tables.factor(n)) {
        if (q % 4 == 3 && a % 2 == 1) return {0, 0};
      }
      return {1, 0};
    }
    case Kind::Dirichlet: {
      const CharValue v = (*f.character())(n);
      if (v.isZero()) return {0, 0};
      return {1, v.index()};
    }
  }
  return {0, 0};
}

}  // namespace divsum
