// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

#include "divsum/sums.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <numbers>
#include <numeric>
#include <string>
#include <thread>

#include "divsum/error.hpp"

namespace divsum {

namespace {

constexpr std::uint64_t kMinChunk = 4096;

// Splits [first, last] into contiguous chunks, folds each on its own thread
// into a private State and merges the states in chunk order.
template <class State, class Make, class Fn, class Merge>
State parallelFold(std::uint64_t first, std::uint64_t last, unsigned workers, Make make, Fn fn, Merge merge) {
  State result = make();
  if (last < first) return result;
  const std::uint64_t count = last - first + 1;
  const std::uint64_t chunks = std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, count / kMinChunk));
  if (chunks == 1) {
    fn(result, first, last);
    return result;
  }
  std::vector<State> states;
  states.reserve(chunks);
  for (std::uint64_t c = 0; c < chunks; ++c) states.push_back(make());
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> threads;
  threads.reserve(chunks);
  for (std::uint64_t c = 0; c < chunks; ++c) {
    const std::uint64_t lo = first + count * c / chunks;
    const std::uint64_t hi = first + count * (c + 1) / chunks - 1;
    threads.emplace_back([&, c, lo, hi] {
      try {
        fn(states[c], lo, hi);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (auto& s : states) merge(result, s);
  return result;
}

BucketAccumulator foldBuckets(std::uint64_t first, std::uint64_t last, std::uint32_t order, unsigned workers,
                              const auto& fn) {
  return parallelFold<BucketAccumulator>(
      first, last, workers, [order] { return BucketAccumulator(order); }, fn,
      [](BucketAccumulator& into, const BucketAccumulator& from) { into.merge(from); });
}

// chi(psi_{stride k}) for k = start, start+1, ..., from a shared table when it
// covers the range and from a private stream otherwise.
class ChiPsiCursor {
 public:
  ChiPsiCursor(const DivPolyBase& base, const CharacterModP& chi, std::uint64_t start, std::uint64_t stride,
               std::uint64_t end, const ChiPsiTable* table)
      : chi_(&chi), stride_(stride), k_(start) {
    if (table && stride * end <= table->size()) {
      table_ = table;
    } else {
      stream_.emplace(base, start, stride);
    }
  }

  CharValue next() {
    if (table_) return table_->at(stride_ * k_++);
    return (*chi_)(stream_->next());
  }

 private:
  const CharacterModP* chi_;
  std::uint64_t stride_;
  std::uint64_t k_;
  const ChiPsiTable* table_ = nullptr;
  std::optional<PsiStream> stream_;
};

std::uint32_t combinedOrder(std::uint32_t a, std::uint32_t b) { return std::lcm(a, b); }

void requireN(std::uint64_t N) {
  if (N == 0) throw Error(ErrorCode::InvalidArgument, "N must be >= 1");
}

void requireRange(const SumContext& ctx, std::uint64_t N, const SumOptions& opts) {
  requireN(N);
  if (N > ctx.R && !opts.overrideRange) {
    throw Error(ErrorCode::RangeExceedsR, "N = " + std::to_string(N) + " exceeds R = " + std::to_string(ctx.R));
  }
}

// f(n) chi(psi_n) into acc, where acc has order lcm(d, f's phase order).
inline void accumulateTerm(BucketAccumulator& acc, CharValue chi, const TwistValue& tv, std::uint32_t d,
                           std::uint32_t fOrder) {
  if (chi.isZero() || tv.coefficient == 0) {
    acc.addZero();
    return;
  }
  const std::uint32_t E = acc.order();
  const std::uint64_t idx =
      (static_cast<std::uint64_t>(chi.index()) * (E / d) + static_cast<std::uint64_t>(tv.phase) * (E / fOrder)) % E;
  acc.add(static_cast<std::uint32_t>(idx), tv.coefficient);
}

}  // namespace

SumContext makeContext(const Curve& E, const Point& P, const PointOrderInfo& info, const CharacterModP& chi,
                       double epsilon) {
  if (!(chi.modulus() == E.modulus())) {
    throw Error(ErrorCode::InvalidArgument, "character and curve live over different fields");
  }
  if (P.isInfinity()) throw Error(ErrorCode::InfinityPoint, "P must be affine");
  if (info.pointOrder < 3) {
    throw Error(ErrorCode::SmallOrder, "ord P = " + std::to_string(info.pointOrder) + " < 3");
  }
  DivPolyBase base = psiSeed(E, P);
  const std::uint64_t R = static_cast<std::uint64_t>(chi.order()) * info.pointOrder;
  const double p = E.modulus().value();
  return SumContext{E,
                    P,
                    std::move(base),
                    chi,
                    info,
                    R,
                    epsilon,
                    strongRCondition(p, static_cast<double>(R), epsilon),
                    weakRCondition(p, static_cast<double>(R))};
}

SumContext makeContext(const Curve& E, const Point& P, const CharacterModP& chi, double epsilon) {
  if (P.isInfinity()) throw Error(ErrorCode::InfinityPoint, "P must be affine");
  return makeContext(E, P, pointOrder(P, E), chi, epsilon);
}

BucketAccumulator::BucketAccumulator(std::uint32_t order) : weights_(std::max<std::uint32_t>(order, 1), 0) {}

void BucketAccumulator::addScaled(const BucketAccumulator& other, std::int64_t factor, std::uint32_t rotation) {
  const std::uint32_t E = order();
  const std::uint32_t oE = other.order();
  if (E % oE != 0) throw Error(ErrorCode::InvalidArgument, "bucket orders are incompatible");
  const std::uint32_t step = E / oE;
  for (std::uint32_t j = 0; j < oE; ++j) {
    if (other.weights_[j] == 0) continue;
    weights_[(static_cast<std::uint64_t>(j) * step + rotation) % E] += factor * other.weights_[j];
  }
  zeroCount_ += other.zeroCount_;
  zeroDenominatorCount_ += other.zeroDenominatorCount_;
}

BucketAccumulator BucketAccumulator::lifted(std::uint32_t order) const {
  BucketAccumulator out(order);
  out.addScaled(*this);
  return out;
}

std::complex<double> BucketAccumulator::value() const {
  const double E = static_cast<double>(order());
  double re = 0, im = 0;
  for (std::uint32_t j = 0; j < order(); ++j) {
    if (weights_[j] == 0) continue;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / E;
    re += static_cast<double>(weights_[j]) * std::cos(angle);
    im += static_cast<double>(weights_[j]) * std::sin(angle);
  }
  // exact zeros for the real-valued buckets
  if (order() <= 2) im = 0;
  return {re, im};
}

bool BucketAccumulator::sameWeights(const BucketAccumulator& other) const {
  const std::uint32_t common = std::lcm(order(), other.order());
  const BucketAccumulator a = lifted(common);
  const BucketAccumulator b = other.lifted(common);
  return a.weights_ == b.weights_;
}

bool BucketAccumulator::empty() const noexcept {
  return zeroCount_ == 0 && std::all_of(weights_.begin(), weights_.end(), [](std::int64_t w) { return w == 0; });
}

SumResult SumResult::from(BucketAccumulator buckets, std::uint64_t N, std::uint64_t R, std::string twist) {
  SumResult r{std::move(buckets), {}, 0.0, N, R, 0, 0, std::move(twist), std::nullopt, std::nullopt};
  r.value = r.buckets.value();
  r.absValue = std::abs(r.value);
  r.zeroCount = r.buckets.zeroCount();
  r.zeroDenominatorCount = r.buckets.zeroDenominatorCount();
  return r;
}

void SumResult::attachBound(std::optional<double> rhs) {
  boundRhs = rhs;
  ratio.reset();
  if (rhs && *rhs > 0) ratio = absValue / *rhs;
}

ChiPsiTable chiPsiTable(const SumContext& ctx, std::uint64_t length, unsigned workers) {
  ChiPsiTable table;
  table.values.assign(length, CharValue::zero());
  if (length == 0) return table;
  parallelFold<int>(
      1, length, workers, [] { return 0; },
      [&](int&, std::uint64_t lo, std::uint64_t hi) {
        PsiStream stream(ctx.base, lo);
        for (std::uint64_t n = lo; n <= hi; ++n) table.values[n - 1] = ctx.chi(stream.next());
      },
      [](int&, int) {});
  return table;
}

SumResult sumS(const SumContext& ctx, const TwistFunction& f, std::uint64_t N, const SieveTables& tables,
               const SumOptions& opts) {
  requireRange(ctx, N, opts);
  const std::uint32_t d = ctx.d();
  const std::uint32_t fOrder = f.phaseOrder();
  BucketAccumulator acc =
      foldBuckets(1, N, combinedOrder(d, fOrder), opts.workers, [&](BucketAccumulator& a, std::uint64_t lo, std::uint64_t hi) {
        ChiPsiCursor cursor(ctx.base, ctx.chi, lo, 1, hi, opts.table);
        for (std::uint64_t n = lo; n <= hi; ++n) {
          const CharValue chi = cursor.next();
          accumulateTerm(a, chi, evalTwist(f, n, tables), d, fOrder);
        }
      });
  return SumResult::from(std::move(acc), N, ctx.R, f.describe());
}

SumResult sumSByLadder(const SumContext& ctx, const TwistFunction& f, std::uint64_t N, const SieveTables& tables) {
  requireN(N);
  const std::uint32_t d = ctx.d();
  const std::uint32_t fOrder = f.phaseOrder();
  BucketAccumulator acc(combinedOrder(d, fOrder));
  for (std::uint64_t n = 1; n <= N; ++n) {
    const CharValue chi = ctx.chi(psiLadder(static_cast<std::int64_t>(n), ctx.base));
    accumulateTerm(acc, chi, evalTwist(f, n, tables), d, fOrder);
  }
  return SumResult::from(std::move(acc), N, ctx.R, f.describe());
}

SumResult correlationSum(const SumContext& ctx, std::uint64_t l1, std::uint64_t l2, std::uint64_t N,
                         const SumOptions& opts) {
  requireN(N);
  if (l1 == l2 || l1 == 0 || l2 == 0) {
    throw Error(ErrorCode::InvalidArgument, "correlation needs distinct positive scales");
  }
  const std::uint32_t d = ctx.d();
  BucketAccumulator acc = foldBuckets(1, N, d, opts.workers, [&](BucketAccumulator& a, std::uint64_t lo, std::uint64_t hi) {
    ChiPsiCursor first(ctx.base, ctx.chi, lo, l1, hi, opts.table);
    ChiPsiCursor second(ctx.base, ctx.chi, lo, l2, hi, opts.table);
    for (std::uint64_t n = lo; n <= hi; ++n) {
      const CharValue v = charMultiply(first.next(), charConjugate(second.next(), d), d);
      if (v.isZero()) {
        a.addZero();
      } else {
        a.add(v.index(), 1);
      }
    }
  });
  return SumResult::from(std::move(acc), N, ctx.R,
                         "corr:" + std::to_string(l1) + "," + std::to_string(l2));
}

std::vector<SumResult> progressionSums(const SumContext& ctx, std::uint64_t q, std::uint64_t N,
                                       const SumOptions& opts) {
  requireN(N);
  if (q == 0) throw Error(ErrorCode::InvalidArgument, "progression modulus must be >= 1");
  const std::uint32_t d = ctx.d();
  using State = std::vector<BucketAccumulator>;
  State classes = parallelFold<State>(
      1, N, opts.workers, [&] { return State(q, BucketAccumulator(d)); },
      [&](State& s, std::uint64_t lo, std::uint64_t hi) {
        ChiPsiCursor cursor(ctx.base, ctx.chi, lo, 1, hi, opts.table);
        for (std::uint64_t n = lo; n <= hi; ++n) {
          const CharValue v = cursor.next();
          BucketAccumulator& a = s[(n + q - 1) % q];  // class k = n mod q in 1..q
          if (v.isZero()) {
            a.addZero();
          } else {
            a.add(v.index(), 1);
          }
        }
      },
      [](State& into, const State& from) {
        for (std::size_t i = 0; i < into.size(); ++i) into[i].merge(from[i]);
      });
  std::vector<SumResult> out;
  out.reserve(q);
  for (std::uint64_t k = 1; k <= q; ++k) {
    out.push_back(SumResult::from(std::move(classes[k - 1]), N, ctx.R,
                                  "prog:" + std::to_string(k) + "mod" + std::to_string(q)));
  }
  return out;
}

SumResult progressionSum(const SumContext& ctx, std::uint64_t q, std::uint64_t k, std::uint64_t N,
                         const SumOptions& opts) {
  if (q == 0 || k < 1 || k > q) throw Error(ErrorCode::InvalidArgument, "need 1 <= k <= q");
  requireN(N);
  const std::uint32_t d = ctx.d();
  BucketAccumulator acc = foldBuckets(1, N, d, opts.workers, [&](BucketAccumulator& a, std::uint64_t lo, std::uint64_t hi) {
    ChiPsiCursor cursor(ctx.base, ctx.chi, lo, 1, hi, opts.table);
    for (std::uint64_t n = lo; n <= hi; ++n) {
      const CharValue v = cursor.next();
      if (n % q != k % q) continue;
      if (v.isZero()) {
        a.addZero();
      } else {
        a.add(v.index(), 1);
      }
    }
  });
  return SumResult::from(std::move(acc), N, ctx.R, "prog:" + std::to_string(k) + "mod" + std::to_string(q));
}

SumResult scaledSum(const SumContext& ctx, std::uint64_t m, std::uint64_t N, const SumOptions& opts) {
  requireN(N);
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "scale must be >= 1");
  const std::uint32_t d = ctx.d();
  BucketAccumulator acc = foldBuckets(1, N, d, opts.workers, [&](BucketAccumulator& a, std::uint64_t lo, std::uint64_t hi) {
    ChiPsiCursor cursor(ctx.base, ctx.chi, lo, m, hi, opts.table);
    for (std::uint64_t n = lo; n <= hi; ++n) {
      const CharValue v = cursor.next();
      if (v.isZero()) {
        a.addZero();
      } else {
        a.add(v.index(), 1);
      }
    }
  });
  return SumResult::from(std::move(acc), N, ctx.R, "scaled:" + std::to_string(m));
}

SumResult scaledSumTransported(const SumContext& ctx, std::uint64_t m, std::uint64_t N, unsigned workers) {
  requireN(N);
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "scale must be >= 1");
  const std::uint32_t d = ctx.d();
  const std::string label = "scaled:" + std::to_string(m);
  const Point mP = scalarMul(m, ctx.point, ctx.curve);
  if (mP.isInfinity()) {
    // psi_m(P) = 0, so every psi_{mn}(P) vanishes
    BucketAccumulator acc(d);
    acc.addZero(N);
    return SumResult::from(std::move(acc), N, ctx.R, label);
  }
  if (mP.y().isZero()) throw Error(ErrorCode::TwoTorsionPoint, "mP is a 2-torsion point");
  const DivPolyBase moved = psiSeed(ctx.curve, mP);
  const CharValue twist = ctx.chi(psiLadder(static_cast<std::int64_t>(m), ctx.base));
  BucketAccumulator acc = foldBuckets(1, N, d, workers, [&](BucketAccumulator& a, std::uint64_t lo, std::uint64_t hi) {
    ChiPsiCursor cursor(moved, ctx.chi, lo, 1, hi, nullptr);
    for (std::uint64_t n = lo; n <= hi; ++n) {
      const CharValue v = cursor.next();
      if (v.isZero()) {
        a.addZero();
        continue;
      }
      const std::uint64_t nsq = (n % d) * (n % d) % d;
      a.add(static_cast<std::uint32_t>((v.index() + twist.index() * nsq) % d), 1);
    }
  });
  return SumResult::from(std::move(acc), N, ctx.R, label);
}

SumResult completeTwistedSum(const SumContext& ctx, std::span<const PsiFactor> spec, std::int64_t a,
                             unsigned workers) {
  if (ctx.R >= (std::uint64_t{1} << 32)) throw Error(ErrorCode::InvalidArgument, "R too large for a complete sum");
  for (const PsiFactor& f : spec) {
    if (f.index == 0) throw Error(ErrorCode::InvalidArgument, "psi-product indices must be >= 1");
  }
  const auto R = static_cast<std::uint32_t>(ctx.R);
  const std::uint32_t d = ctx.d();
  const std::int64_t aRed = ((a % static_cast<std::int64_t>(R)) + R) % R;
  BucketAccumulator acc = foldBuckets(1, R, R, workers, [&](BucketAccumulator& out, std::uint64_t lo, std::uint64_t hi) {
    Point Q = scalarMul(lo, ctx.point, ctx.curve);
    for (std::uint64_t n = lo; n <= hi; ++n, Q = pointAdd(Q, ctx.point, ctx.curve)) {
      if (Q.isInfinity() || Q.y().isZero()) {
        out.addZero();
        continue;
      }
      const auto value = psiProductAt(ctx.curve, Q, spec);
      if (!value) {
        out.addZeroDenominator();
        continue;
      }
      const CharValue v = ctx.chi(*value);
      if (v.isZero()) {
        out.addZero();
        continue;
      }
      const std::uint64_t idx =
          (static_cast<std::uint64_t>(v.index()) * (R / d) + static_cast<std::uint64_t>(aRed) * (n % R)) % R;
      out.add(static_cast<std::uint32_t>(idx), 1);
    }
  });
  std::string label = "complete:a=" + std::to_string(a) + ",spec=";
  for (std::size_t i = 0; i < spec.size(); ++i) {
    label += (i ? "/" : "") + std::to_string(spec[i].index) + "^" + std::to_string(spec[i].exponent);
  }
  return SumResult::from(std::move(acc), R, ctx.R, label);
}

PartitionAudit partitionAudit(const SumContext& ctx, const TwistFunction& f, std::uint64_t N, Interval I,
                              const SieveTables& tables, const SumOptions& opts) {
  requireRange(ctx, N, opts);
  if (I.lo < 2 || !(I.lo < I.hi)) throw Error(ErrorCode::InvalidArgument, "interval must satisfy 2 <= x < y");
  const std::uint32_t d = ctx.d();
  const std::uint32_t fOrder = f.phaseOrder();
  const std::uint32_t E = combinedOrder(d, fOrder);
  const unsigned log2N = static_cast<unsigned>(std::bit_width(N) - 1);
  // one spare class so that a violation of the log bound would be visible
  const unsigned classCount = log2N + 2;

  using State = std::vector<PartitionClass>;
  auto make = [&] {
    State s;
    for (unsigned r = 0; r < classCount; ++r) {
      s.push_back({r, 0, BucketAccumulator(E), BucketAccumulator(E), BucketAccumulator(E)});
    }
    return s;
  };
  State classes = parallelFold<State>(
      1, N, opts.workers, make,
      [&](State& s, std::uint64_t lo, std::uint64_t hi) {
        ChiPsiCursor cursor(ctx.base, ctx.chi, lo, 1, hi, opts.table);
        for (std::uint64_t n = lo; n <= hi; ++n) {
          const CharValue chi = cursor.next();
          const TwistValue tv = evalTwist(f, n, tables);
          const unsigned r = std::min(classifyAr(n, I, tables), classCount - 1);
          PartitionClass& c = s[r];
          ++c.members;
          accumulateTerm(c.all, chi, tv, d, fOrder);
          accumulateTerm(repeatedPrimesIn(n, I, tables) > 0 ? c.repeated : c.simple, chi, tv, d, fOrder);
        }
      },
      [](State& into, const State& from) {
        for (std::size_t r = 0; r < into.size(); ++r) {
          into[r].members += from[r].members;
          into[r].all.merge(from[r].all);
          into[r].simple.merge(from[r].simple);
          into[r].repeated.merge(from[r].repeated);
        }
      });

  PartitionAudit audit{I, std::move(classes), sumS(ctx, f, N, tables, opts), BucketAccumulator(E), log2N, 0,
                       false, true, true};
  for (const PartitionClass& c : audit.classes) {
    audit.total.merge(c.all);
    if (c.members > 0) audit.maxNonEmptyR = c.r;
    if (c.r > log2N && c.members > 0) audit.emptyBeyondLog = false;
    BucketAccumulator joined(E);
    joined.merge(c.simple);
    joined.merge(c.repeated);
    if (!joined.sameWeights(c.all) || joined.zeroCount() != c.all.zeroCount()) audit.splitMatches = false;
  }
  audit.totalMatches =
      audit.total.sameWeights(audit.direct.buckets) && audit.total.zeroCount() == audit.direct.zeroCount;
  return audit;
}

MoebiusSqAudit moebiusSqAudit(const SumContext& ctx, std::uint64_t N, const SieveTables& tables,
                              const SumOptions& opts) {
  requireRange(ctx, N, opts);
  const std::uint32_t d = ctx.d();
  MoebiusSqAudit audit{sumS(ctx, TwistFunction::moebiusSq(), N, tables, opts),
                       BucketAccumulator(d),
                       SumResult::from(BucketAccumulator(d), N, ctx.R, "mu2:T1"),
                       SumResult::from(BucketAccumulator(d), N, ctx.R, "mu2:T2"),
                       std::pow(static_cast<double>(ctx.p()), ctx.epsilon / 4.0),
                       0,
                       0,
                       false,
                       false};
  BucketAccumulator t1(d), t2(d);
  for (std::uint64_t k = 1; k * k <= N; ++k) {
    const int mu = tables.mu(k);
    if (mu == 0) continue;
    const SumResult inner = scaledSum(ctx, k * k, N / (k * k), opts);
    audit.rhs.addScaled(inner.buckets, mu);
    if (static_cast<double>(std::gcd(k, ctx.R)) <= audit.threshold) {
      t1.addScaled(inner.buckets, mu);
      ++audit.t1Divisors;
    } else {
      t2.addScaled(inner.buckets, mu);
      ++audit.t2Divisors;
    }
  }
  audit.identityHolds = audit.rhs.sameWeights(audit.lhs.buckets);
  BucketAccumulator split(d);
  split.merge(t1);
  split.merge(t2);
  audit.splitHolds = split.sameWeights(audit.lhs.buckets);
  audit.t1 = SumResult::from(std::move(t1), N, ctx.R, "mu2:T1");
  audit.t2 = SumResult::from(std::move(t2), N, ctx.R, "mu2:T2");
  return audit;
}

SmoothAudit smoothSum(const SumContext& ctx, std::uint64_t y, std::uint64_t N, std::uint64_t L0,
                      const SieveTables& tables, const SumOptions& opts) {
  requireRange(ctx, N, opts);
  if (y < 2 || N < 2) throw Error(ErrorCode::InvalidArgument, "smooth sums need y >= 2 and N >= 2");
  if (L0 == 0) throw Error(ErrorCode::InvalidArgument, "L0 must be >= 1");
  if (N > tables.limit()) throw Error(ErrorCode::InvalidArgument, "sieve does not cover N");
  const std::uint32_t d = ctx.d();

  ChiPsiTable local;
  const ChiPsiTable* table = opts.table;
  if (!table || table->size() < N) {
    local = chiPsiTable(ctx, N, opts.workers);
    table = &local;
  }
  SumOptions inner = opts;
  inner.table = table;

  SmoothAudit audit{sumS(ctx, TwistFunction::smooth(y), N, tables, inner),
                    BucketAccumulator(d),
                    BucketAccumulator(d),
                    L0,
                    0,
                    0,
                    0,
                    psiCountAndAlpha(N, y, tables),
                    {},
                    false};
  auto add = [&](BucketAccumulator& acc, std::uint64_t n) {
    const CharValue v = table->at(n);
    if (v.isZero()) {
      acc.addZero();
    } else {
      acc.add(v.index(), 1);
    }
  };

  for (std::uint64_t n = 1; n <= std::min(L0, N); ++n) {
    if (tables.lpf(n) <= y) add(audit.small, n);
  }
  for (std::uint64_t n = L0 + 1; n <= N; ++n) {
    if (tables.lpf(n) > y) continue;
    ++audit.largeSmoothCount;
    const auto split = smoothDecompose(n, L0, tables);
    const std::uint64_t P = split ? tables.lpf(split->ell) : 0;
    const bool ok = split && split->ell * split->m == n && L0 < split->ell && split->ell <= P * L0 &&
                    smallestPrimeFactor(split->m, tables) >= P;
    if (!ok) ++audit.conditionViolations;
  }
  // Independent route: enumerate the pairs (ell, m) directly.
  const std::uint64_t ellMax = std::min<std::uint64_t>(N, y * L0);
  for (std::uint64_t ell = L0 + 1; ell <= ellMax; ++ell) {
    const std::uint64_t P = tables.lpf(ell);
    if (P > y || ell / P > L0) continue;
    for (std::uint64_t m = 1; m <= N / ell; ++m) {
      if (tables.lpf(m) > y) continue;
      if (m > 1 && tables.spf(m) < P) continue;
      add(audit.decomposed, ell * m);
      ++audit.decomposedTerms;
    }
  }
  BucketAccumulator joined(d);
  joined.merge(audit.small);
  joined.merge(audit.decomposed);
  audit.agree = joined.sameWeights(audit.direct.buckets);

  BoundInputs in = boundInputs(ctx, N);
  in.y = static_cast<double>(y);
  in.alpha = audit.params.alpha;
  in.psiCount = static_cast<double>(audit.params.psiCount);
  audit.bound = boundRHS(Theorem::Smooth, in);
  audit.direct.attachBound(audit.bound.rhs);
  return audit;
}

BoundInputs boundInputs(const SumContext& ctx, std::uint64_t N) {
  BoundInputs in;
  in.p = ctx.p();
  in.R = static_cast<double>(ctx.R);
  in.N = static_cast<double>(N);
  in.epsilon = ctx.epsilon;
  in.quadratic = ctx.d() == 2;
  return in;
}

}  // namespace divsum
