// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

#include "divsum/harness/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "divsum/error.hpp"
#include "divsum/harness/ensemble.hpp"
#include "divsum/rng.hpp"
#include "divsum/sums.hpp"
#include "jobs.hpp"

namespace divsum::harness {

bool VerifyReport::ok() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok(); });
}

std::vector<CheckResult> VerifyReport::failures() const {
  std::vector<CheckResult> out;
  for (const auto& c : checks) {
    if (!c.ok()) out.push_back(c);
  }
  return out;
}

namespace {

class Tally {
 public:
  Tally(std::string name, std::string context) {
    result_.name = std::move(name);
    result_.context = std::move(context);
  }

  // detail is only formatted for the first failure
  void record(bool ok, const std::function<std::string()>& detail) {
    if (ok) {
      ++result_.passed;
      return;
    }
    if (result_.failed++ == 0) result_.detail = detail();
  }

  CheckResult done() { return std::move(result_); }

 private:
  CheckResult result_;
};

std::string show(const FieldElement& v) { return std::to_string(v.value()); }

// Per-member, character-free checks on the (possibly corrupted) base.
void curveChecks(const ExperimentConfig& config, const EnsembleMember& m, const DivPolyBase& base, Rng& rng,
                 std::vector<CheckResult>& out) {
  const std::string ctx = m.label();
  // Low indices are recomputed from the curve so that seeds are tested too.
  const DivPolyBase anchor = psiSeed(m.curve, m.point);
  auto psi = [&](std::int64_t k) {
    if (k >= -4 && k <= 4) return k < 0 ? -anchor.seed(static_cast<unsigned>(-k)) : anchor.seed(static_cast<unsigned>(k));
    return psiLadder(k, base);
  };

  Tally eds("eds_identity", ctx);
  for (unsigned t = 0; t < config.edsTriples; ++t) {
    const auto n = static_cast<std::int64_t>(rng.between(2, 999));
    const auto mm = static_cast<std::int64_t>(rng.between(static_cast<std::uint64_t>(n) + 1, 2000 - static_cast<std::uint64_t>(n)));
    const std::uint64_t rMax = rng.below(2) ? std::min<std::uint64_t>(4, n - 1) : static_cast<std::uint64_t>(n - 1);
    const auto r = static_cast<std::int64_t>(rng.between(1, rMax));
    const FieldElement lhs = psi(mm + n) * psi(mm - n) * psi(r).square();
    const FieldElement rhs = psi(mm + r) * psi(mm - r) * psi(n).square() - psi(n + r) * psi(n - r) * psi(mm).square();
    eds.record(lhs == rhs, [&] {
      return "(m,n,r)=(" + std::to_string(mm) + "," + std::to_string(n) + "," + std::to_string(r) + ") lhs=" +
             show(lhs) + " rhs=" + show(rhs);
    });
  }
  out.push_back(eds.done());

  Tally engines("engine_equivalence", ctx);
  PsiStream stream(base, 1);
  for (std::uint64_t n = 1; n <= config.engineLimit; ++n) {
    const FieldElement s = stream.next();
    const FieldElement l = psiLadder(static_cast<std::int64_t>(n), base);
    engines.record(s == l, [&] { return "n=" + std::to_string(n) + " stream=" + show(s) + " ladder=" + show(l); });
  }
  out.push_back(engines.done());

  Tally zeros("zero_locus", ctx);
  const std::uint64_t ord = m.orderInfo.pointOrder;
  PsiStream zs(base, 1);
  for (std::uint64_t n = 1; n <= 3 * ord; ++n) {
    const bool zero = zs.next().isZero();
    zeros.record(zero == (n % ord == 0), [&] { return "n=" + std::to_string(n) + " ordP=" + std::to_string(ord); });
  }
  out.push_back(zeros.done());

  Tally mult("multiplication_formula", ctx);
  Point Q = Point::infinity();
  for (std::uint64_t n = 1; n <= config.multLimit; ++n) {
    Q = pointAdd(Q, m.point, m.curve);
    const auto x = multByNX(static_cast<std::int64_t>(n), base);
    const bool ok = x.has_value() ? (!Q.isInfinity() && *x == Q.x()) : Q.isInfinity();
    mult.record(ok, [&] { return "n=" + std::to_string(n); });
  }
  out.push_back(mult.done());
}

void orthogonality(const CharacterModP& chi, Tally& tally) {
  const std::uint32_t p = chi.modulus().value();
  std::vector<std::uint64_t> hits(chi.order(), 0);
  bool legendreOk = true;
  for (std::uint32_t x = 1; x < p; ++x) {
    const CharValue v = chi(x);
    ++hits[v.index()];
    if (chi.order() == 2) {
      const int l = legendre(FieldElement(x, chi.modulus()));
      legendreOk = legendreOk && v.index() == (l == 1 ? 0u : 1u);
    }
  }
  const bool balanced = std::all_of(hits.begin(), hits.end(), [&](std::uint64_t h) { return h == hits[0]; });
  tally.record(balanced && legendreOk, [&] { return balanced ? std::string("Legendre mismatch") : "unbalanced"; });
}

void contextChecks(const ExperimentConfig& config, const EnsembleMember& m, const CharacterSpec& spec,
                   const DivPolyBase& base, const std::vector<TwistFunction>& twists, const SieveTables& tables,
                   Rng& rng, std::vector<CheckResult>& out) {
  const std::string label = m.label() + "," + spec.describe();
  const CharacterModP chi = buildCharacterModP(m.curve.modulus(), spec.d, spec.label);
  const SumContext ctx = makeContext(m.curve, m.point, m.orderInfo, chi, config.orderExponent);
  const std::uint32_t d = ctx.d();

  Tally transport("transport_identity", label);
  for (unsigned t = 0; t < config.transportPairs; ++t) {
    const std::uint64_t a = rng.between(1, 1000);
    const std::uint64_t n = rng.between(1, 1000);
    const Point aP = scalarMul(a, m.point, m.curve);
    if (aP.isInfinity() || aP.y().isZero()) continue;
    const DivPolyBase moved = psiSeed(m.curve, aP);
    const CharValue lhs = chi(psiLadder(static_cast<std::int64_t>(a * n), base));
    const CharValue inner = chi(psiLadder(static_cast<std::int64_t>(n), moved));
    const CharValue scale = chi(psiLadder(static_cast<std::int64_t>(a), base));
    CharValue rhs = inner;
    if (!scale.isZero() && !inner.isZero()) {
      rhs = CharValue::root(static_cast<std::uint32_t>((inner.index() + scale.index() * ((n % d) * (n % d) % d)) % d));
    } else if (scale.isZero()) {
      rhs = CharValue::zero();
    }
    transport.record(lhs == rhs, [&] { return "(m,n)=(" + std::to_string(a) + "," + std::to_string(n) + ")"; });
  }
  out.push_back(transport.done());

  Tally period("periodicity", label);
  for (unsigned t = 0; t < config.periodSamples; ++t) {
    const auto n = static_cast<std::int64_t>(rng.between(1, ctx.R));
    const CharValue a = chi(psiLadder(n, base));
    const CharValue b = chi(psiLadder(n + static_cast<std::int64_t>(ctx.R), base));
    period.record(a == b, [&] { return "n=" + std::to_string(n); });
  }
  out.push_back(period.done());

  const std::uint64_t N = std::min<std::uint64_t>(ctx.R, config.decompositionLimit);
  const ChiPsiTable table = chiPsiTable(ctx, N);
  SumOptions opts;
  opts.table = &table;

  Tally sumEngines("sum_engine_equivalence", label);
  const std::uint64_t engineN = std::min(N, config.engineLimit);
  for (const TwistFunction& f : twists) {
    const SumResult a = sumS(ctx, f, engineN, tables);
    const SumResult b = sumSByLadder(ctx, f, engineN, tables);
    sumEngines.record(a.buckets.sameWeights(b.buckets) && a.zeroCount == b.zeroCount,
                      [&] { return f.describe() + " N=" + std::to_string(engineN); });
  }
  out.push_back(sumEngines.done());

  Tally partition("partition_audit", label);
  for (const auto& [x, y] : config.intervals) {
    if (!(x >= 2 && x < y)) continue;
    for (const TwistFunction& f : twists) {
      const PartitionAudit a = partitionAudit(ctx, f, N, Interval{x, y}, tables, opts);
      partition.record(a.holds(), [&] {
        std::ostringstream s;
        s << f.describe() << " I=(" << x << "," << y << "] total=" << a.totalMatches << " split=" << a.splitMatches
          << " empty=" << a.emptyBeyondLog;
        return s.str();
      });
    }
  }
  out.push_back(partition.done());

  Tally moebius("moebius_sq_identity", label);
  const MoebiusSqAudit ma = moebiusSqAudit(ctx, N, tables, opts);
  moebius.record(ma.identityHolds, [&] { return "identity N=" + std::to_string(N); });
  moebius.record(ma.splitHolds, [&] { return "T1+T2 N=" + std::to_string(N); });
  out.push_back(moebius.done());

  Tally smooth("smooth_decomposition", label);
  if (N >= 2) {
    const std::uint64_t L0 =
        config.l0 ? config.l0 : static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(N)));
    const SmoothAudit sa = smoothSum(ctx, config.smoothY, N, std::max<std::uint64_t>(L0, 1), tables, opts);
    smooth.record(sa.holds(), [&] {
      return "agree=" + std::to_string(sa.agree) + " terms=" + std::to_string(sa.decomposedTerms) + "/" +
             std::to_string(sa.largeSmoothCount) + " violations=" + std::to_string(sa.conditionViolations);
    });
  }
  out.push_back(smooth.done());

  Tally progression("progression_partition", label);
  const SumResult whole = sumS(ctx, TwistFunction::one(), N, tables, opts);
  for (std::uint64_t q : {2u, 3u, 5u, 12u}) {
    BucketAccumulator joined(d);
    for (const SumResult& part : progressionSums(ctx, q, N, opts)) joined.merge(part.buckets);
    progression.record(joined.sameWeights(whole.buckets) && joined.zeroCount() == whole.zeroCount,
                       [&] { return "q=" + std::to_string(q); });
  }
  out.push_back(progression.done());

  Tally weil("weil_audit", label);
  if (ctx.R <= config.weilMaxR) {
    unsigned made = 0;
    for (unsigned guard = 0; made < config.weilSpecs && guard < 100 * config.weilSpecs; ++guard) {
      const std::uint64_t m1 = rng.between(1, 6), m2 = rng.between(1, 6);
      const std::uint64_t n1 = rng.between(1, 6), n2 = rng.between(1, 6);
      if (!gcdConditionHolds(m1, m2, n1, n2)) continue;
      ++made;
      const auto spec4 = quadrupleSpec(m1, m2, n1, n2);
      const auto a = static_cast<std::int64_t>(rng.below(ctx.R));
      const SumResult s = completeTwistedSum(ctx, spec4, a);
      const double limit = 4.0 * static_cast<double>(psiProductDegree(spec4)) * std::sqrt(static_cast<double>(ctx.p()));
      weil.record(s.absValue <= limit, [&] {
        return "spec=(" + std::to_string(m1) + "," + std::to_string(m2) + "," + std::to_string(n1) + "," +
               std::to_string(n2) + ") a=" + std::to_string(a) + " |S|=" + std::to_string(s.absValue);
      });
    }
  }
  out.push_back(weil.done());
}

}  // namespace

VerifyReport runVerify(const ExperimentConfig& config, const VerifyOptions& options) {
  const auto members = buildEnsemble(config);
  if (members.empty()) throw Error(ErrorCode::ConfigError, "empty ensemble: nothing to verify");
  const auto specs = characterSpecs(config);
  const auto twists = twistFunctions(config);

  std::uint64_t sieveLimit = 2;
  for (const auto& m : members) {
    for (const auto& s : specs) {
      if (s.kind == CharacterSpec::Kind::ModP) {
        sieveLimit = std::max(sieveLimit, std::min<std::uint64_t>(m.orderInfo.pointOrder * s.d, config.decompositionLimit));
      }
    }
  }
  const SieveTables tables(sieveLimit);

  std::vector<std::vector<CheckResult>> perMember(members.size());
  forEachJob(members.size(), config.workers, [&](std::size_t i) {
    const EnsembleMember& m = members[i];
    auto& out = perMember[i];
    Rng rng(config.seed ^ (0x9e3779b97f4a7c15ULL * (i + 1)));
    if (m.point.y().isZero() || m.orderInfo.pointOrder < 3) {
      out.push_back({"context_precondition", m.label(), 0, 0, "skipped: ord P < 3 or y(P) = 0"});
      return;
    }
    const DivPolyBase good = psiSeed(m.curve, m.point);
    const DivPolyBase base = options.corruptPsi3
                                 ? DivPolyBase::withSeeds(m.curve, m.point, good.seed(3) + m.curve.element(1), good.seed(4))
                                 : good;
    curveChecks(config, m, base, rng, out);
    for (const CharacterSpec& spec : specs) {
      if (spec.kind != CharacterSpec::Kind::ModP) continue;
      if ((m.p() - 1) % spec.d != 0) {
        out.push_back({"context_precondition", m.label() + "," + spec.describe(), 0, 0, "skipped: d does not divide p-1"});
        continue;
      }
      contextChecks(config, m, spec, base, twists, tables, rng, out);
    }
  });

  VerifyReport report;
  for (auto& v : perMember) {
    for (auto& c : v) report.checks.push_back(std::move(c));
  }

  // Character orthogonality once per distinct character.
  std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> seen;
  for (const auto& m : members) {
    for (const CharacterSpec& spec : specs) {
      if (spec.kind != CharacterSpec::Kind::ModP || (m.p() - 1) % spec.d != 0) continue;
      if (!seen.emplace(m.p(), spec.d, spec.label).second) continue;
      Tally t("character_orthogonality", "p=" + std::to_string(m.p()) + "," + spec.describe());
      orthogonality(buildCharacterModP(m.curve.modulus(), spec.d, spec.label), t);
      report.checks.push_back(t.done());
    }
  }
  for (const CharacterSpec& spec : specs) {
    if (spec.kind != CharacterSpec::Kind::Dirichlet) continue;
    Tally t("character_orthogonality", spec.describe());
    const DirichletCharacter chi = buildDirichlet(spec);
    if (!chi.isPrincipal()) {
      std::vector<std::uint64_t> hits(chi.order(), 0);
      for (std::uint64_t n = 1; n <= chi.modulus(); ++n) {
        if (!chi(n).isZero()) ++hits[chi(n).index()];
      }
      t.record(std::all_of(hits.begin(), hits.end(), [&](std::uint64_t h) { return h == hits[0]; }),
               [] { return std::string("unbalanced"); });
    }
    report.checks.push_back(t.done());
  }
  return report;
}

}  // namespace divsum::harness
