// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

#include "divsum/harness/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "divsum/error.hpp"
#include "divsum/harness/ensemble.hpp"
#include "divsum/harness/specs.hpp"
#include "divsum/sums.hpp"
#include "jobs.hpp"

namespace divsum::harness {

namespace {

using Clock = std::chrono::steady_clock;

double millisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<std::uint64_t> schedule(const ExperimentConfig& config, std::uint64_t R) {
  std::vector<std::uint64_t> out(config.nValues);
  for (double f : config.nFractions) {
    out.push_back(std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(f * static_cast<double>(R)))));
  }
  return out;
}

std::vector<TwistFunction> allTwists(const ExperimentConfig& config) {
  std::vector<TwistFunction> out = twistFunctions(config);
  for (const CharacterSpec& s : characterSpecs(config)) {
    if (s.kind == CharacterSpec::Kind::Dirichlet) out.push_back(TwistFunction::dirichlet(buildDirichlet(s)));
  }
  return out;
}

ReportRow rowSkeleton(const EnsembleMember& m, const CharacterSpec& spec) {
  ReportRow r;
  r.p = m.p();
  r.a = m.curve.a().value();
  r.b = m.curve.b().value();
  r.px = m.point.x().value();
  r.py = m.point.y().value();
  r.d = spec.d;
  r.label = spec.label;
  r.ordP = m.orderInfo.pointOrder;
  r.R = static_cast<std::uint64_t>(spec.d) * r.ordP;
  return r;
}

struct Job {
  const EnsembleMember* member;
  CharacterSpec spec;
};

void runJob(const ExperimentConfig& config, RowMode mode, const Job& job, const std::vector<TwistFunction>& twists,
            const SieveTables& tables, unsigned innerWorkers, std::vector<ReportRow>& out) {
  const EnsembleMember& m = *job.member;
  const ReportRow skeleton = rowSkeleton(m, job.spec);
  const auto Ns = schedule(config, skeleton.R);

  auto wanted = [&](const TwistFunction& f) {
    if (mode == RowMode::Sum) return true;
    const std::string_view name = theoremName(theoremFor(f));
    return std::find(config.theorems.begin(), config.theorems.end(), name) != config.theorems.end();
  };

  std::optional<SumContext> ctx;
  std::string contextError;
  try {
    const CharacterModP chi = buildCharacterModP(m.curve.modulus(), job.spec.d, job.spec.label);
    ctx.emplace(makeContext(m.curve, m.point, m.orderInfo, chi, config.orderExponent));
  } catch (const Error& e) {
    contextError = "Error:" + std::string(errorName(e.code()));
  }

  std::optional<ChiPsiTable> table;
  if (ctx) {
    std::uint64_t longest = 0;
    for (std::uint64_t N : Ns) {
      if (N <= ctx->R || config.overrideRange) longest = std::max(longest, N);
    }
    table = chiPsiTable(*ctx, longest, innerWorkers);
  }
  SumOptions opts;
  opts.overrideRange = config.overrideRange;
  opts.workers = innerWorkers;
  if (table) opts.table = &*table;

  for (const TwistFunction& f : twists) {
    if (!wanted(f)) continue;
    const Theorem theorem = theoremFor(f);
    for (std::uint64_t N : Ns) {
      const auto start = Clock::now();
      ReportRow row = skeleton;
      row.twist = f.describe();
      row.N = N;
      row.theorem = std::string(theoremName(theorem));
      if (!ctx) {
        row.flags.push_back(contextError);
        out.push_back(std::move(row));
        continue;
      }
      if (N > ctx->R && !config.overrideRange) {
        row.flags.push_back("RangeExceedsR");
        out.push_back(std::move(row));
        continue;
      }
      try {
        BoundInputs in = boundInputs(*ctx, N);
        in.nu = f.tauBound();
        std::optional<SumResult> result;
        if (theorem == Theorem::Smooth) {
          const std::uint64_t y = f.parameter();
          if (N >= 2) {
            const SmoothParams sp = psiCountAndAlpha(N, y, tables);
            in.y = static_cast<double>(y);
            in.alpha = sp.alpha;
            in.psiCount = static_cast<double>(sp.psiCount);
          }
          if (mode == RowMode::Scan && N >= 2) {
            const std::uint64_t L0 =
                config.l0 ? config.l0 : static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(N)));
            SmoothAudit audit = smoothSum(*ctx, y, N, std::max<std::uint64_t>(L0, 1), tables, opts);
            if (!audit.holds()) row.flags.push_back("DecompositionMismatch");
            result = std::move(audit.direct);
          }
        } else if (theorem == Theorem::Squarefree && mode == RowMode::Scan) {
          MoebiusSqAudit audit = moebiusSqAudit(*ctx, N, tables, opts);
          if (!audit.holds()) row.flags.push_back("IdentityMismatch");
          row.t1 = audit.t1.value;
          row.t2 = audit.t2.value;
          result = std::move(audit.lhs);
        }
        if (!result) result = sumS(*ctx, f, N, tables, opts);

        const BoundEvaluation bound = boundRHS(theorem, in);
        result->attachBound(bound.rhs);
        row.S = result->value;
        row.zeroCount = result->zeroCount;
        row.rhs = result->boundRhs;
        row.ratio = result->ratio;
        for (const auto& v : bound.violations()) row.flags.push_back("HypothesisViolated:" + v);
        if (ctx->strongR) row.flags.push_back("R_strong");
        if (ctx->weakR) row.flags.push_back("R_weak");
      } catch (const Error& e) {
        row.S.reset();
        row.flags.push_back("Error:" + std::string(errorName(e.code())));
      }
      row.ms = millisSince(start);
      out.push_back(std::move(row));
    }
  }
}

void guardCost(const ExperimentConfig& config) {
  const double cost = estimatedCost(config);
  if (cost > config.costCeiling) {
    std::ostringstream s;
    s << "estimated cost " << cost << " exceeds costCeiling " << config.costCeiling;
    throw Error(ErrorCode::ConfigError, s.str());
  }
}

void writeRows(const ExperimentConfig& config, const std::vector<ReportRow>& rows, bool split,
               const std::vector<TheoremSummary>& summary, std::ostream& out) {
  const std::string hash = configHash(config);
  if (config.format == "json") {
    writeRowsJson(out, rows, hash, summary);
  } else {
    writeRowsCsv(out, rows, hash, split);
  }
}

}  // namespace

double estimatedCost(const ExperimentConfig& config) {
  double pMax = config.primes.empty() && config.curveCount > 0 ? static_cast<double>(config.primeMax) : 0.0;
  double members = config.primes.empty() ? config.curveCount : static_cast<double>(config.primes.size());
  members *= std::max(1u, config.pointsPerCurve);
  for (auto p : config.primes) pMax = std::max(pMax, static_cast<double>(p));
  for (const auto& f : config.curves) pMax = std::max(pMax, static_cast<double>(f.p));
  members += static_cast<double>(config.curves.size());

  double dMax = 1, characters = 0;
  for (const CharacterSpec& s : characterSpecs(config)) {
    if (s.kind != CharacterSpec::Kind::ModP) continue;
    dMax = std::max(dMax, static_cast<double>(s.d));
    ++characters;
  }
  const double rMax = dMax * (pMax + 1 + 2 * std::sqrt(pMax));
  double work = 0;
  for (auto N : config.nValues) work += static_cast<double>(N);
  for (double f : config.nFractions) work += f * rMax;
  const double twists = static_cast<double>(config.twists.size() + 1);
  return members * (pMax + characters * twists * work);
}

std::vector<ReportRow> computeRows(const ExperimentConfig& config, RowMode mode) {
  const auto members = buildEnsemble(config);
  const auto specs = characterSpecs(config);
  const auto twists = allTwists(config);

  std::vector<Job> jobs;
  std::uint64_t longest = 2;
  for (const auto& m : members) {
    for (const auto& s : specs) {
      if (s.kind != CharacterSpec::Kind::ModP) continue;
      jobs.push_back({&m, s});
      const std::uint64_t R = static_cast<std::uint64_t>(s.d) * m.orderInfo.pointOrder;
      for (std::uint64_t N : schedule(config, R)) {
        if (N <= R || config.overrideRange) longest = std::max(longest, N);
      }
    }
  }
  if (longest > SieveTables::kMaxLimit) {
    throw Error(ErrorCode::ConfigError, "largest N " + std::to_string(longest) + " exceeds the sieve limit");
  }
  const SieveTables tables(longest);

  std::vector<std::vector<ReportRow>> perJob(jobs.size());
  const unsigned inner = jobs.size() == 1 ? config.workers : 1;
  forEachJob(jobs.size(), config.workers,
             [&](std::size_t i) { runJob(config, mode, jobs[i], twists, tables, inner, perJob[i]); });
  std::vector<ReportRow> rows;
  for (auto& v : perJob) {
    for (auto& r : v) rows.push_back(std::move(r));
  }
  return rows;
}

int cmdVerify(const ExperimentConfig& config, std::ostream& out, std::ostream& err, const VerifyOptions& options) {
  const VerifyReport report = runVerify(config, options);
  const std::string hash = configHash(config);
  if (config.format == "json") {
    writeVerifyJson(out, report, hash);
  } else {
    writeVerifyCsv(out, report, hash);
  }
  const auto failures = report.failures();
  for (const auto& f : failures) err << "FAIL " << f.name << " [" << f.context << "]: " << f.detail << "\n";
  err << report.checks.size() - failures.size() << "/" << report.checks.size() << " checks passed\n";
  return failures.empty() ? 0 : 1;
}

int cmdSum(const ExperimentConfig& config, std::ostream& out, std::ostream&) {
  writeRows(config, computeRows(config, RowMode::Sum), false, {}, out);
  return 0;
}

int cmdScan(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  guardCost(config);
  const auto rows = computeRows(config, RowMode::Scan);
  const auto summary = summarize(rows);
  writeRows(config, rows, true, summary, out);
  for (const auto& t : summary) {
    err << t.theorem << ": rows=" << t.rows << " max_ratio=" << (t.maxRatio ? formatNumber(*t.maxRatio) : "-")
        << " median_ratio=" << (t.medianRatio ? formatNumber(*t.medianRatio) : "-")
        << " violated=" << t.violatedRows << " |S|<=N:" << (t.absWithinN ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmdTable(const ExperimentConfig& config, std::ostream& out, std::ostream&) {
  guardCost(config);
  const auto summary = summarize(computeRows(config, RowMode::Scan));
  const std::string hash = configHash(config);
  if (config.format == "json") {
    writeSummaryJson(out, summary, hash);
  } else {
    writeSummaryCsv(out, summary, hash);
  }
  return 0;
}

}  // namespace divsum::harness
