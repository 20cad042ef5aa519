// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

// Acceptance runner. `divsum_acceptance N` checks one criterion,
// no argument checks all of them. One PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "divsum/characters.hpp"
#include "divsum/divpoly.hpp"
#include "divsum/error.hpp"
#include "divsum/fp_curve.hpp"
#include "divsum/harness/commands.hpp"
#include "divsum/harness/ensemble.hpp"
#include "divsum/harness/verify.hpp"
#include "divsum/multfunc.hpp"
#include "divsum/rng.hpp"
#include "divsum/sums.hpp"

using namespace divsum;
using namespace divsum::harness;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

// Twenty random curves over p in [10^3, 10^5], seed fixed.
ExperimentConfig identityEnsemble() {
  ExperimentConfig c;
  c.primeMin = 1000;
  c.primeMax = 100000;
  c.curveCount = 20;
  c.seed = 20261016;
  c.characters = {"modp:d=2,label=1", "modp:d=3,label=1"};
  c.twists = {"one", "mu", "mu2", "tau:2", "r0", "smooth:y=100", "dirichlet:q=5,exp=1"};
  return c;
}

// Checks named in `names` must exist, be non-vacuous and have no failures.
Outcome requireChecks(const VerifyReport& report, const std::set<std::string>& names, std::size_t members) {
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> tally;  // passed, failed
  std::map<std::string, std::size_t> entries;
  std::string firstFailure;
  for (const CheckResult& c : report.checks) {
    if (c.name == "context_precondition") return {false, "skipped context " + c.context};
    if (!names.contains(c.name)) continue;
    tally[c.name].first += c.passed;
    tally[c.name].second += c.failed;
    ++entries[c.name];
    if (!c.ok() && firstFailure.empty()) firstFailure = c.name + " [" + c.context + "] " + c.detail;
  }
  std::ostringstream s;
  s << members << " members;";
  bool pass = members >= 20 && firstFailure.empty();
  for (const auto& n : names) {
    const auto [ok, bad] = tally[n];
    s << " " << n << "=" << ok << "/" << ok + bad;
    if (ok == 0 || entries[n] < members) pass = false;
  }
  if (!firstFailure.empty()) s << "; first failure: " << firstFailure;
  return {pass, s.str()};
}

Outcome criterion1() {
  const ExperimentConfig c = identityEnsemble();
  const auto members = buildEnsemble(c);
  for (const auto& m : members) {
    if (m.orderInfo.pointOrder < 3) return {false, "ord P < 3 at " + m.label()};
  }
  return requireChecks(runVerify(c),
                       {"eds_identity", "transport_identity", "periodicity", "zero_locus", "multiplication_formula"},
                       members.size());
}

Outcome criterion2() {
  const auto members = buildEnsemble(identityEnsemble());
  std::uint64_t compared = 0;
  for (const auto& m : members) {
    const DivPolyBase base = psiSeed(m.curve, m.point);
    PsiStream stream(base, 1);
    for (std::int64_t n = 1; n <= 10000; ++n, ++compared) {
      if (!(stream.next() == psiLadder(n, base))) {
        return {false, "mismatch at n=" + std::to_string(n) + " on " + m.label()};
      }
    }
  }
  return {members.size() >= 20, std::to_string(members.size()) + " members, " + std::to_string(compared) +
                                    " terms equal"};
}

Outcome criterion3() {
  ExperimentConfig c = identityEnsemble();
  c.decompositionLimit = 100000;
  c.edsTriples = c.transportPairs = c.periodSamples = 0;
  c.multLimit = 0;
  c.engineLimit = 1;
  c.weilSpecs = 0;
  const auto members = buildEnsemble(c);
  return requireChecks(runVerify(c),
                       {"partition_audit", "moebius_sq_identity", "smooth_decomposition", "progression_partition"},
                       members.size());
}

Outcome criterion4() {
  const Curve E(PrimeModulus(5), 1, 1);
  const Point P = E.point(0, 1);
  const std::uint64_t order = groupOrder(E);
  const PointOrderInfo info = pointOrder(P, E);
  const DivPolyBase base = psiSeed(E, P);
  std::vector<std::uint32_t> psi;
  for (int n = 1; n <= 4; ++n) psi.push_back(psiLadder(n, base).value());
  const SumContext ctx = makeContext(E, P, buildCharacterModP(E.modulus(), 2, 1));
  const SieveTables tables(16);
  const SumResult S = sumS(ctx, TwistFunction::one(), 4, tables);
  const bool pass = order == 9 && info.pointOrder == 9 && psi == std::vector<std::uint32_t>{1, 2, 4, 4} &&
                    ctx.R == 18 && std::abs(S.value - std::complex<double>(2, 0)) < 1e-12 && S.zeroCount == 0;
  std::ostringstream s;
  s << "#E=" << order << " ordP=" << info.pointOrder << " psi=(" << psi[0] << "," << psi[1] << "," << psi[2] << ","
    << psi[3] << ") R=" << ctx.R << " S(4)=" << S.value.real() << "+" << S.value.imag() << "i";
  return {pass, s.str()};
}

// Every value class is hit equally often, so the sum of roots vanishes exactly.
bool balanced(const std::vector<std::uint64_t>& hits) {
  return hits.size() > 1 && std::all_of(hits.begin(), hits.end(), [&](std::uint64_t h) { return h == hits[0]; });
}

Outcome criterion5() {
  std::uint64_t modp = 0, dirichlet = 0, legendreChecked = 0;
  for (std::uint32_t p = 5; p <= 10000; ++p) {
    if (!isPrime(p)) continue;
    const PrimeModulus m(p);
    for (std::uint32_t d : {2u, 3u, 4u, 6u}) {
      if ((p - 1) % d) continue;
      for (std::uint32_t label = 1; label < d; ++label) {
        if (std::gcd(label, d) != 1) continue;
        const CharacterModP chi = buildCharacterModP(m, d, label);
        std::vector<std::uint64_t> hits(d, 0);
        for (std::uint32_t x = 1; x < p; ++x) {
          const CharValue v = chi(x);
          if (v.isZero()) return {false, "zero value at unit, p=" + std::to_string(p)};
          ++hits[v.index()];
          if (d == 2) {
            const int l = legendre(FieldElement(x, m));
            if (v.index() != (l == 1 ? 0u : 1u)) return {false, "Legendre mismatch p=" + std::to_string(p)};
          }
        }
        if (!balanced(hits)) return {false, "p=" + std::to_string(p) + " d=" + std::to_string(d)};
        ++modp;
        if (d == 2) ++legendreChecked;
      }
    }
  }
  for (std::uint64_t q : {3u, 4u, 5u, 8u, 12u}) {
    const auto factors = unitGroupFactors(q);
    std::vector<std::uint32_t> e(factors.size(), 0);
    for (;;) {
      const DirichletCharacter chi = buildDirichlet(q, e);
      if (!chi.isPrincipal()) {
        std::vector<std::uint64_t> hits(chi.order(), 0);
        for (std::uint64_t n = 1; n <= q; ++n) {
          const CharValue v = chi(n);
          if (std::gcd(n, q) == 1) {
            if (v.isZero()) return {false, "zero at unit mod " + std::to_string(q)};
            ++hits[v.index()];
          } else if (!v.isZero()) {
            return {false, "nonzero at non-unit mod " + std::to_string(q)};
          }
        }
        if (!balanced(hits)) return {false, "Dirichlet mod " + std::to_string(q)};
        ++dirichlet;
      }
      std::size_t i = 0;
      while (i < e.size() && ++e[i] == factors[i].order) e[i++] = 0;
      if (i == e.size()) break;
    }
  }
  std::ostringstream s;
  s << modp << " mod-p characters, " << dirichlet << " Dirichlet characters vanish; Legendre agrees for "
    << legendreChecked << " primes in [5, 10^4]";
  return {true, s.str()};
}

Outcome criterion6() {
  const SieveTables small(100000);
  std::uint64_t brute = 0;
  for (std::uint64_t n = 1; n <= 100000; ++n) {
    std::uint64_t m = n;
    for (std::uint64_t q = 2; q <= 50; ++q) {
      while (m % q == 0) m /= q;
    }
    brute += m == 1;
  }
  const SmoothParams a = psiCountAndAlpha(100000, 50, small);
  const SieveTables large(1000000);
  const SmoothParams b = psiCountAndAlpha(1000000, 100, large);
  const double gap = std::abs(std::log(static_cast<double>(b.psiCount)) / std::log(1e6) - b.alpha);
  std::ostringstream s;
  s << "Psi(1e5,50) sieve=" << a.psiCount << " brute=" << brute << "; Psi(1e6,100)=" << b.psiCount
    << " |logPsi/logN - alpha|=" << gap << " (tolerance 0.2)";
  return {a.psiCount == brute && gap <= 0.2, s.str()};
}

Outcome criterion7() {
  ExperimentConfig c;
  c.primeMin = 1000;
  c.primeMax = 3000;
  c.curveCount = 20;
  c.seed = 7;
  c.characters = {"modp:d=2,label=1", "modp:d=3,label=1"};
  const auto members = buildEnsemble(c);
  Rng rng(c.seed);
  std::uint64_t sums = 0;
  double worst = 0;
  for (const auto& m : members) {
    for (std::uint32_t d : {2u, 3u}) {
      const SumContext ctx =
          makeContext(m.curve, m.point, m.orderInfo, buildCharacterModP(m.curve.modulus(), d, 1), c.orderExponent);
      if (ctx.R > 10000) continue;
      for (unsigned made = 0; made < 5;) {
        const std::uint64_t m1 = rng.between(1, 6), m2 = rng.between(1, 6);
        const std::uint64_t n1 = rng.between(1, 6), n2 = rng.between(1, 6);
        if (!gcdConditionHolds(m1, m2, n1, n2)) continue;
        ++made;
        const auto spec = quadrupleSpec(m1, m2, n1, n2);
        const auto a = static_cast<std::int64_t>(rng.below(ctx.R));
        const SumResult s = completeTwistedSum(ctx, spec, a);
        const double scale = static_cast<double>(psiProductDegree(spec)) * std::sqrt(static_cast<double>(ctx.p()));
        worst = std::max(worst, s.absValue / scale);
        ++sums;
        if (s.absValue > 4 * scale) {
          return {false, "violation at " + m.label() + " d=" + std::to_string(d) + " a=" + std::to_string(a)};
        }
      }
    }
  }
  std::ostringstream s;
  s << sums << " sums, max |S|/(deg sqrt p)=" << worst << " (limit 4)";
  return {sums >= 100, s.str()};
}

// Hypotheses restated from the theorem statements, independent of the
// library's bound module.
std::set<std::string> expectedViolations(const ReportRow& r, double epsilon) {
  const double p = static_cast<double>(r.p), R = static_cast<double>(r.R), N = static_cast<double>(r.N);
  const double logR = std::log(R);
  const bool strong = R >= std::pow(p, 0.5 + epsilon);
  const bool weak = R >= std::sqrt(p) * std::exp(2.1 * std::log(p) / std::log(std::log(p)));
  const bool logs = logR > 1;
  std::set<std::string> v;
  auto need = [&](const char* name, bool ok) {
    if (!ok) v.insert(name);
  };
  if (r.theorem == "divisor-bounded") {
    const double lower =
        r.d == 2 ? std::pow(p, 0.5 + epsilon) : std::pow(p, 1.0 / 12) * std::pow(R, 5.0 / 6 + epsilon);
    need("R_strong", strong);
    need("N_lower", N >= lower);
    need("N_le_R", N <= R);
    need("loglog_R_positive", logs);
  } else if (r.theorem == "dirichlet") {
    need("R_weak", weak);
    need("N_le_R", N <= R);
    need("loglog_R_positive", logs);
  } else if (r.theorem == "squarefree") {
    need("R_strong", strong);
    need("N_le_R", N <= R);
    need("loglog_R_positive", logs);
  } else if (r.theorem == "smooth") {
    const double y = std::stod(r.twist.substr(r.twist.find('=') + 1));
    const double alpha = std::log(1 + y / std::log(N)) / std::log(y);
    need("R_weak", weak);
    need("N_le_R", N <= R);
    need("y_lower", y >= std::pow(std::log(N), (3 + std::sqrt(5.0)) / 2));
    need("gamma_positive", alpha * alpha + alpha - 1 > 0);
  }
  return v;
}

Outcome criterion8() {
  ExperimentConfig low;
  low.primeMin = 1000;
  low.primeMax = 100000;
  low.curveCount = 6;
  low.characters = {"modp:d=2,label=1", "modp:d=3,label=1", "dirichlet:q=5,exp=1"};
  low.twists = {"one", "mu", "mu2", "smooth:y=100", "r0"};
  low.nFractions = {0.125, 0.25, 0.5, 1.0};
  ExperimentConfig high = low;
  high.primeMin = 100000;
  high.primeMax = 1000000;
  high.curveCount = 10;

  std::uint64_t rows = 0, members = 0, flagged = 0;
  std::uint32_t pMax = 0;
  std::map<std::string, double> maxRatio;
  for (const ExperimentConfig& c : {low, high}) {
    const auto ensemble = buildEnsemble(c);
    members += ensemble.size();
    const auto out = computeRows(c, RowMode::Scan);
    const std::size_t expected = ensemble.size() * 2 * (c.twists.size() + 1) * c.nFractions.size();
    if (out.size() != expected) {
      return {false, "rows " + std::to_string(out.size()) + " != " + std::to_string(expected)};
    }
    for (const ReportRow& r : out) {
      std::ostringstream where;
      where << "p=" << r.p << " d=" << r.d << " " << r.twist << " N=" << r.N;
      pMax = std::max(pMax, static_cast<std::uint32_t>(r.p));
      if (!r.S) return {false, "no value at " + where.str()};
      if (static_cast<double>(r.R) < std::pow(static_cast<double>(r.p), 0.6)) return {false, "R too small " + where.str()};
      if (std::abs(*r.S) > static_cast<double>(r.N) * (1 + 1e-12)) return {false, "|S| > N at " + where.str()};
      std::set<std::string> got;
      bool strong = false, weak = false;
      for (const auto& f : r.flags) {
        if (f.starts_with("HypothesisViolated:")) {
          got.insert(f.substr(19));
        } else if (f == "R_strong") {
          strong = true;
        } else if (f == "R_weak") {
          weak = true;
        } else {
          return {false, "unexpected flag " + f + " at " + where.str()};
        }
      }
      const double p = static_cast<double>(r.p), R = static_cast<double>(r.R);
      if (got != expectedViolations(r, c.orderExponent) || strong != (R >= std::pow(p, 0.6)) ||
          weak != (R >= std::sqrt(p) * std::exp(2.1 * std::log(p) / std::log(std::log(p))))) {
        return {false, "flags differ at " + where.str()};
      }
      flagged += !got.empty();
      if (r.ratio) maxRatio[r.theorem] = std::max(maxRatio[r.theorem], *r.ratio);
      ++rows;
    }
  }
  std::ostringstream s;
  s << members << " members up to p=" << pMax << ", " << rows << " rows, " << flagged << " with violations; max ratio";
  for (const auto& [t, v] : maxRatio) s << " " << t << "=" << v;
  return {pMax > 100000, s.str()};
}

Outcome criterion9() {
  ExperimentConfig c;
  c.primeMin = 1000;
  c.primeMax = 100000;
  c.curveCount = 6;
  c.seed = 99;
  c.characters = {"modp:d=2,label=1", "modp:d=4,label=1", "dirichlet:q=8,exp=1/1"};
  c.twists = {"one", "mu", "mu2", "tau:3", "kfree:3", "r0", "smooth:y=30"};
  c.nFractions = {0.3, 1.0};
  auto exact = [](const ExperimentConfig& cfg) {
    std::ostringstream out, err;
    cmdSum(cfg, out, err);
    // Keep everything but the header line (config hash includes workers)
    // and the trailing ms field.
    std::istringstream in(out.str());
    std::string line, kept;
    std::getline(in, line);
    while (std::getline(in, line)) kept += line.substr(0, line.rfind(',')) + "\n";
    return kept;
  };
  const std::string one = exact(c);
  c.workers = 8;
  const std::string eight = exact(c);
  const auto lines = std::count(one.begin(), one.end(), '\n');
  return {one == eight && lines > 100,
          std::to_string(lines - 1) + " rows, " + (one == eight ? "identical" : "different") + " at workers 1 and 8"};
}

struct Criterion {
  int id;
  double budgetSeconds;  // 0: none stated
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, 120, criterion1}, {2, 60, criterion2}, {3, 180, criterion3}, {4, 0, criterion4}, {5, 0, criterion5},
      {6, 0, criterion6},   {7, 300, criterion7}, {8, 900, criterion8}, {9, 0, criterion9},
  };
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  if (argc > 2 || only < 0 || only > static_cast<int>(all.size())) {
    std::fprintf(stderr, "usage: %s [criterion 1-9]\n", argv[0]);
    return 2;
  }
  bool ok = true;
  for (const Criterion& c : all) {
    if (only && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budgetSeconds > 0 && secs > c.budgetSeconds) {
      o.pass = false;
      o.detail += "; over the time budget";
    }
    std::printf("criterion %d: %s  %s  [%.1fs]\n", c.id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}
