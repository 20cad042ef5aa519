// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "divsum/error.hpp"
#include "divsum/harness/commands.hpp"
#include "divsum/harness/config.hpp"
#include "divsum/harness/ensemble.hpp"
#include "divsum/harness/specs.hpp"

using namespace divsum;
using namespace divsum::harness;

namespace {

std::vector<std::string> splitCsv(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

// Drops the timing column so that two runs can be compared byte for byte.
std::string withoutMs(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  long msColumn = -1;
  while (std::getline(in, line)) {
    if (line.starts_with("#")) {
      out += line + "\n";
      continue;
    }
    auto fields = splitCsv(line);
    if (msColumn < 0) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == "ms") msColumn = static_cast<long>(i);
      }
      REQUIRE(msColumn >= 0);
    }
    fields.erase(fields.begin() + msColumn);
    for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "|" : "") + fields[i];
    out += "\n";
  }
  return out;
}

ExperimentConfig fixtureConfig() {
  ExperimentConfig c;
  c.curves = {{5, 1, 1, 0, 1}};
  c.curveCount = 0;
  c.nFractions.clear();
  return c;
}

std::string run(int (*cmd)(const ExperimentConfig&, std::ostream&, std::ostream&), const ExperimentConfig& c) {
  std::ostringstream out, err;
  REQUIRE(cmd(c, out, err) == 0);
  return out.str();
}

ExperimentConfig smallEnsemble() {
  ExperimentConfig c;
  c.primeMin = 1000;
  c.primeMax = 5000;
  c.curveCount = 3;
  c.seed = 7;
  c.characters = {"modp:d=2,label=1", "modp:d=4,label=3", "dirichlet:q=5,exp=1"};
  c.twists = {"one", "mu", "mu2", "tau:2", "r0", "smooth:y=20", "kfree:3"};
  c.nFractions = {0.25, 0.5, 1.0};
  return c;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("config survives emit and parse") {
  ExperimentConfig c;
  CHECK(parseConfig(emitConfig(c)) == c);
  CHECK(parseConfig("") == c);

  c = smallEnsemble();
  c.curves = {{5, 1, 1, 0, 1}, {101, 3, 7, 0, 0}};
  c.primes = {1009, 40009};
  c.orderExponent = 0.15;
  c.requireLargePrimeFactor = true;
  c.nValues = {4, 100};
  c.overrideRange = true;
  c.intervals = {{2.5, 10}, {10, 1e3}};
  c.theorems = {"smooth"};
  c.workers = 3;
  c.output = "out.csv";
  c.format = "json";
  c.costCeiling = 1.5e9;
  const std::string text = emitConfig(c);
  CHECK(parseConfig(text) == c);
  CHECK(emitConfig(parseConfig(text)) == text);

  const std::string h = configHash(c);
  CHECK(h.size() == 16);
  CHECK(configHash(parseConfig(text)) == h);
  c.seed += 1;
  CHECK(configHash(c) != h);
}

TEST_CASE("config rejects malformed input") {
  auto rejects = [](const char* text) {
    try {
      parseConfig(text);
    } catch (const Error& e) {
      return e.code() == ErrorCode::ConfigError;
    }
    return false;
  };
  CHECK(rejects("[nope]\nx = 1\n"));
  CHECK(rejects("[ensemble]\ncolour = 3\n"));
  CHECK(rejects("[ensemble]\ncurveCount = -2\n"));
  CHECK(rejects("[ensemble]\ncurveCount = 2x\n"));
  CHECK(rejects("[ensemble]\ncurves = 5:1:1:0\n"));
  CHECK(rejects("[ensemble]\ncurves = 5:1:1:0:1:2\n"));
  CHECK(rejects("[ensemble]\nrequireLargeOrder = maybe\n"));
  CHECK(rejects("[audit]\nformat = xml\n"));
  CHECK(rejects("[audit]\nintervals = 2-10\n"));
  CHECK(rejects("[schedule\n"));
  CHECK_FALSE(rejects("[audit]\n"));
}

TEST_CASE("character and twist specs") {
  const CharacterSpec m = parseCharacterSpec("modp:d=6,label=5");
  CHECK(m.kind == CharacterSpec::Kind::ModP);
  CHECK(m.d == 6);
  CHECK(m.label == 5);
  CHECK(parseCharacterSpec(m.describe()) == m);
  CHECK(parseCharacterSpec("modp:d=3").label == 1);

  const CharacterSpec q = parseCharacterSpec("dirichlet:q=12,exp=1/1");
  CHECK(q.kind == CharacterSpec::Kind::Dirichlet);
  CHECK(q.q == 12);
  CHECK(q.exponents == std::vector<std::uint32_t>{1, 1});
  CHECK(parseCharacterSpec(q.describe()) == q);

  for (const char* bad : {"modp:d=1", "modp:label=2", "modp:d=2,d=3", "modp:d=2,x=1", "dirichlet:q=5",
                          "dirichlet:q=1,exp=", "legendre", "modp:d=two"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parseCharacterSpec(bad), Error);
  }

  for (const char* text : {"one", "mu", "mu2", "r0", "tau:3", "kfree:3", "smooth:y=50", "dirichlet:q=5,exp=1"}) {
    CAPTURE(text);
    CHECK(parseTwistSpec(text).describe() == text);
  }
  for (const char* bad : {"one:1", "tau:0", "kfree:1", "smooth:y=1", "smooth", "dirichlet:q=5,exp=1/1", "phi"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parseTwistSpec(bad), Error);
  }

  CHECK(theoremFor(parseTwistSpec("mu2")) == Theorem::Squarefree);
  CHECK(theoremFor(parseTwistSpec("smooth:y=9")) == Theorem::Smooth);
  CHECK(theoremFor(parseTwistSpec("dirichlet:q=3,exp=1")) == Theorem::Dirichlet);
  CHECK(theoremFor(parseTwistSpec("tau:2")) == Theorem::DivisorBounded);
}

TEST_CASE("golden rows on the five-element fixture") {
  ExperimentConfig c = fixtureConfig();
  c.nValues = {1, 2, 3, 4, 9, 18, 19};
  // psi_1..4 = 1, 2, 4, 4 and the Legendre symbol mod 5 gives 1, -1, 1, 1.
  const std::string golden =
      "p|a|b|Px|Py|d|label|ordP|R|twist|N|S_re|S_im|S_abs|zero_count|theorem|rhs|ratio|flags\n"
      "5|1|1|0|1|2|1|9|18|one|1|1|0|1|0|divisor-bounded|3.6721405366|0.27232073229|"
      "HypothesisViolated:N_lower;R_strong\n"
      "5|1|1|0|1|2|1|9|18|one|2|0|0|0|0|divisor-bounded|7.3442810732|0|HypothesisViolated:N_lower;R_strong\n"
      "5|1|1|0|1|2|1|9|18|one|3|1|0|1|0|divisor-bounded|11.0164216098|0.0907735774301|R_strong\n"
      "5|1|1|0|1|2|1|9|18|one|4|2|0|2|0|divisor-bounded|14.6885621464|0.136160366145|R_strong\n"
      "5|1|1|0|1|2|1|9|18|one|9|0|0|0|1|divisor-bounded|33.0492648294|0|R_strong\n"
      "5|1|1|0|1|2|1|9|18|one|18|0|0|0|2|divisor-bounded|66.0985296588|0|R_strong\n"
      "5|1|1|0|1|2|1|9|18|one|19|||||divisor-bounded|||RangeExceedsR\n";
  const std::string got = withoutMs(run(cmdSum, c));
  CHECK(got == "# divsum 0.1.0 config=" + configHash(c) + "\n" + golden);
}

TEST_CASE("rows do not depend on the worker count") {
  ExperimentConfig c = smallEnsemble();
  const std::string one = withoutMs(run(cmdSum, c));
  c.workers = 8;
  const std::string eight = withoutMs(run(cmdSum, c));
  // The header hash covers workers, so compare from the column line on.
  CHECK(one.substr(one.find('\n')) == eight.substr(eight.find('\n')));

  // A single job hands the workers to the summation loops instead.
  ExperimentConfig s;
  s.primes = {40009};
  s.twists = {"one", "mu2", "smooth:y=30"};
  s.nFractions = {1.0};
  const std::string a = withoutMs(run(cmdScan, s));
  s.workers = 8;
  const std::string b = withoutMs(run(cmdScan, s));
  CHECK(a.substr(a.find('\n')) == b.substr(b.find('\n')));
}

TEST_CASE("scan flags") {
  ExperimentConfig c;
  c.primes = {2003};
  c.twists = {"one", "mu2", "smooth:y=2"};
  c.nFractions = {0.5, 1.0, 1.5};
  const auto rows = computeRows(c, RowMode::Scan);
  REQUIRE(rows.size() == 9);
  auto has = [](const ReportRow& r, const std::string& flag) {
    return std::find(r.flags.begin(), r.flags.end(), flag) != r.flags.end();
  };
  for (const ReportRow& r : rows) {
    CAPTURE(r.twist);
    CAPTURE(r.N);
    if (r.N > r.R) {
      CHECK(has(r, "RangeExceedsR"));
      CHECK_FALSE(r.S.has_value());
      continue;
    }
    REQUIRE(r.S.has_value());
    CHECK(std::abs(*r.S) <= static_cast<double>(r.N));
    CHECK_FALSE(has(r, "IdentityMismatch"));
    CHECK_FALSE(has(r, "DecompositionMismatch"));
    if (r.twist == "smooth:y=2") CHECK(has(r, "HypothesisViolated:y_lower"));
    if (r.twist == "mu2") {
      REQUIRE(r.t1.has_value());
      REQUIRE(r.t2.has_value());
      CHECK(std::abs(*r.t1 + *r.t2 - *r.S) < 1e-6);
    }
  }

  std::ostringstream out, err;
  c.overrideRange = true;
  REQUIRE(cmdScan(c, out, err) == 0);
  CHECK(out.str().find("RangeExceedsR") == std::string::npos);
  CHECK(err.str().find("squarefree: rows=3") != std::string::npos);
}

TEST_CASE("verify catches a corrupted seed") {
  ExperimentConfig c;
  c.curveCount = 3;
  c.primeMax = 20000;
  std::ostringstream out, err;
  CHECK(cmdVerify(c, out, err) == 0);

  std::ostringstream out2, err2;
  CHECK(cmdVerify(c, out2, err2, VerifyOptions{.corruptPsi3 = true}) != 0);
  CHECK(err2.str().find("FAIL eds_identity") != std::string::npos);
}

TEST_CASE("empty ensembles and oversized jobs are configuration errors") {
  ExperimentConfig c;
  c.curveCount = 0;
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code([&] { runVerify(c); }) == ErrorCode::ConfigError);

  ExperimentConfig big;
  big.primeMax = 1000000;
  big.curveCount = 1000;
  big.twists = {"one", "mu", "mu2"};
  big.costCeiling = 1e9;
  std::ostringstream out, err;
  CHECK(code([&] { cmdScan(big, out, err); }) == ErrorCode::ConfigError);
}

TEST_CASE("ensemble respects the order threshold and seed") {
  ExperimentConfig c;
  c.curveCount = 5;
  c.characters = {"modp:d=3,label=1"};
  const auto a = buildEnsemble(c);
  const auto b = buildEnsemble(c);
  REQUIRE(a.size() == 5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].label() == b[i].label());
    CHECK(a[i].p() % 3 == 1);
    CHECK(static_cast<double>(a[i].orderInfo.pointOrder) >= std::pow(static_cast<double>(a[i].p()), 0.6));
  }
  c.seed = 2;
  CHECK(buildEnsemble(c)[0].label() != a[0].label());
}

}  // TEST_SUITE
