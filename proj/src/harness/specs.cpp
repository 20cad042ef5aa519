// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

#include "divsum/harness/specs.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "divsum/error.hpp"

namespace divsum::harness {

namespace {

[[noreturn]] void bad(std::string_view text, const std::string& why) {
  throw Error(ErrorCode::ConfigError, "bad spec '" + std::string(text) + "': " + why);
}

template <class T>
T number(std::string_view whole, std::string_view text) {
  T v{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) bad(whole, "expected a number");
  return v;
}

// "k1=v1,k2=v2" -> map; duplicate or unknown keys are errors.
std::map<std::string, std::string, std::less<>> params(std::string_view whole, std::string_view body,
                                                       std::initializer_list<std::string_view> allowed) {
  std::map<std::string, std::string, std::less<>> out;
  while (!body.empty()) {
    const std::size_t comma = body.find(',');
    const std::string_view item = body.substr(0, comma);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) bad(whole, "expected key=value");
    const std::string_view key = item.substr(0, eq);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) bad(whole, "unknown key");
    if (!out.emplace(std::string(key), std::string(item.substr(eq + 1))).second) bad(whole, "repeated key");
    body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
  }
  return out;
}

std::pair<std::string_view, std::string_view> headAndBody(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) return {text, {}};
  return {text.substr(0, colon), text.substr(colon + 1)};
}

}  // namespace

std::string CharacterSpec::describe() const {
  if (kind == Kind::ModP) return "modp:d=" + std::to_string(d) + ",label=" + std::to_string(label);
  std::string s = "dirichlet:q=" + std::to_string(q) + ",exp=";
  for (std::size_t i = 0; i < exponents.size(); ++i) s += (i ? "/" : "") + std::to_string(exponents[i]);
  return s;
}

CharacterSpec parseCharacterSpec(std::string_view text) {
  const auto [head, body] = headAndBody(text);
  if (head == "modp") {
    auto kv = params(text, body, {"d", "label"});
    if (!kv.contains("d")) bad(text, "missing d");
    CharacterSpec s;
    s.kind = CharacterSpec::Kind::ModP;
    s.d = number<std::uint32_t>(text, kv["d"]);
    s.label = kv.contains("label") ? number<std::uint32_t>(text, kv["label"]) : 1;
    if (s.d < 2) bad(text, "d must be >= 2");
    return s;
  }
  if (head == "dirichlet") {
    auto kv = params(text, body, {"q", "exp"});
    if (!kv.contains("q") || !kv.contains("exp")) bad(text, "need q and exp");
    CharacterSpec s;
    s.kind = CharacterSpec::Kind::Dirichlet;
    s.q = number<std::uint64_t>(text, kv["q"]);
    if (s.q < 2) bad(text, "q must be >= 2");
    std::string_view exps = kv["exp"];
    while (true) {
      const std::size_t slash = exps.find('/');
      s.exponents.push_back(number<std::uint32_t>(text, exps.substr(0, slash)));
      if (slash == std::string_view::npos) break;
      exps = exps.substr(slash + 1);
    }
    return s;
  }
  bad(text, "expected modp:... or dirichlet:...");
}

DirichletCharacter buildDirichlet(const CharacterSpec& spec) {
  if (spec.kind != CharacterSpec::Kind::Dirichlet) {
    throw Error(ErrorCode::ConfigError, spec.describe() + " is not a Dirichlet character");
  }
  return divsum::buildDirichlet(spec.q, spec.exponents);
}

TwistFunction parseTwistSpec(std::string_view text) {
  const auto [head, body] = headAndBody(text);
  auto noBody = [&, body = body] {
    if (!body.empty()) bad(text, "unexpected parameters");
  };
  if (head == "one") return noBody(), TwistFunction::one();
  if (head == "mu") return noBody(), TwistFunction::moebius();
  if (head == "mu2") return noBody(), TwistFunction::moebiusSq();
  if (head == "r0") return noBody(), TwistFunction::sumTwoSquares();
  if (head == "tau" || head == "kfree") {
    const auto k = number<unsigned>(text, body);
    if (k < (head == "tau" ? 1u : 2u)) bad(text, "parameter too small");
    return head == "tau" ? TwistFunction::tauNu(k) : TwistFunction::kFree(k);
  }
  if (head == "smooth") {
    auto kv = params(text, body, {"y"});
    if (!kv.contains("y")) bad(text, "missing y");
    const auto y = number<std::uint64_t>(text, kv["y"]);
    if (y < 2) bad(text, "y must be >= 2");
    return TwistFunction::smooth(y);
  }
  if (head == "dirichlet") {
    try {
      return TwistFunction::dirichlet(buildDirichlet(parseCharacterSpec(text)));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ConfigError) throw;
      bad(text, e.what());
    }
  }
  bad(text, "unknown twist");
}

Theorem theoremFor(const TwistFunction& f) {
  switch (f.kind()) {
    case TwistFunction::Kind::MoebiusSq: return Theorem::Squarefree;
    case TwistFunction::Kind::Smooth: return Theorem::Smooth;
    case TwistFunction::Kind::Dirichlet: return Theorem::Dirichlet;
    default: return Theorem::DivisorBounded;
  }
}

}  // namespace divsum::harness
