// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

// Character and twist specification strings:
//   modp:d=2,label=1          character of order d on F_p^*
//   dirichlet:q=12,exp=1/1    Dirichlet character, one exponent per cyclic factor
//   one | tau:2 | mu | mu2 | kfree:3 | smooth:y=100 | r0 | dirichlet:...

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "divsum/bounds.hpp"
#include "divsum/multfunc.hpp"

namespace divsum::harness {

struct CharacterSpec {
  enum class Kind { ModP, Dirichlet };
  Kind kind = Kind::ModP;
  std::uint32_t d = 0;      // modp
  std::uint32_t label = 1;  // modp
  std::uint64_t q = 0;      // dirichlet
  std::vector<std::uint32_t> exponents;

  std::string describe() const;
  friend bool operator==(const CharacterSpec&, const CharacterSpec&) = default;
};

// Throw Error(ConfigError) on malformed text.
CharacterSpec parseCharacterSpec(std::string_view text);
TwistFunction parseTwistSpec(std::string_view text);

DirichletCharacter buildDirichlet(const CharacterSpec& spec);

// The bound that applies to a twist: squarefree for mu2, smooth for smooth:y,
// dirichlet for Dirichlet characters, divisor-bounded otherwise.
Theorem theoremFor(const TwistFunction& f);

}  // namespace divsum::harness
