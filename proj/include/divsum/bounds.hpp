// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

// Right-hand sides of the asymptotic upper bounds for the twisted sums, with
// implied constants set to 1 and o(1) terms set to 0. Hypotheses are checked
// and reported, never enforced.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace divsum {

enum class Theorem {
  DivisorBounded,  // tau_nu-bounded f
  Dirichlet,       // f a Dirichlet character
  Squarefree,      // f = mu^2
  Smooth,          // f = indicator of y-smooth numbers
};

std::string_view theoremName(Theorem t) noexcept;
std::optional<Theorem> parseTheorem(std::string_view name) noexcept;

struct BoundInputs {
  double p = 0;
  double R = 0;
  double N = 0;
  double epsilon = 0.1;
  unsigned nu = 1;
  bool quadratic = false;
  // smooth only
  double y = 0;
  double alpha = 0;
  double psiCount = 0;
};

struct HypothesisCheck {
  std::string name;
  bool holds;
};

struct BoundEvaluation {
  Theorem theorem;
  std::optional<double> rhs;
  std::vector<HypothesisCheck> hypotheses;
  double gamma = 0;  // smooth only

  bool allHold() const;
  std::vector<std::string> violations() const;
};

// R >= p^(1/2 + eps)
bool strongRCondition(double p, double R, double epsilon);
// R >= p^(1/2) exp(2.1 log p / log log p)
bool weakRCondition(double p, double R);

// (alpha^2 + alpha - 1) / (2 (alpha + 2))
double smoothGamma(double alpha);

BoundEvaluation boundRHS(Theorem theorem, const BoundInputs& in);

}  // namespace divsum
