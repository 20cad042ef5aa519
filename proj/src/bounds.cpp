// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

#include "divsum/bounds.hpp"

#include <cmath>
#include <numbers>

namespace divsum {

std::string_view theoremName(Theorem t) noexcept {
  switch (t) {
    case Theorem::DivisorBounded: return "divisor-bounded";
    case Theorem::Dirichlet: return "dirichlet";
    case Theorem::Squarefree: return "squarefree";
    case Theorem::Smooth: return "smooth";
  }
  return "?";
}

std::optional<Theorem> parseTheorem(std::string_view name) noexcept {
  for (Theorem t : {Theorem::DivisorBounded, Theorem::Dirichlet, Theorem::Squarefree, Theorem::Smooth}) {
    if (theoremName(t) == name) return t;
  }
  return std::nullopt;
}

bool BoundEvaluation::allHold() const {
  for (const auto& h : hypotheses) {
    if (!h.holds) return false;
  }
  return true;
}

std::vector<std::string> BoundEvaluation::violations() const {
  std::vector<std::string> out;
  for (const auto& h : hypotheses) {
    if (!h.holds) out.push_back(h.name);
  }
  return out;
}

bool strongRCondition(double p, double R, double epsilon) { return R >= std::pow(p, 0.5 + epsilon); }

bool weakRCondition(double p, double R) {
  const double lp = std::log(p);
  return R >= std::sqrt(p) * std::exp(2.1 * lp / std::log(lp));
}

double smoothGamma(double alpha) { return (alpha * alpha + alpha - 1.0) / (2.0 * (alpha + 2.0)); }

BoundEvaluation boundRHS(Theorem theorem, const BoundInputs& in) {
  BoundEvaluation out{theorem, std::nullopt, {}, 0.0};
  const double logR = std::log(in.R);
  const double loglogR = logR > 0 ? std::log(logR) : -1.0;
  const bool logsPositive = loglogR > 0;
  auto check = [&](std::string name, bool holds) { out.hypotheses.push_back({std::move(name), holds}); };

  switch (theorem) {
    case Theorem::DivisorBounded: {
      check("eps_range", in.epsilon > 0 && in.epsilon <= 0.5);
      check("R_strong", strongRCondition(in.p, in.R, in.epsilon));
      // quadratic characters admit the wider range p^(1/2+eps) <= N
      const double lower = in.quadratic ? std::pow(in.p, 0.5 + in.epsilon)
                                        : std::pow(in.p, 1.0 / 12.0) * std::pow(in.R, 5.0 / 6.0 + in.epsilon);
      check("N_lower", in.N >= lower);
      check("N_le_R", in.N <= in.R);
      check("loglog_R_positive", logsPositive);
      if (logsPositive && in.epsilon > 0) {
        out.rhs = std::pow(in.epsilon, -static_cast<double>(in.nu)) * in.N *
                  std::pow(loglogR, static_cast<double>(in.nu)) / logR;
      }
      break;
    }
    case Theorem::Dirichlet: {
      check("R_weak", weakRCondition(in.p, in.R));
      check("N_le_R", in.N <= in.R);
      check("loglog_R_positive", logsPositive);
      if (logsPositive) {
        out.rhs = std::pow(in.p, 1.0 / 12.0) * std::pow(in.R, 5.0 / 6.0) * logR * std::cbrt(loglogR);
      }
      break;
    }
    case Theorem::Squarefree: {
      check("eps_range", in.epsilon > 0 && in.epsilon <= 0.5);
      check("R_strong", strongRCondition(in.p, in.R, in.epsilon));
      check("N_le_R", in.N <= in.R);
      check("loglog_R_positive", logsPositive);
      if (logsPositive) {
        const double first = std::sqrt(in.N) * std::pow(in.p, 1.0 / 24.0) * std::pow(in.R, 5.0 / 12.0) *
                             std::pow(logR, 1.5) * std::pow(loglogR, 1.0 / 6.0);
        const double second =
            in.N * std::pow(in.p, -in.epsilon / 4.0) * std::exp(std::numbers::ln2 * logR / loglogR);
        out.rhs = first + second;
      }
      break;
    }
    case Theorem::Smooth: {
      const double a = in.alpha;
      out.gamma = smoothGamma(a);
      check("R_weak", weakRCondition(in.p, in.R));
      check("N_le_R", in.N <= in.R);
      const double logN = in.N > 1 ? std::log(in.N) : 0.0;
      check("y_lower", in.y >= std::pow(logN, (3.0 + std::sqrt(5.0)) / 2.0));
      check("gamma_positive", out.gamma > 0);
      out.rhs = std::sqrt(in.y) * std::pow(in.p, 1.0 / (24.0 * (a + 2.0))) *
                std::pow(in.R, 5.0 / (12.0 * (a + 2.0))) * std::pow(in.N, -out.gamma) * in.psiCount;
      break;
    }
  }
  if (out.rhs && !(std::isfinite(*out.rhs) && *out.rhs > 0)) out.rhs.reset();
  return out;
}

}  // namespace divsum
