#pragma once

#include <string>
#include <vector>

#include "clause.hpp"
#include "kernels.hpp"

namespace frcone {

enum class TheoremId { t1_necessary, t2_sufficient, t3i, t3ii, t4i, t4ii, t5i, t5ii };

std::string to_string(TheoremId id);
TheoremId theorem_from_string(const std::string& text);

/// Exact verdict of one theorem's parameter system; holds = ∧ clauses.
struct TheoremVerdict {
  TheoremId theorem = TheoremId::t1_necessary;
  bool holds = false;
  std::vector<Clause> clauses;
  std::vector<std::string> warnings;

  friend bool operator==(const TheoremVerdict&, const TheoremVerdict&) = default;
};

enum class Part { i, ii };

/// Each function first checks the theorem's exponent-range hypothesis and
/// throws RangeGateError when it fails.
TheoremVerdict thm1_necessary(const FRParams& params, const SpaceSpec& spaces);
TheoremVerdict thm2_sufficient(const FRParams& params, const SpaceSpec& spaces);
TheoremVerdict thm3_conditions(const FRParams& params, const SpaceSpec& spaces, Part part);
TheoremVerdict thm4_conditions(const FRParams& params, const SpaceSpec& spaces, Part part);
TheoremVerdict thm5_conditions(const FRParams& params, const SpaceSpec& spaces, Part part);

TheoremVerdict evaluate_theorem(TheoremId id, const FRParams& params, const SpaceSpec& spaces);

/// Verdicts whose hypotheses match the shape of p⃗ (both > 1, (1, p₂), (p₁, 1), (1, 1)),
/// necessary form first. The q-ordering part of the gate is still checked on evaluation.
std::vector<TheoremId> applicable_theorems(const SpaceSpec& spaces);

/// The c-equation value: n + aᵢ + bᵢ + (n+βᵢ)/qᵢ − (n+αᵢ)/pᵢ.
Rational thm1_c_value(const FRParams& params, const SpaceSpec& spaces, Factor factor);

/// The L¹-type c-equation value: aᵢ + bᵢ − αᵢ + (n+βᵢ)/qᵢ.
Rational l1_c_value(const FRParams& params, const SpaceSpec& spaces, Factor factor);

}  // namespace frcone
