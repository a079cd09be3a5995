#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "clause.hpp"
#include "conditions.hpp"
#include "quadrature.hpp"

namespace frcone {

/// Which Schur-test template a witness instantiates:
///   L22 both pᵢ > 1, L23 both pᵢ = 1, L24 p₂ = 1 < p₁, L25 p₁ = 1 < p₂.
enum class SchurVariant { L22, L23, L24, L25 };

std::string to_string(SchurVariant v);
SchurVariant schur_variant_from_string(const std::string& text);

/// The variant matching the shape of p⃗.
SchurVariant variant_for(const SpaceSpec& spaces);

/// The sufficiency theorem whose hypotheses the variant relies on.
TheoremId theorem_for(SchurVariant v);

/// Exponents (r⃗, s⃗, γ⃗, δ⃗, τ⃗) of the Schur test functions
/// h₁(u,η) = 𝔤(Im u)^{s₁}𝔤(Im η)^{s₂} and h₂(z,w) = 𝔤(Im z)^{r₁}𝔤(Im w)^{r₂}.
struct SchurWitness {
  RationalPair r;
  RationalPair s;
  RationalPair gamma;
  RationalPair delta;
  RationalPair tau;
  SchurVariant variant = SchurVariant::L22;
  /// Exact identities and inequalities verified on construction.
  std::vector<Clause> checks;
  /// Integrability side conditions of the Schur integrals; reported only.
  std::vector<Clause> diagnostics;

  friend bool operator==(const SchurWitness&, const SchurWitness&) = default;
};

struct Infeasible {
  std::string reason;
  std::vector<Clause> violated;

  friend bool operator==(const Infeasible&, const Infeasible&) = default;
};

using WitnessResult = std::variant<SchurWitness, Infeasible>;

/// Solves for r⃗ (midpoint of (−(1+βᵢ)/qᵢ, 0)) and s⃗ (midpoint of the τ-cleared chain),
/// then verifies every identity exactly. Throws DomainError when `variant` does not
/// match the shape of p⃗ and RangeGateError when the theorem's range hypothesis fails.
WitnessResult witness_solve(const FRParams& params, const SpaceSpec& spaces, SchurVariant variant);

/// Recomputes the exact check list for a given witness (used by tests and the solver).
std::vector<Clause> witness_checks(const SchurWitness& w, const FRParams& params, const SpaceSpec& spaces);

enum class SchurSide { first, second };

std::string to_string(SchurSide side);
SchurSide schur_side_from_string(const std::string& text);

/// Left side of one Schur inequality at a probe (z, w) and the matching power of h.
struct SchurCheck {
  SchurSide side = SchurSide::first;
  SchurVariant variant = SchurVariant::L22;
  McEstimate lhs;
  double rhs = 0.0;
  /// Empirical M at this probe: lhs / rhs.
  double ratio = 0.0;
  double ratio_std_error = 0.0;
  bool diverged = false;

  friend bool operator==(const SchurCheck&, const SchurCheck&) = default;
};

/// Monte Carlo evaluation of a Schur inequality at one probe. Suprema of L¹ factors are
/// taken over a sample cloud of `config.total_samples()` points. With `region`, every
/// integral is restricted to the truncated box.
SchurCheck schur_lhs_check(const SchurWitness& witness, const FRParams& params, const SpaceSpec& spaces,
                           const TubePoint& z, const TubePoint& w, SchurSide side, const SamplingConfig& config,
                           const std::optional<TruncatedBox>& region = std::nullopt);

}  // namespace frcone
