#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "clause.hpp"
#include "kernels.hpp"

namespace frcone {

/// Outcome of an exponent-calculus query: a power of 𝔤 (or of Q) when valid.
struct PowerLawPrediction {
  bool valid = false;
  std::optional<Rational> exponent;
  Rational formal_exponent;  // the formula's value, reported even when invalid
  std::string reason;  // failed preconditions, "; "-separated
  std::vector<Clause> clauses;
};

/// ∫ 𝔤(Im u)^l / (Q(z−ū)^r Q(u−ξ̄)^s) dV(u) ∝ Q(z−ξ̄)^{n−r−s+l}.
PowerLawPrediction lemma21_predict(int n, const Rational& l, const Rational& r, const Rational& s);

/// J_{s,l}(z) = ∫ 𝔤(Im u)^l / |Q(z−ū)|^s dV(u) ∝ 𝔤(Im z)^{n−s+l}; invalid means J ≡ ∞.
PowerLawPrediction remark21_predict(int n, const Rational& s, const Rational& l);

/// Which factors of the test function carry a 𝔤 numerator.
enum class TestFnVariant { both_factors, first_only, second_only, none };

std::string to_string(TestFnVariant v);
TestFnVariant test_fn_variant_from_string(const std::string& text);

/// f_R(z, w) = Π 𝔤(Im ·)^{lᵢ} / Q(· + iR)^{sᵢ} with R = (0′, height).
struct TestFnSpec {
  int n = 2;
  std::array<std::optional<Rational>, 2> l;
  RationalPair s;
  double height = 1.0;
  TestFnVariant variant = TestFnVariant::both_factors;

  /// Throws DomainError (s ≤ 0, height ≤ 0) or VariantMismatch.
  void validate() const;

  /// lᵢ, with absent numerators read as 0.
  Rational l_or_zero(Factor f) const;
};

/// Membership conditions of f_R in L^{p⃗}_{α⃗} that do not involve the operator.
std::vector<Clause> norm_membership(const TestFnSpec& spec, const SpaceSpec& spaces, Factor factor);

/// Full membership system (source-side conditions plus the operator-dependent lines) for one factor.
std::vector<Clause> membership_conditions(const TestFnSpec& spec, const FRParams& params,
                                          const SpaceSpec& spaces, Factor factor);

/// Exponent of R (in units of 𝔤(R)) in ‖f_R‖ restricted to one factor:
///   lᵢ − sᵢ + (n+αᵢ)/pᵢ   (which equals n + lᵢ − sᵢ + αᵢ at pᵢ = 1).
PowerLawPrediction testfn_norm_exponent(const TestFnSpec& spec, const SpaceSpec& spaces, Factor factor);

/// Exponent of R (in units of 𝔤(R)) in ‖T f_R‖ for one factor:
///   aᵢ + bᵢ − cᵢ + lᵢ − sᵢ + n + (βᵢ+n)/qᵢ.
PowerLawPrediction image_norm_exponent(const TestFnSpec& spec, const FRParams& params,
                                       const SpaceSpec& spaces, Factor factor);

/// Exponent of Q(z + iR) in the closed form of T_i f_R:  cᵢ + sᵢ − n − bᵢ − lᵢ.
Rational image_q_exponent(const TestFnSpec& spec, const FRParams& params, Factor factor);

}  // namespace frcone
