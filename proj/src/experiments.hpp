#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "closed_forms.hpp"
#include "quadrature.hpp"

namespace frcone {

/// Log-log scaling fit of a norm against the shift R = (0′, r). The abscissa is
/// log 𝔤(R) = 2 log r, the unit in which the closed-form exponents are stated.
struct ScalingReport {
  std::string quantity;  // "source", "image" or "ratio"
  std::vector<double> R_grid;
  std::vector<double> log_g_R;
  std::vector<double> log_norms;
  std::vector<McEstimate> estimates;
  double fitted_slope = 0.0;
  double intercept = 0.0;
  Rational predicted_slope;
  /// Max |log-point − fit line|.
  double residual = 0.0;
  std::uint64_t seed = 0;
  bool diverged = false;

  /// One row per grid point.
  std::string to_csv() const;

  friend bool operator==(const ScalingReport&, const ScalingReport&) = default;
};

struct ScalingPair {
  ScalingReport source;
  ScalingReport image;

  friend bool operator==(const ScalingPair&, const ScalingPair&) = default;
};

/// Checks the grid (≥ 4 points, positive, strictly increasing); throws DomainError.
void validate_grid(const std::vector<double>& grid);

/// Ordinary least squares y = slope·x + intercept; returns {slope, intercept}.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// ‖f_R‖_{p⃗,α⃗} and ‖T f_R‖_{q⃗,β⃗} over the grid. The template's height is ignored.
/// Throws MembershipError when f_R is outside its membership system.
ScalingPair run_scaling(const TestFnSpec& spec, const FRParams& params, const SpaceSpec& spaces,
                        const std::vector<double>& R_grid, const SamplingConfig& config);

/// Offsets cᵢ from its Theorem-1 value by ε.
struct BlowupDirection {
  Factor factor = Factor::first;
  Rational epsilon;
};

/// Slope of ‖T f_R‖/‖f_R‖ with cᵢ perturbed; predicted slope −ε. `params` must satisfy
/// the c-equations; a and b are kept.
ScalingReport run_blowup_probe(const FRParams& params, const SpaceSpec& spaces, const BlowupDirection& direction,
                               const TestFnSpec& spec, const std::vector<double>& R_grid,
                               const SamplingConfig& config);

/// ⟨T f, g⟩ against dv_β⃗ and ⟨f, T* g⟩ against dv_α⃗, each a product over factors.
struct DualityReport {
  std::size_t probes = 0;  // sample pairs per factor and side
  ComplexEstimate lhs;
  ComplexEstimate rhs;
  bool agree = false;

  friend bool operator==(const DualityReport&, const DualityReport&) = default;
};

DualityReport run_duality(const FRParams& params, const SpaceSpec& spaces, const SeparableFn& f, const SeparableFn& g,
                          const SamplingConfig& config);

struct Lemma21Report {
  PowerLawPrediction prediction;
  std::vector<std::pair<TubePoint, TubePoint>> probes;
  std::vector<ComplexEstimate> integrals;
  /// integral / Q(z − ξ̄)^{n−r−s+l}, with its combined standard error.
  std::vector<std::complex<double>> ratios;
  std::vector<double> ratio_std_errors;
  bool constant = false;
  bool diverged = false;
  /// Indices of the first pair of probes whose ratios differ by more than 3σ.
  std::optional<std::pair<std::size_t, std::size_t>> offending;

  friend bool operator==(const Lemma21Report&, const Lemma21Report&) = default;
};

/// MC of ∫ 𝔤(Im u)^l / (Q(z−ū)^r Q(u−ξ̄)^s) dV(u) at each probe pair. Throws DomainError
/// unless there are ≥ 3 probes with ≥ 2 distinct values of Q(z − ξ̄).
Lemma21Report verify_lemma21(int n, const Rational& l, const Rational& r, const Rational& s,
                             const std::vector<std::pair<TubePoint, TubePoint>>& probes,
                             const SamplingConfig& config);

/// J_{s,l}(iR) = ∫ 𝔤(Im u)^l / |Q(u + iR)|^s dV(u) with the proposal scaled by r.
McEstimate remark21_integral(int n, const Rational& s, const Rational& l, double height, const SamplingConfig& config);

}  // namespace frcone
