#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "kernels.hpp"

namespace frcone {

/// Sampling block of a run: proposal scale, batch layout, doubling schedule, seed.
struct SamplingConfig {
  std::uint64_t seed = 1;
  double scale = 1.0;
  std::size_t batch_size = 4096;
  /// Samples at the first checkpoint; rounded up to a multiple of batch_size.
  std::size_t base_samples = std::size_t{1} << 16;
  /// Checkpoints at N, 2N, ..., 2^doublings·N; the last one is the estimate.
  int doublings = 3;
  double cauchy_tolerance = 0.1;
  /// Hill estimate of 1/(tail index) of |weighted values| above which the mean is
  /// treated as infinite.
  double tail_threshold = 0.9;
  /// Nested mixed norms: inner samples per outer point = inner_factor × outer samples.
  std::size_t inner_factor = 64;
  /// Inner samples per outer point for operator images (pair U-statistic).
  std::size_t pair_samples = 1024;
  /// Outer samples at the first checkpoint for operator images; each costs pair_samples
  /// kernel evaluations, so this is far below base_samples.
  std::size_t image_samples = 2048;
  /// Real-part centre of the proposal (empty: origin).
  std::vector<double> x_center;

  std::size_t first_checkpoint() const;
  std::size_t total_samples() const;
  void validate() const;

  /// Copy with the seed replaced by an independent derived stream.
  SamplingConfig derived(std::uint64_t stream) const;
};

/// A Monte Carlo value with standard error; the unit of numerical evidence.
struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  bool diverged = false;
  std::string divergence_reason;
  double tail_xi = 0.0;
  std::vector<double> checkpoints;
  /// Inner samples per outer point for nested estimators, 0 otherwise.
  std::uint64_t inner_samples = 0;

  friend bool operator==(const McEstimate&, const McEstimate&) = default;
};

/// Pools two estimates of the same integrand drawn with different seeds.
McEstimate merge(const McEstimate& lhs, const McEstimate& rhs);

/// A complex-valued estimate (real and imaginary parts share samples and flags).
struct ComplexEstimate {
  McEstimate re;
  McEstimate im;

  std::complex<double> value() const { return {re.value, im.value}; }
  double std_error() const;
  bool diverged() const { return re.diverged || im.diverged; }

  friend bool operator==(const ComplexEstimate&, const ComplexEstimate&) = default;
};

ComplexEstimate product(const ComplexEstimate& lhs, const ComplexEstimate& rhs);
McEstimate product(const McEstimate& lhs, const McEstimate& rhs);
McEstimate scaled(const McEstimate& est, double factor);

/// True when |a − b| ≤ k·sqrt(σa² + σb²).
bool agree(const McEstimate& a, const McEstimate& b, double k = 3.0);
bool agree(const ComplexEstimate& a, const ComplexEstimate& b, double k = 3.0);

using PointIntegrand = std::function<std::complex<double>(TubeView)>;
using RealIntegrand = std::function<double(TubeView)>;
using PairIntegrand = std::function<std::complex<double>(TubeView, TubeView)>;

/// Importance-sampled ∫_{T_{Λₙ}} f dV with the doubling-schedule divergence detector.
McEstimate integrate_tube(const RealIntegrand& integrand, std::size_t n, const SamplingConfig& config);
ComplexEstimate integrate_tube_complex(const PointIntegrand& integrand, std::size_t n, const SamplingConfig& config);

/// ∫∫_{T×T} f(u, v) dV(u) dV(v) with independent draws of u and v.
ComplexEstimate integrate_tube_pair(const PairIntegrand& integrand, std::size_t n, const SamplingConfig& config);

/// Region used for deterministic-oracle cross checks:
/// |x|₂ < x_radius, yₙ < y_top, 𝔤(y) < g_max.
struct TruncatedBox {
  double x_radius = 1.0;
  double y_top = 2.0;
  double g_max = std::numeric_limits<double>::infinity();

  bool contains(TubeView z) const;
};

/// One factor of a separable integrand, a function on T_{Λₙ}.
class FactorFn {
 public:
  enum class Kind { zero, power, box, custom };

  /// 𝔤(Im z)^l / Q(z + iR)^s, R = (0′, height); an absent l means no numerator.
  static FactorFn power(std::optional<Rational> l, Rational s, double height);
  static FactorFn zero();
  static FactorFn box(TruncatedBox box);
  static FactorFn custom(PointIntegrand fn, std::string label);

  Kind kind() const noexcept { return kind_; }
  std::complex<double> operator()(TubeView z) const;
  std::string describe() const;

  const std::optional<Rational>& l() const noexcept { return l_; }
  const Rational& s() const noexcept { return s_; }
  double height() const noexcept { return height_; }
  const TruncatedBox& region() const noexcept { return box_; }

 private:
  Kind kind_ = Kind::zero;
  std::optional<Rational> l_;
  Rational s_;
  double l_value_ = 0.0;
  double s_value_ = 0.0;
  double height_ = 1.0;
  TruncatedBox box_;
  PointIntegrand fn_;
  std::string label_;
};

struct SeparableFn {
  FactorFn first;
  FactorFn second;

  const FactorFn& operator[](Factor f) const { return f == Factor::first ? first : second; }
};

enum class NormSide { source, target };

/// Which (exponent, weight) pair of a SpaceSpec a mixed norm uses: (p⃗, α⃗) or (q⃗, β⃗).
struct MixedNormSpec {
  SpaceSpec spaces;
  NormSide which = NormSide::source;

  Rational exponent(Factor f) const;
  Rational weight(Factor f) const;
};

/// ‖φ‖_{L^p_α} = (∫ |φ|^p 𝔤^α dV)^{1/p} for a single factor.
McEstimate factor_norm(const FactorFn& fn, const Rational& p, const Rational& alpha, std::size_t n,
                       const SamplingConfig& config);

/// Nested estimator of the mixed norm of a general f(z, w): outer w, inner z.
/// The inner sample size per outer point is inner_factor × outer samples.
McEstimate mixed_norm(const PairIntegrand& f, const MixedNormSpec& spec, std::size_t n, const SamplingConfig& config);

/// Exact factorisation ‖g ⊗ h‖ = ‖g‖_{p₁,α₁}·‖h‖_{p₂,α₂}.
McEstimate mixed_norm_separable(const FactorFn& g, const FactorFn& h, const MixedNormSpec& spec, std::size_t n,
                                const SamplingConfig& config);

/// (T_i φ)(z) = 𝔤(Im z)^{aᵢ} ∫ 𝔤(Im u)^{bᵢ} Q(z − ū)^{−cᵢ} φ(u) dV(u).
ComplexEstimate apply_operator_factor(const FRParams& params, Factor factor, const FactorFn& fn, const TubePoint& at,
                                      const SamplingConfig& config);

/// T f at (z, w) for separable f: the product of the two factor images.
ComplexEstimate apply_operator_T(const FRParams& params, const SeparableFn& f, const TubePoint& z, const TubePoint& w,
                                 const SamplingConfig& config);

/// ‖T_i φ‖_{L^q_β}. For q = 2 the square is estimated without bias from pairs of inner
/// samples; otherwise the inner integral is plugged in.
McEstimate image_norm_factor(const FRParams& params, Factor factor, const FactorFn& fn, const Rational& q,
                             const Rational& beta, const SamplingConfig& config);

}  // namespace frcone
