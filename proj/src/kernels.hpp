#pragma once

#include <complex>
#include <optional>

#include "geometry.hpp"
#include "rational.hpp"

namespace frcone {

/// Index of one factor of the two-parameter product kernel.
enum class Factor : int { first = 0, second = 1 };

inline std::size_t index(Factor f) noexcept { return static_cast<std::size_t>(f); }
inline Factor other(Factor f) noexcept { return f == Factor::first ? Factor::second : Factor::first; }

/// Exponent triple (a⃗, b⃗, c⃗) and dimension n of one operator pair (T, S).
struct FRParams {
  int n = 2;
  RationalPair a;
  RationalPair b;
  RationalPair c;

  /// Throws DomainError for n < 2.
  void validate() const;

  friend bool operator==(const FRParams&, const FRParams&) = default;
};

/// Mixed-norm data (p⃗, q⃗, α⃗, β⃗): 1 ≤ pᵢ, qᵢ < ∞ and αᵢ, βᵢ > −1.
struct SpaceSpec {
  RationalPair p;
  RationalPair q;
  RationalPair alpha;
  RationalPair beta;

  void validate() const;

  /// 1/pᵢ′ and 1/qᵢ′ (zero when the exponent is 1).
  Rational p_conj_reciprocal(Factor f) const { return conjugate_reciprocal(p[index(f)]); }
  Rational q_conj_reciprocal(Factor f) const { return conjugate_reciprocal(q[index(f)]); }

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

/// Principal branch exp(e·Log w) with arg w ∈ (−π, π); BranchCutError on (−∞, 0].
std::complex<double> cpow(std::complex<double> base, const Rational& exponent);
std::complex<double> cpow(std::complex<double> base, double exponent);

/// One factor of the Forelli–Rudin kernel with exponents converted once:
///   T-kernel 𝔤(Im u)^{b} / Q(z − ū)^{c},   S-kernel 𝔤(Im u)^{b} / |Q(z − ū)|^{c}.
class FactorKernel {
 public:
  FactorKernel(const FRParams& params, Factor factor);
  FactorKernel(double b, double c) : b_(b), c_(c) {}

  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }

  std::complex<double> holomorphic(TubeView z, TubeView u) const;
  double modulus(TubeView z, TubeView u) const;

 private:
  double b_;
  double c_;
};

std::complex<double> kernel_T(const TubePoint& z, const TubePoint& u, Factor factor, const FRParams& params);
double kernel_S(const TubePoint& z, const TubePoint& u, Factor factor, const FRParams& params);

/// Parameters and spaces of the adjoint T*: a* = b − α, b* = a + β, c* = c,
/// acting from L^{q⃗′}_{β⃗} to L^{p⃗′}_{α⃗}. The spaces are absent when some
/// pᵢ or qᵢ equals 1 (the conjugate exponent would be ∞).
struct AdjointResult {
  FRParams params;
  std::optional<SpaceSpec> spaces;
};

AdjointResult adjoint_params(const FRParams& params, const SpaceSpec& spaces);

}  // namespace frcone
