#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace frcone {

/// A point y = (y′, yₙ) of the forward light cone Λₙ: yₙ > |y′|, n ≥ 2.
class ConePoint {
 public:
  /// Throws DomainError for n < 2, non-finite entries or yₙ ≤ |y′|.
  explicit ConePoint(std::vector<double> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  friend bool operator==(const ConePoint&, const ConePoint&) = default;

 private:
  std::vector<double> coords_;
};

/// A point z = x + iy of the tube domain T_{Λₙ}.
class TubePoint {
 public:
  /// Throws DomainError when the dimensions of x and y differ.
  TubePoint(std::vector<double> re, ConePoint im);

  /// Convenience: the imaginary part is validated as a ConePoint.
  static TubePoint from_parts(std::vector<double> re, std::vector<double> im);

  std::size_t dim() const noexcept { return re_.size(); }
  std::span<const double> re() const noexcept { return re_; }
  const ConePoint& im() const noexcept { return im_; }
  std::vector<std::complex<double>> as_complex() const;

  friend bool operator==(const TubePoint&, const TubePoint&) = default;

 private:
  std::vector<double> re_;
  ConePoint im_;
};

/// Non-owning view used on hot paths; the caller guarantees im ∈ Λₙ.
struct TubeView {
  std::span<const double> re;
  std::span<const double> im;

  std::size_t dim() const noexcept { return re.size(); }
};

TubeView view(const TubePoint& z) noexcept;

bool in_cone(std::span<const double> y);

/// 𝔤(y) = yₙ² − |y′|², evaluated as (yₙ − |y′|)(yₙ + |y′|).
double g_form(const ConePoint& y);
double g_form(std::span<const double> y);

/// Q(z) = z₁² + ⋯ + z_{n−1}² − zₙ² on all of ℂⁿ.
std::complex<double> q_form(std::span<const std::complex<double>> z);

/// Q(w) for w = re + i·im given componentwise.
std::complex<double> q_form(std::span<const double> re, std::span<const double> im);

/// Q(z − ū): real part x_z − x_u, imaginary part y_z + y_u.
std::complex<double> q_conj_difference(TubeView z, TubeView u);

/// Q(z + iR) with R = (0′, height).
std::complex<double> q_shifted(TubeView z, double height);

/// 𝔤(Im z) shortcut.
inline double g_of(TubeView z) { return g_form(z.im); }

// ---------------------------------------------------------------------------
// Sampling

/// Derives an independent 64-bit stream seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Uniform double in (0, 1) from the top 53 bits of the generator.
double uniform_open(std::mt19937_64& rng);

/// Heavy-tailed proposal on T_{Λₙ}. Log-Laplace laws have rate 1/2 and are truncated
/// to ±27 e-folds.
///   |y′| ~ log-Laplace about σ, direction uniform on the sphere,
///   t = yₙ − |y′| ~ equal mixture of log-Laplace about σ + |y′| and about σ,
///   x ~ equal mixture of Cauchy laws on ℝⁿ about `x_center`, with scales σ + yₙ and σ.
/// The |y′| tail and the second t component cover the far cone boundary, where
/// integrands peak along complex null directions. The density is exact; weights are
/// its reciprocal.
class Proposal {
 public:
  static constexpr double kTailRate = 0.5;
  static constexpr double kLogHalfWidth = 27.0;

  Proposal(std::size_t n, double scale, std::vector<double> x_center = {});

  std::size_t dim() const noexcept { return n_; }
  double scale() const noexcept { return scale_; }
  std::span<const double> x_center() const noexcept { return x_center_; }

  /// Stable identifier recorded with every batch.
  std::string id() const;

  /// Writes one draw into re/im (length n) and returns 1/density.
  double draw(std::mt19937_64& rng, std::span<double> re, std::span<double> im) const;

  /// Density at a point of T_{Λₙ} (zero outside the truncation window of t).
  double density(std::span<const double> re, std::span<const double> im) const;

 private:
  std::size_t n_;
  double scale_;
  std::vector<double> x_center_;
  double log_laplace(double v, double centre) const;
  double draw_log_laplace(std::mt19937_64& rng, double centre) const;
  double joint_density(double radius, double t, double x2) const;

  double sphere_area_;    // area of the unit sphere in ℝ^{n−1}
  double cauchy_norm_x_;  // Γ((n+1)/2)/π^{(n+1)/2}
  double t_norm_;         // normaliser of the truncated log-Laplace law
};

/// Points of T_{Λₙ} with importance weights (reciprocal proposal densities).
struct SampleBatch {
  std::vector<TubePoint> points;
  std::vector<double> weights;
  std::uint64_t seed = 0;
  std::string proposal;
};

/// Draws `count` points with the default proposal; deterministic in (n, scale, count, seed).
SampleBatch sample_tube(std::size_t n, double scale, std::size_t count, std::uint64_t seed);

}  // namespace frcone
