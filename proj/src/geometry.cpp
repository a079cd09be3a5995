#include "geometry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "errors.hpp"

namespace frcone {

namespace {

double spatial_norm(std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < y.size(); ++j) sum += y[j] * y[j];
  return std::sqrt(sum);
}

void fill_normals(std::mt19937_64& rng, std::span<double> out) {
  for (std::size_t j = 0; j < out.size(); j += 2) {
    const double radius = std::sqrt(-2.0 * std::log(uniform_open(rng)));
    const double angle = 2.0 * std::numbers::pi * uniform_open(rng);
    out[j] = radius * std::cos(angle);
    if (j + 1 < out.size()) out[j + 1] = radius * std::sin(angle);
  }
}

/// Multivariate Cauchy (Student-t, one degree of freedom) draw of dimension out.size().
void draw_cauchy(std::mt19937_64& rng, double scale, std::span<double> out) {
  double buf[16] = {};
  std::vector<double> heap;
  std::span<double> normals;
  if (out.size() + 1 <= 16) {
    normals = std::span<double>(buf, out.size() + 1);
  } else {
    heap.resize(out.size() + 1);
    normals = heap;
  }
  fill_normals(rng, normals);
  const double denom = std::abs(normals[out.size()]);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = scale * normals[j] / denom;
}

double cauchy_density(double norm_const, std::size_t dim, double scale, double r2) {
  const double ratio = r2 / (scale * scale);
  return norm_const / std::pow(scale, static_cast<double>(dim)) *
         std::pow(1.0 + ratio, -0.5 * static_cast<double>(dim + 1));
}

}  // namespace

ConePoint::ConePoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw DomainError("cone dimension must be at least 2");
  for (double c : coords_) {
    if (!std::isfinite(c)) throw DomainError("cone point has a non-finite coordinate");
  }
  if (!in_cone(coords_)) throw DomainError("point is not strictly inside the forward light cone");
}

TubePoint::TubePoint(std::vector<double> re, ConePoint im) : re_(std::move(re)), im_(std::move(im)) {
  if (re_.size() != im_.dim()) throw DomainError("real and imaginary parts differ in dimension");
  for (double c : re_) {
    if (!std::isfinite(c)) throw DomainError("tube point has a non-finite real part");
  }
}

TubePoint TubePoint::from_parts(std::vector<double> re, std::vector<double> im) {
  return TubePoint(std::move(re), ConePoint(std::move(im)));
}

std::vector<std::complex<double>> TubePoint::as_complex() const {
  std::vector<std::complex<double>> z(dim());
  for (std::size_t j = 0; j < dim(); ++j) z[j] = {re_[j], im_[j]};
  return z;
}

TubeView view(const TubePoint& z) noexcept { return {z.re(), z.im().coords()}; }

bool in_cone(std::span<const double> y) {
  if (y.size() < 2) return false;
  return y.back() > spatial_norm(y);
}

double g_form(const ConePoint& y) { return g_form(y.coords()); }

double g_form(std::span<const double> y) {
  const double r = spatial_norm(y);
  return (y.back() - r) * (y.back() + r);
}

std::complex<double> q_form(std::span<const std::complex<double>> z) {
  std::complex<double> sum = 0.0;
  const std::size_t n = z.size();
  for (std::size_t j = 0; j + 1 < n; ++j) sum += z[j] * z[j];
  return sum - z[n - 1] * z[n - 1];
}

std::complex<double> q_form(std::span<const double> re, std::span<const double> im) {
  const std::size_t n = re.size();
  double real = 0.0;
  double imag = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    real += re[j] * re[j] - im[j] * im[j];
    imag += re[j] * im[j];
  }
  real -= re[n - 1] * re[n - 1] - im[n - 1] * im[n - 1];
  imag -= re[n - 1] * im[n - 1];
  return {real, 2.0 * imag};
}

std::complex<double> q_conj_difference(TubeView z, TubeView u) {
  const std::size_t n = z.dim();
  double real = 0.0;
  double imag = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double a = z.re[j] - u.re[j];
    const double b = z.im[j] + u.im[j];
    const double sign = (j + 1 < n) ? 1.0 : -1.0;
    real += sign * (a * a - b * b);
    imag += sign * a * b;
  }
  return {real, 2.0 * imag};
}

std::complex<double> q_shifted(TubeView z, double height) {
  const std::size_t n = z.dim();
  double real = 0.0;
  double imag = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double a = z.re[j];
    const double b = z.im[j] + (j + 1 == n ? height : 0.0);
    const double sign = (j + 1 < n) ? 1.0 : -1.0;
    real += sign * (a * a - b * b);
    imag += sign * a * b;
  }
  return {real, 2.0 * imag};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

Proposal::Proposal(std::size_t n, double scale, std::vector<double> x_center)
    : n_(n), scale_(scale), x_center_(std::move(x_center)) {
  if (n_ < 2) throw DomainError("tube dimension must be at least 2");
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw DomainError("proposal scale must be positive");
  if (x_center_.empty()) x_center_.assign(n_, 0.0);
  if (x_center_.size() != n_) throw DomainError("proposal centre has the wrong dimension");
  const double nd = static_cast<double>(n_);
  sphere_area_ = 2.0 * std::pow(std::numbers::pi, 0.5 * (nd - 1.0)) / std::tgamma(0.5 * (nd - 1.0));
  cauchy_norm_x_ = std::tgamma(0.5 * (nd + 1.0)) / std::pow(std::numbers::pi, 0.5 * (nd + 1.0));
  t_norm_ = 1.0 - std::exp(-kTailRate * kLogHalfWidth);
}

std::string Proposal::id() const {
  std::ostringstream out;
  out.precision(17);
  out << "cone-loglaplace-v3(n=" << n_ << ",scale=" << scale_;
  bool centred = false;
  for (double c : x_center_) centred = centred || c != 0.0;
  if (centred) {
    out << ",center=";
    for (std::size_t j = 0; j < n_; ++j) out << (j ? ":" : "") << x_center_[j];
  }
  out << ")";
  return out.str();
}

double Proposal::log_laplace(double v, double centre) const {
  const double u = std::log(v / centre);
  if (!(std::abs(u) <= kLogHalfWidth)) return 0.0;
  return 0.5 * kTailRate * std::exp(-kTailRate * std::abs(u)) / t_norm_ / v;
}

double Proposal::draw_log_laplace(std::mt19937_64& rng, double centre) const {
  const double side = uniform_open(rng);
  const double magnitude = -std::log1p(-uniform_open(rng) * t_norm_) / kTailRate;
  return centre * std::exp(side < 0.5 ? -magnitude : magnitude);
}

double Proposal::draw(std::mt19937_64& rng, std::span<double> re, std::span<double> im) const {
  const std::size_t d = n_ - 1;
  const double radius = draw_log_laplace(rng, scale_);
  if (d == 1) {
    im[0] = uniform_open(rng) < 0.5 ? -radius : radius;
  } else {
    fill_normals(rng, im.first(d));
    double norm = 0.0;
    for (std::size_t j = 0; j < d; ++j) norm += im[j] * im[j];
    norm = std::sqrt(norm);
    for (std::size_t j = 0; j < d; ++j) im[j] *= radius / norm;
  }
  const double t = draw_log_laplace(rng, uniform_open(rng) < 0.5 ? scale_ + radius : scale_);
  im[d] = radius + t;

  draw_cauchy(rng, uniform_open(rng) < 0.5 ? scale_ + im[d] : scale_, re);
  double x2 = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    x2 += re[j] * re[j];
    re[j] += x_center_[j];
  }
  return 1.0 / joint_density(radius, t, x2);
}

double Proposal::joint_density(double radius, double t, double x2) const {
  const double d = static_cast<double>(n_ - 1);
  const double q_y = log_laplace(radius, scale_) / (sphere_area_ * std::pow(radius, d - 1.0));
  const double q_t = 0.5 * (log_laplace(t, scale_ + radius) + log_laplace(t, scale_));
  const double q_x = 0.5 * (cauchy_density(cauchy_norm_x_, n_, scale_ + radius + t, x2) +
                            cauchy_density(cauchy_norm_x_, n_, scale_, x2));
  return q_y * q_t * q_x;
}

double Proposal::density(std::span<const double> re, std::span<const double> im) const {
  const std::size_t d = n_ - 1;
  double r2 = 0.0;
  for (std::size_t j = 0; j < d; ++j) r2 += im[j] * im[j];
  const double radius = std::sqrt(r2);
  const double t = im[d] - radius;
  if (!(t > 0.0) || !(radius > 0.0)) return 0.0;
  double x2 = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    const double dx = re[j] - x_center_[j];
    x2 += dx * dx;
  }
  return joint_density(radius, t, x2);
}

SampleBatch sample_tube(std::size_t n, double scale, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw DomainError("sample count must be at least 1");
  const Proposal proposal(n, scale);
  std::mt19937_64 rng(derive_seed(seed, 0));
  SampleBatch batch;
  batch.seed = seed;
  batch.proposal = proposal.id();
  batch.points.reserve(count);
  batch.weights.reserve(count);
  std::vector<double> re(n), im(n);
  for (std::size_t k = 0; k < count; ++k) {
    batch.weights.push_back(proposal.draw(rng, re, im));
    batch.points.push_back(TubePoint::from_parts(re, im));
  }
  return batch;
}

}  // namespace frcone
