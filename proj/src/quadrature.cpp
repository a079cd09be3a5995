#include "quadrature.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <queue>

#include "errors.hpp"

namespace frcone {

namespace {

using SpanIntegrand = std::function<std::complex<double>(std::span<const TubeView>)>;

constexpr std::size_t kChunkBatches = 32;

/// Welford accumulator for one component.
struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }

  /// Chan et al. parallel merge; the order of merges is fixed by batch index.
  void merge(const Moments& other) {
    if (other.count == 0.0) return;
    const double total = count + other.count;
    const double delta = other.mean - mean;
    mean += delta * other.count / total;
    m2 += other.m2 + delta * delta * count * other.count / total;
    count = total;
  }

  double std_error() const {
    if (count < 2.0) return 0.0;
    return std::sqrt(m2 / (count - 1.0) / count);
  }
};

using MinHeap = std::priority_queue<double, std::vector<double>, std::greater<>>;

void keep_top(MinHeap& heap, std::size_t capacity, double value) {
  if (!(value > 0.0)) return;
  if (heap.size() < capacity) {
    heap.push(value);
  } else if (value > heap.top()) {
    heap.pop();
    heap.push(value);
  }
}

struct BatchResult {
  Moments re;
  Moments im;
  std::vector<double> top;
  std::size_t non_finite = 0;
  std::size_t nonzero = 0;
};

constexpr std::size_t kHillMin = 50;
constexpr std::size_t kHillMax = 2000;

/// Hill estimator of the extreme-value index from the k+1 largest magnitudes, with k a
/// thousandth of the nonzero values. Fewer than 1000·kHillMin nonzero values is too
/// little tail for the estimate (a bounded weight cut off inside a small region reads
/// as heavy-tailed), and 0 is returned.
double hill_xi(MinHeap heap, std::size_t nonzero) {
  const std::size_t k = std::min(nonzero / 1000, kHillMax);
  if (k < kHillMin) return 0.0;
  while (heap.size() > k + 1) heap.pop();
  std::vector<double> values;
  values.reserve(heap.size());
  while (!heap.empty()) {
    values.push_back(heap.top());
    heap.pop();
  }
  // values ascending; values[0] is X_(k+1)
  const double threshold = values.front();
  double sum = 0.0;
  for (std::size_t j = 1; j < values.size(); ++j) sum += std::log(values[j] / threshold);
  return sum / static_cast<double>(values.size() - 1);
}

ComplexEstimate run_engine(const SpanIntegrand& integrand, std::size_t points, const std::vector<Proposal>& proposals,
                           const SamplingConfig& config) {
  config.validate();
  const std::size_t batch_size = config.batch_size;
  const std::size_t first_batches = config.first_checkpoint() / batch_size;
  const std::size_t total_batches = config.total_samples() / batch_size;
  const std::size_t n = proposals.front().dim();
  const std::size_t top_k = kHillMax + 1;

  Moments re, im;
  MinHeap heap;
  std::size_t non_finite = 0, nonzero = 0;
  std::vector<std::complex<double>> checkpoints;
  std::vector<double> checkpoint_se;
  std::size_t next_checkpoint = first_batches;

  std::vector<BatchResult> chunk;
  std::size_t done = 0;
  while (done < total_batches) {
    const std::size_t count = std::min(kChunkBatches, next_checkpoint - done);
    chunk.assign(count, BatchResult{});
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t k = 0; k < count; ++k) {
      const std::uint64_t batch_index = done + k;
      std::mt19937_64 rng(derive_seed(config.seed, batch_index + 1));
      std::vector<double> buffer(2 * n * points);
      std::vector<TubeView> views(points);
      for (std::size_t slot = 0; slot < points; ++slot) {
        views[slot] = TubeView{std::span<const double>(buffer.data() + 2 * n * slot, n),
                               std::span<const double>(buffer.data() + 2 * n * slot + n, n)};
      }
      BatchResult& out = chunk[k];
      MinHeap local;
      for (std::size_t j = 0; j < batch_size; ++j) {
        double weight = 1.0;
        for (std::size_t slot = 0; slot < points; ++slot) {
          double* base = buffer.data() + 2 * n * slot;
          weight *= proposals[slot].draw(rng, std::span<double>(base, n), std::span<double>(base + n, n));
        }
        std::complex<double> value = integrand(views);
        value *= weight;
        if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
          ++out.non_finite;
          value = 0.0;
        }
        out.re.add(value.real());
        out.im.add(value.imag());
        out.nonzero += value != 0.0;
        keep_top(local, top_k, std::abs(value));
      }
      out.top.reserve(local.size());
      while (!local.empty()) {
        out.top.push_back(local.top());
        local.pop();
      }
    }
    for (const BatchResult& batch : chunk) {
      re.merge(batch.re);
      im.merge(batch.im);
      non_finite += batch.non_finite;
      nonzero += batch.nonzero;
      for (double v : batch.top) keep_top(heap, top_k, v);
    }
    done += count;
    if (done == next_checkpoint) {
      checkpoints.emplace_back(re.mean, im.mean);
      checkpoint_se.push_back(std::hypot(re.std_error(), im.std_error()));
      next_checkpoint *= 2;
    }
  }

  ComplexEstimate out;
  for (McEstimate* part : {&out.re, &out.im}) {
    part->n_samples = config.total_samples();
    part->seed = config.seed;
  }
  out.re.value = re.mean;
  out.re.std_error = re.std_error();
  out.im.value = im.mean;
  out.im.std_error = im.std_error();
  for (const auto& c : checkpoints) {
    out.re.checkpoints.push_back(c.real());
    out.im.checkpoints.push_back(c.imag());
  }

  std::string reason;
  if (non_finite > 0) {
    reason = std::to_string(non_finite) + " non-finite integrand values";
  }
  for (std::size_t k = 1; k < checkpoints.size() && reason.empty(); ++k) {
    // Successive means differ by half the gap between disjoint halves, whose
    // noise is about the standard error at the later checkpoint.
    const double step = std::abs(checkpoints[k] - checkpoints[k - 1]);
    const double scale = std::abs(checkpoints[k]);
    if (step >= config.cauchy_tolerance * scale && step > 4.0 * checkpoint_se[k]) {
      reason = "running mean drifts between checkpoints " + std::to_string(k) + " and " + std::to_string(k + 1);
    }
  }
  const double xi = hill_xi(heap, nonzero);
  if (reason.empty() && xi > config.tail_threshold) {
    reason = "weighted values have an infinite-mean tail (Hill index " + std::to_string(xi) + ")";
  }
  for (McEstimate* part : {&out.re, &out.im}) {
    part->tail_xi = xi;
    part->diverged = !reason.empty();
    part->divergence_reason = reason;
  }
  return out;
}

Proposal make_proposal(std::size_t n, const SamplingConfig& config) { return Proposal(n, config.scale, config.x_center); }

std::uint64_t hash_point(TubeView z, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (std::size_t j = 0; j < z.dim(); ++j) {
    h = derive_seed(h, std::bit_cast<std::uint64_t>(z.re[j]));
    h = derive_seed(h, std::bit_cast<std::uint64_t>(z.im[j]));
  }
  return h;
}

McEstimate root_of(const McEstimate& integral, double power) {
  McEstimate out = integral;
  if (integral.value > 0.0) {
    out.value = std::pow(integral.value, 1.0 / power);
    out.std_error = out.value / power * integral.std_error / integral.value;
  } else {
    // an all-zero integrand has exact norm 0; noise below zero clamps there
    out.value = 0.0;
    out.std_error = integral.std_error > 0.0 ? std::pow(integral.std_error, 1.0 / power) : 0.0;
  }
  out.checkpoints.clear();
  for (double c : integral.checkpoints) out.checkpoints.push_back(c > 0.0 ? std::pow(c, 1.0 / power) : 0.0);
  return out;
}

double weight_power(double g, double exponent) { return exponent == 0.0 ? 1.0 : std::pow(g, exponent); }

}  // namespace

std::size_t SamplingConfig::first_checkpoint() const {
  const std::size_t batches = std::max<std::size_t>(1, (base_samples + batch_size - 1) / batch_size);
  return batches * batch_size;
}

std::size_t SamplingConfig::total_samples() const { return first_checkpoint() << doublings; }

void SamplingConfig::validate() const {
  if (batch_size < 1) throw DomainError("batch size must be at least 1");
  if (base_samples < 1) throw DomainError("base sample count must be at least 1");
  if (doublings < 0 || doublings > 20) throw DomainError("doublings must lie in [0, 20]");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("proposal scale must be positive");
  if (!(cauchy_tolerance > 0.0)) throw DomainError("Cauchy tolerance must be positive");
  if (!(tail_threshold > 0.0)) throw DomainError("tail threshold must be positive");
  if (inner_factor < 1) throw DomainError("inner factor must be at least 1");
  if (pair_samples < 2) throw DomainError("pair samples must be at least 2");
  if (image_samples < 1) throw DomainError("image sample count must be at least 1");
}

SamplingConfig SamplingConfig::derived(std::uint64_t stream) const {
  SamplingConfig out = *this;
  out.seed = derive_seed(seed, stream + 0x1000);
  return out;
}

McEstimate merge(const McEstimate& lhs, const McEstimate& rhs) {
  McEstimate out;
  const double n1 = static_cast<double>(lhs.n_samples);
  const double n2 = static_cast<double>(rhs.n_samples);
  const double total = n1 + n2;
  if (total == 0.0) return lhs;
  out.value = (n1 * lhs.value + n2 * rhs.value) / total;
  out.std_error = std::sqrt(n1 * n1 * lhs.std_error * lhs.std_error + n2 * n2 * rhs.std_error * rhs.std_error) / total;
  out.n_samples = lhs.n_samples + rhs.n_samples;
  out.seed = lhs.seed;
  out.diverged = lhs.diverged || rhs.diverged;
  out.divergence_reason = lhs.diverged ? lhs.divergence_reason : rhs.divergence_reason;
  out.tail_xi = std::max(lhs.tail_xi, rhs.tail_xi);
  out.inner_samples = lhs.inner_samples;
  return out;
}

double ComplexEstimate::std_error() const { return std::hypot(re.std_error, im.std_error); }

ComplexEstimate product(const ComplexEstimate& lhs, const ComplexEstimate& rhs) {
  const std::complex<double> a = lhs.value();
  const std::complex<double> b = rhs.value();
  ComplexEstimate out;
  out.re = product(lhs.re, rhs.re);
  out.im = product(lhs.im, rhs.im);
  const std::complex<double> v = a * b;
  out.re.value = v.real();
  out.im.value = v.imag();
  // d(ab) = b·da + a·db with independent real and imaginary noise
  const double sa_re = lhs.re.std_error, sa_im = lhs.im.std_error;
  const double sb_re = rhs.re.std_error, sb_im = rhs.im.std_error;
  out.re.std_error = std::sqrt(std::pow(b.real() * sa_re, 2) + std::pow(b.imag() * sa_im, 2) +
                               std::pow(a.real() * sb_re, 2) + std::pow(a.imag() * sb_im, 2));
  out.im.std_error = std::sqrt(std::pow(b.imag() * sa_re, 2) + std::pow(b.real() * sa_im, 2) +
                               std::pow(a.imag() * sb_re, 2) + std::pow(a.real() * sb_im, 2));
  return out;
}

McEstimate product(const McEstimate& lhs, const McEstimate& rhs) {
  McEstimate out;
  out.value = lhs.value * rhs.value;
  out.std_error = std::hypot(rhs.value * lhs.std_error, lhs.value * rhs.std_error);
  out.n_samples = lhs.n_samples + rhs.n_samples;
  out.seed = lhs.seed;
  out.diverged = lhs.diverged || rhs.diverged;
  out.divergence_reason = lhs.diverged ? lhs.divergence_reason : rhs.divergence_reason;
  out.tail_xi = std::max(lhs.tail_xi, rhs.tail_xi);
  out.inner_samples = std::max(lhs.inner_samples, rhs.inner_samples);
  return out;
}

McEstimate scaled(const McEstimate& est, double factor) {
  McEstimate out = est;
  out.value *= factor;
  out.std_error *= std::abs(factor);
  for (double& c : out.checkpoints) c *= factor;
  return out;
}

bool agree(const McEstimate& a, const McEstimate& b, double k) {
  return std::abs(a.value - b.value) <= k * std::hypot(a.std_error, b.std_error);
}

bool agree(const ComplexEstimate& a, const ComplexEstimate& b, double k) {
  return std::abs(a.value() - b.value()) <= k * std::hypot(a.std_error(), b.std_error());
}

McEstimate integrate_tube(const RealIntegrand& integrand, std::size_t n, const SamplingConfig& config) {
  const std::vector<Proposal> proposals{make_proposal(n, config)};
  const SpanIntegrand fn = [&](std::span<const TubeView> z) { return std::complex<double>(integrand(z[0]), 0.0); };
  return run_engine(fn, 1, proposals, config).re;
}

ComplexEstimate integrate_tube_complex(const PointIntegrand& integrand, std::size_t n, const SamplingConfig& config) {
  const std::vector<Proposal> proposals{make_proposal(n, config)};
  const SpanIntegrand fn = [&](std::span<const TubeView> z) { return integrand(z[0]); };
  return run_engine(fn, 1, proposals, config);
}

ComplexEstimate integrate_tube_pair(const PairIntegrand& integrand, std::size_t n, const SamplingConfig& config) {
  const std::vector<Proposal> proposals{make_proposal(n, config), make_proposal(n, config)};
  const SpanIntegrand fn = [&](std::span<const TubeView> z) { return integrand(z[0], z[1]); };
  return run_engine(fn, 2, proposals, config);
}

bool TruncatedBox::contains(TubeView z) const {
  double x2 = 0.0;
  for (double x : z.re) x2 += x * x;
  return x2 < x_radius * x_radius && z.im.back() < y_top && g_of(z) < g_max;
}

FactorFn FactorFn::power(std::optional<Rational> l, Rational s, double height) {
  if (!(height > 0.0) || !std::isfinite(height)) throw DomainError("shift height must be positive");
  FactorFn fn;
  fn.kind_ = Kind::power;
  fn.l_ = std::move(l);
  fn.s_ = std::move(s);
  fn.l_value_ = fn.l_ ? to_double(*fn.l_) : 0.0;
  fn.s_value_ = to_double(fn.s_);
  fn.height_ = height;
  return fn;
}

FactorFn FactorFn::zero() { return FactorFn{}; }

FactorFn FactorFn::box(TruncatedBox box) {
  FactorFn fn;
  fn.kind_ = Kind::box;
  fn.box_ = box;
  return fn;
}

FactorFn FactorFn::custom(PointIntegrand fn, std::string label) {
  FactorFn out;
  out.kind_ = Kind::custom;
  out.fn_ = std::move(fn);
  out.label_ = std::move(label);
  return out;
}

std::complex<double> FactorFn::operator()(TubeView z) const {
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::power: {
      const double numerator = weight_power(g_of(z), l_value_);
      return numerator * cpow(q_shifted(z, height_), -s_value_);
    }
    case Kind::box:
      return box_.contains(z) ? 1.0 : 0.0;
    case Kind::custom:
      return fn_(z);
  }
  return 0.0;
}

std::string FactorFn::describe() const {
  switch (kind_) {
    case Kind::zero:
      return "zero";
    case Kind::power:
      return "g^" + (l_ ? to_wire(*l_) : std::string("none")) + "/Q(z+iR)^" + to_wire(s_) +
             " R=" + std::to_string(height_);
    case Kind::box:
      return "box";
    case Kind::custom:
      return label_;
  }
  return "";
}

Rational MixedNormSpec::exponent(Factor f) const {
  return which == NormSide::source ? spaces.p[index(f)] : spaces.q[index(f)];
}

Rational MixedNormSpec::weight(Factor f) const {
  return which == NormSide::source ? spaces.alpha[index(f)] : spaces.beta[index(f)];
}

McEstimate factor_norm(const FactorFn& fn, const Rational& p, const Rational& alpha, std::size_t n,
                       const SamplingConfig& config) {
  if (p < 1) throw DomainError("norm exponent must be at least 1");
  const double pd = to_double(p);
  const double ad = to_double(alpha);
  const McEstimate integral = integrate_tube(
      [&](TubeView z) {
        const double modulus = std::abs(fn(z));
        if (modulus == 0.0) return 0.0;
        return std::pow(modulus, pd) * weight_power(g_of(z), ad);
      },
      n, config);
  return root_of(integral, pd);
}

McEstimate mixed_norm_separable(const FactorFn& g, const FactorFn& h, const MixedNormSpec& spec, std::size_t n,
                                const SamplingConfig& config) {
  const McEstimate first =
      factor_norm(g, spec.exponent(Factor::first), spec.weight(Factor::first), n, config.derived(1));
  const McEstimate second =
      factor_norm(h, spec.exponent(Factor::second), spec.weight(Factor::second), n, config.derived(2));
  McEstimate out = product(first, second);
  out.seed = config.seed;
  return out;
}

McEstimate mixed_norm(const PairIntegrand& f, const MixedNormSpec& spec, std::size_t n, const SamplingConfig& config) {
  config.validate();
  const double p1 = to_double(spec.exponent(Factor::first));
  const double p2 = to_double(spec.exponent(Factor::second));
  const double a1 = to_double(spec.weight(Factor::first));
  const double a2 = to_double(spec.weight(Factor::second));
  if (p1 < 1.0 || p2 < 1.0) throw DomainError("norm exponents must be at least 1");
  const std::size_t inner = config.inner_factor * config.total_samples();
  const Proposal inner_proposal = make_proposal(n, config);
  const SamplingConfig outer = config.derived(3);

  const McEstimate integral = integrate_tube(
      [&](TubeView w) {
        std::mt19937_64 rng(hash_point(w, config.seed));
        std::vector<double> re(n), im(n);
        const TubeView z{re, im};
        double sum = 0.0;
        for (std::size_t k = 0; k < inner; ++k) {
          const double weight = inner_proposal.draw(rng, re, im);
          const double modulus = std::abs(f(z, w));
          if (modulus != 0.0) sum += weight * std::pow(modulus, p1) * weight_power(g_of(z), a1);
        }
        const double inner_integral = sum / static_cast<double>(inner);
        if (inner_integral <= 0.0) return 0.0;
        return std::pow(inner_integral, p2 / p1) * weight_power(g_of(w), a2);
      },
      n, outer);
  McEstimate out = root_of(integral, p2);
  out.seed = config.seed;
  out.inner_samples = inner;
  return out;
}

ComplexEstimate apply_operator_factor(const FRParams& params, Factor factor, const FactorFn& fn, const TubePoint& at,
                                      const SamplingConfig& config) {
  params.validate();
  if (at.dim() != static_cast<std::size_t>(params.n)) throw DomainError("probe dimension differs from n");
  const FactorKernel kernel(params, factor);
  const TubeView z = view(at);
  ComplexEstimate out = integrate_tube_complex(
      [&](TubeView u) {
        const std::complex<double> value = fn(u);
        if (value == 0.0) return std::complex<double>(0.0);
        return kernel.holomorphic(z, u) * value;
      },
      static_cast<std::size_t>(params.n), config);
  const double prefactor = weight_power(g_of(z), to_double(params.a[index(factor)]));
  out.re = scaled(out.re, prefactor);
  out.im = scaled(out.im, prefactor);
  return out;
}

ComplexEstimate apply_operator_T(const FRParams& params, const SeparableFn& f, const TubePoint& z, const TubePoint& w,
                                 const SamplingConfig& config) {
  const ComplexEstimate first = apply_operator_factor(params, Factor::first, f.first, z, config.derived(11));
  const ComplexEstimate second = apply_operator_factor(params, Factor::second, f.second, w, config.derived(12));
  ComplexEstimate out = product(first, second);
  out.re.seed = out.im.seed = config.seed;
  return out;
}

McEstimate image_norm_factor(const FRParams& params, Factor factor, const FactorFn& fn, const Rational& q,
                             const Rational& beta, const SamplingConfig& config) {
  params.validate();
  config.validate();
  if (q < 1) throw DomainError("norm exponent must be at least 1");
  const std::size_t n = static_cast<std::size_t>(params.n);
  const FactorKernel kernel(params, factor);
  const double qd = to_double(q);
  const double outer_weight = to_double(q * params.a[index(factor)] + beta);
  const bool pairwise = q == 2;
  const std::size_t m = config.pair_samples;
  const Proposal inner_proposal = make_proposal(n, config);
  SamplingConfig outer = config.derived(4);
  outer.base_samples = config.image_samples;
  outer.batch_size = std::min(config.batch_size, std::max<std::size_t>(config.image_samples / 8, 1));

  const McEstimate integral = integrate_tube(
      [&](TubeView z) {
        std::mt19937_64 rng(hash_point(z, config.seed));
        std::vector<double> re(n), im(n);
        const TubeView u{re, im};
        // Defensive mixture: half the draws follow f's scale, half sit on the kernel
        // peak around z, whose x-extent grows with Im z.
        const Proposal local(n, z.im[n - 1], std::vector<double>(z.re.begin(), z.re.end()));
        std::complex<double> sum = 0.0;
        double sum_sq = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          if (k % 2 == 0) {
            inner_proposal.draw(rng, re, im);
          } else {
            local.draw(rng, re, im);
          }
          const double weight = 2.0 / (inner_proposal.density(re, im) + local.density(re, im));
          const std::complex<double> value = fn(u);
          if (value == 0.0) continue;
          const std::complex<double> x = weight * kernel.holomorphic(z, u) * value;
          sum += x;
          sum_sq += std::norm(x);
        }
        const double md = static_cast<double>(m);
        double power;
        if (pairwise) {
          power = (std::norm(sum) - sum_sq) / (md * (md - 1.0));
        } else {
          power = std::pow(std::abs(sum) / md, qd);
        }
        return power * weight_power(g_of(z), outer_weight);
      },
      n, outer);
  McEstimate out = root_of(integral, qd);
  // The U-statistic is signed per point; a negative total means the inner tail swamped it.
  if (pairwise && integral.value < 0.0 && !out.diverged) {
    out.diverged = true;
    out.divergence_reason = "negative pairwise estimate of a squared norm";
  }
  out.seed = config.seed;
  out.inner_samples = m;
  return out;
}

}  // namespace frcone
