#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conditions.hpp"
#include "errors.hpp"

namespace frcone {

namespace {

SamplingConfig grid_config(const SamplingConfig& base, std::uint64_t stream, double height) {
  SamplingConfig cfg = base.derived(stream);
  cfg.scale = base.scale * height;
  return cfg;
}

SeparableFn test_function(const TestFnSpec& spec, double height) {
  return {FactorFn::power(spec.l[0], spec.s[0], height), FactorFn::power(spec.l[1], spec.s[1], height)};
}

void finish_fit(ScalingReport& report) {
  const auto [slope, intercept] = fit_line(report.log_g_R, report.log_norms);
  report.fitted_slope = slope;
  report.intercept = intercept;
  report.residual = 0.0;
  for (std::size_t k = 0; k < report.log_g_R.size(); ++k) {
    const double fit = slope * report.log_g_R[k] + intercept;
    report.residual = std::max(report.residual, std::abs(report.log_norms[k] - fit));
  }
  report.diverged = std::any_of(report.estimates.begin(), report.estimates.end(),
                                [](const McEstimate& e) { return e.diverged; });
}

ScalingReport empty_report(std::string quantity, const std::vector<double>& grid, std::uint64_t seed) {
  ScalingReport report;
  report.quantity = std::move(quantity);
  report.R_grid = grid;
  report.seed = seed;
  for (double r : grid) report.log_g_R.push_back(2.0 * std::log(r));
  return report;
}

void require_membership(const TestFnSpec& spec, const FRParams& params, const SpaceSpec& spaces) {
  std::string failed;
  for (Factor f : {Factor::first, Factor::second}) {
    for (const Clause& c : membership_conditions(spec, params, spaces, f)) {
      if (c.holds) continue;
      if (!failed.empty()) failed += "; ";
      failed += c.text;
    }
  }
  if (!failed.empty()) throw MembershipError("test function outside its membership system: " + failed);
}

Rational predicted(const std::vector<PowerLawPrediction>& parts) {
  Rational total = 0;
  for (const auto& p : parts) {
    if (!p.valid) throw MembershipError("no power law: " + p.reason);
    total += *p.exponent;
  }
  return total;
}

std::vector<McEstimate> source_norms(const TestFnSpec& spec, const SpaceSpec& spaces, const std::vector<double>& grid,
                                     const SamplingConfig& config) {
  std::vector<McEstimate> out;
  const MixedNormSpec norm{spaces, NormSide::source};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const SeparableFn f = test_function(spec, grid[k]);
    out.push_back(mixed_norm_separable(f.first, f.second, norm, static_cast<std::size_t>(spec.n),
                                       grid_config(config, 1000 + k, grid[k])));
  }
  return out;
}

std::vector<McEstimate> image_norms(const TestFnSpec& spec, const FRParams& params, const SpaceSpec& spaces,
                                    const std::vector<double>& grid, const SamplingConfig& config) {
  std::vector<McEstimate> out;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const SeparableFn f = test_function(spec, grid[k]);
    const SamplingConfig cfg = grid_config(config, 2000 + k, grid[k]);
    const McEstimate first =
        image_norm_factor(params, Factor::first, f.first, spaces.q[0], spaces.beta[0], cfg.derived(1));
    const McEstimate second =
        image_norm_factor(params, Factor::second, f.second, spaces.q[1], spaces.beta[1], cfg.derived(2));
    McEstimate norm = product(first, second);
    norm.seed = cfg.seed;
    out.push_back(norm);
  }
  return out;
}

void fill_logs(ScalingReport& report, std::vector<McEstimate> estimates) {
  report.estimates = std::move(estimates);
  for (const McEstimate& e : report.estimates) report.log_norms.push_back(std::log(e.value));
}

McEstimate ratio_of(const McEstimate& num, const McEstimate& den) {
  McEstimate out = num;
  out.value = num.value / den.value;
  out.std_error = std::abs(out.value) * std::hypot(num.std_error / num.value, den.std_error / den.value);
  out.n_samples = num.n_samples + den.n_samples;
  out.diverged = num.diverged || den.diverged;
  if (out.divergence_reason.empty()) out.divergence_reason = den.divergence_reason;
  out.tail_xi = std::max(num.tail_xi, den.tail_xi);
  out.checkpoints.clear();
  return out;
}

}  // namespace

std::string ScalingReport::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "quantity,R,log_g_R,value,std_error,log_norm,n_samples,seed,diverged\n";
  for (std::size_t k = 0; k < R_grid.size(); ++k) {
    const McEstimate& e = estimates[k];
    out << quantity << ',' << R_grid[k] << ',' << log_g_R[k] << ',' << e.value << ',' << e.std_error << ','
        << log_norms[k] << ',' << e.n_samples << ',' << e.seed << ',' << (e.diverged ? "true" : "false") << '\n';
  }
  return out.str();
}

void validate_grid(const std::vector<double>& grid) {
  if (grid.size() < 4) throw DomainError("R grid needs at least 4 points");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] > 0.0) || !std::isfinite(grid[k])) throw DomainError("R grid entries must be positive");
    if (k > 0 && !(grid[k] > grid[k - 1])) throw DomainError("R grid must be strictly increasing");
  }
}

std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("line fit needs two or more points");
  const double m = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= m;
  my /= m;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  if (sxx == 0.0) throw DomainError("line fit needs distinct abscissae");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

ScalingPair run_scaling(const TestFnSpec& spec, const FRParams& params, const SpaceSpec& spaces,
                        const std::vector<double>& R_grid, const SamplingConfig& config) {
  spec.validate();
  params.validate();
  spaces.validate();
  validate_grid(R_grid);
  config.validate();
  require_membership(spec, params, spaces);

  ScalingPair out;
  out.source = empty_report("source", R_grid, config.seed);
  out.source.predicted_slope = predicted({testfn_norm_exponent(spec, spaces, Factor::first),
                                          testfn_norm_exponent(spec, spaces, Factor::second)});
  fill_logs(out.source, source_norms(spec, spaces, R_grid, config));
  finish_fit(out.source);

  out.image = empty_report("image", R_grid, config.seed);
  out.image.predicted_slope = predicted({image_norm_exponent(spec, params, spaces, Factor::first),
                                         image_norm_exponent(spec, params, spaces, Factor::second)});
  fill_logs(out.image, image_norms(spec, params, spaces, R_grid, config));
  finish_fit(out.image);
  return out;
}

ScalingReport run_blowup_probe(const FRParams& params, const SpaceSpec& spaces, const BlowupDirection& direction,
                               const TestFnSpec& spec, const std::vector<double>& R_grid,
                               const SamplingConfig& config) {
  params.validate();
  spaces.validate();
  spec.validate();
  validate_grid(R_grid);
  config.validate();
  for (Factor f : {Factor::first, Factor::second}) {
    if (params.c[index(f)] != thm1_c_value(params, spaces, f)) {
      throw DomainError("blow-up probe needs base parameters on the c-equation");
    }
  }
  FRParams perturbed = params;
  perturbed.c[index(direction.factor)] += direction.epsilon;
  require_membership(spec, perturbed, spaces);

  std::vector<PowerLawPrediction> parts;
  Rational slope = 0;
  for (Factor f : {Factor::first, Factor::second}) {
    const PowerLawPrediction image = image_norm_exponent(spec, perturbed, spaces, f);
    const PowerLawPrediction source = testfn_norm_exponent(spec, spaces, f);
    slope += predicted({image}) - predicted({source});
  }

  const std::vector<McEstimate> source = source_norms(spec, spaces, R_grid, config);
  const std::vector<McEstimate> image = image_norms(spec, perturbed, spaces, R_grid, config);
  ScalingReport report = empty_report("ratio", R_grid, config.seed);
  report.predicted_slope = slope;
  std::vector<McEstimate> ratios;
  for (std::size_t k = 0; k < R_grid.size(); ++k) ratios.push_back(ratio_of(image[k], source[k]));
  fill_logs(report, std::move(ratios));
  finish_fit(report);
  return report;
}

DualityReport run_duality(const FRParams& params, const SpaceSpec& spaces, const SeparableFn& f, const SeparableFn& g,
                          const SamplingConfig& config) {
  params.validate();
  spaces.validate();
  config.validate();
  const AdjointResult adjoint = adjoint_params(params, spaces);
  const std::size_t n = static_cast<std::size_t>(params.n);

  ComplexEstimate lhs, rhs;
  for (Factor factor : {Factor::first, Factor::second}) {
    const std::size_t i = index(factor);
    const FactorKernel kernel(params, factor);
    const FactorKernel adjoint_kernel(adjoint.params, factor);
    const double beta_a = to_double(spaces.beta[i] + params.a[i]);
    const double alpha_astar = to_double(spaces.alpha[i] + adjoint.params.a[i]);
    const FactorFn& fi = f[factor];
    const FactorFn& gi = g[factor];

    // ∫ g(u) conj(T f(u)) dv_β(u), as a double integral over (u, ξ)
    const ComplexEstimate forward = integrate_tube_pair(
        [&](TubeView u, TubeView xi) {
          const std::complex<double> gu = gi(u);
          if (gu == 0.0) return std::complex<double>(0.0);
          const std::complex<double> fx = fi(xi);
          if (fx == 0.0) return std::complex<double>(0.0);
          return gu * std::pow(g_of(u), beta_a) * std::conj(kernel.holomorphic(u, xi) * fx);
        },
        n, config.derived(300 + i));
    // ∫ T*g(z) conj(f(z)) dv_α(z), as a double integral over (z, u)
    const ComplexEstimate adjoint_side = integrate_tube_pair(
        [&](TubeView z, TubeView u) {
          const std::complex<double> fz = fi(z);
          if (fz == 0.0) return std::complex<double>(0.0);
          const std::complex<double> gu = gi(u);
          if (gu == 0.0) return std::complex<double>(0.0);
          return std::conj(fz) * std::pow(g_of(z), alpha_astar) * adjoint_kernel.holomorphic(z, u) * gu;
        },
        n, config.derived(400 + i));
    if (factor == Factor::first) {
      lhs = forward;
      rhs = adjoint_side;
    } else {
      lhs = product(lhs, forward);
      rhs = product(rhs, adjoint_side);
    }
  }
  DualityReport report;
  report.probes = config.total_samples();
  report.lhs = lhs;
  report.rhs = rhs;
  report.agree = !lhs.diverged() && !rhs.diverged() && agree(lhs, rhs, 3.0);
  return report;
}

Lemma21Report verify_lemma21(int n, const Rational& l, const Rational& r, const Rational& s,
                             const std::vector<std::pair<TubePoint, TubePoint>>& probes,
                             const SamplingConfig& config) {
  config.validate();
  Lemma21Report report;
  report.prediction = lemma21_predict(n, l, r, s);
  if (probes.size() < 3) throw DomainError("constancy check needs at least 3 probe pairs");
  std::vector<std::complex<double>> q_values;
  for (const auto& [z, xi] : probes) {
    if (z.dim() != static_cast<std::size_t>(n) || xi.dim() != static_cast<std::size_t>(n)) {
      throw DomainError("probe dimension differs from n");
    }
    q_values.push_back(q_conj_difference(view(z), view(xi)));
  }
  bool distinct = false;
  for (std::size_t k = 1; k < q_values.size(); ++k) distinct = distinct || q_values[k] != q_values[0];
  if (!distinct) throw DomainError("constancy check needs two distinct values of Q(z - conj xi)");

  const double ld = to_double(l), rd = to_double(r), sd = to_double(s);
  const double exponent = to_double(report.prediction.formal_exponent);
  report.probes = probes;
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const TubeView z = view(probes[k].first);
    const TubeView xi = view(probes[k].second);
    std::vector<double> sum_y(n), center(n);
    for (int j = 0; j < n; ++j) {
      sum_y[j] = z.im[j] + xi.im[j];
      center[j] = 0.5 * (z.re[j] + xi.re[j]);
    }
    SamplingConfig cfg = config.derived(500 + k);
    cfg.scale = config.scale * 0.5 * std::sqrt(g_form(sum_y));
    if (config.x_center.empty()) cfg.x_center = center;
    const ComplexEstimate est = integrate_tube_complex(
        [&](TubeView u) {
          const double weight = ld == 0.0 ? 1.0 : std::pow(g_of(u), ld);
          return weight * cpow(q_conj_difference(z, u), -rd) * cpow(q_conj_difference(u, xi), -sd);
        },
        static_cast<std::size_t>(n), cfg);
    const std::complex<double> scale = cpow(q_values[k], exponent);
    report.integrals.push_back(est);
    report.ratios.push_back(est.value() / scale);
    report.ratio_std_errors.push_back(est.std_error() / std::abs(scale));
    report.diverged = report.diverged || est.diverged();
  }
  report.constant = !report.diverged;
  for (std::size_t a = 0; a < probes.size() && !report.offending; ++a) {
    for (std::size_t b = a + 1; b < probes.size(); ++b) {
      const double gap = std::abs(report.ratios[a] - report.ratios[b]);
      if (gap > 3.0 * std::hypot(report.ratio_std_errors[a], report.ratio_std_errors[b])) {
        report.offending = std::make_pair(a, b);
        report.constant = false;
        break;
      }
    }
  }
  return report;
}

McEstimate remark21_integral(int n, const Rational& s, const Rational& l, double height, const SamplingConfig& config) {
  if (n < 2) throw DomainError("dimension n must be at least 2");
  if (!(height > 0.0)) throw DomainError("shift height must be positive");
  SamplingConfig cfg = config;
  cfg.scale = config.scale * height;
  const double sd = to_double(s), ld = to_double(l);
  return integrate_tube(
      [&](TubeView u) {
        const double weight = ld == 0.0 ? 1.0 : std::pow(g_of(u), ld);
        return weight * std::pow(std::abs(q_shifted(u, height)), -sd);
      },
      static_cast<std::size_t>(n), cfg);
}

}  // namespace frcone
