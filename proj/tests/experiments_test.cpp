#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "experiments.hpp"
#include "oracles.hpp"

using namespace frcone;

namespace {

FRParams worked_params() {
  FRParams p;
  p.n = 2;
  p.a = {1, 1};
  p.b = {1, 1};
  p.c = {4, 4};
  return p;
}

SpaceSpec worked_spaces() {
  SpaceSpec s;
  s.p = {2, 2};
  s.q = {2, 2};
  s.alpha = {0, 0};
  s.beta = {0, 0};
  return s;
}

TestFnSpec worked_testfn() {
  TestFnSpec spec;
  spec.n = 2;
  spec.l = {Rational(1), Rational(1)};
  spec.s = {3, 3};
  return spec;
}

TubePoint pt(std::vector<double> x, std::vector<double> y) { return TubePoint::from_parts(x, y); }

}  // namespace

TEST_CASE("grid validation and line fit") {
  CHECK_THROWS_AS(validate_grid({1, 2, 4}), DomainError);
  CHECK_THROWS_AS(validate_grid({1, 2, 2, 4}), DomainError);
  CHECK_THROWS_AS(validate_grid({0, 1, 2, 4}), DomainError);
  CHECK_NOTHROW(validate_grid({1, 2, 4, 8}));
  SamplingConfig cfg;
  cfg.seed = 1;
  CHECK_THROWS_AS(run_scaling(worked_testfn(), worked_params(), worked_spaces(), {1, 2, 4}, cfg), DomainError);

  const auto [slope, intercept] = fit_line({0, 1, 2, 3}, {1, -1, -3, -5});
  CHECK(slope == doctest::Approx(-2.0));
  CHECK(intercept == doctest::Approx(1.0));
}

TEST_CASE("scaling refuses test functions outside their membership system") {
  TestFnSpec spec = worked_testfn();
  spec.s = {Rational(3, 2), 3};
  SamplingConfig cfg;
  cfg.seed = 1;
  CHECK_THROWS_AS(run_scaling(spec, worked_params(), worked_spaces(), {1, 2, 4, 8}, cfg), MembershipError);
}

TEST_CASE("source scaling slope on the worked case") {
  // the source norms are cheap, so this runs the full grid
  SamplingConfig cfg;
  cfg.seed = 8080;
  cfg.base_samples = 1 << 14;
  cfg.image_samples = 256;
  cfg.doublings = 2;
  const ScalingPair pair = run_scaling(worked_testfn(), worked_params(), worked_spaces(), {1, 2, 4, 8}, cfg);
  CHECK(pair.source.predicted_slope == -2);
  CHECK(pair.image.predicted_slope == -2);
  CHECK(std::abs(pair.source.fitted_slope - -2.0) < 0.04);
  CHECK(pair.source.log_g_R[1] == doctest::Approx(2.0 * std::log(2.0)));
  CHECK(pair.source.estimates.size() == 4);
  CHECK(pair.image.estimates.size() == 4);
  CHECK_FALSE(pair.image.diverged);
  const std::string csv = pair.source.to_csv();
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("blow-up probe requires base parameters on the c-equation") {
  FRParams off = worked_params();
  off.c[0] = Rational(9, 2);
  SamplingConfig cfg;
  cfg.seed = 1;
  CHECK_THROWS_AS(run_blowup_probe(off, worked_spaces(), {Factor::first, Rational(1, 2)}, worked_testfn(), {1, 2, 4, 8},
                                   cfg),
                  DomainError);
}

TEST_CASE("duality") {
  SamplingConfig cfg;
  cfg.seed = 777;
  cfg.base_samples = 1 << 14;

  SUBCASE("zero pairing function") {
    const SeparableFn f{FactorFn::power(Rational(1), 3, 1.0), FactorFn::power(Rational(1), 3, 1.0)};
    const SeparableFn g{FactorFn::zero(), FactorFn::zero()};
    const DualityReport r = run_duality(worked_params(), worked_spaces(), f, g, cfg);
    CHECK(r.lhs.value() == std::complex<double>(0.0));
    CHECK(r.rhs.value() == std::complex<double>(0.0));
    CHECK(r.agree);
  }

  SUBCASE("constant kernel on boxes reduces to the product of integrals") {
    FRParams unit;
    unit.n = 2;
    unit.a = {0, 0};
    unit.b = {0, 0};
    unit.c = {0, 0};
    const TruncatedBox box_f{1.0, 2.0, 1.0};
    const TruncatedBox box_g{0.5, 3.0, 2.0};
    const SeparableFn f{FactorFn::box(box_f), FactorFn::box(box_f)};
    const SeparableFn g{FactorFn::box(box_g), FactorFn::box(box_g)};
    const double vf = oracle::box_volume(2, box_f), vg = oracle::box_volume(2, box_g);
    const double exact = vf * vg * vf * vg;
    // pairs of sparse box hits are noisy, so this subcase needs far more samples
    cfg.base_samples = 1 << 17;
    const DualityReport r = run_duality(unit, worked_spaces(), f, g, cfg);
    CHECK(std::abs(r.lhs.value().real() - exact) <= 3.0 * r.lhs.std_error());
    CHECK(std::abs(r.rhs.value().real() - exact) <= 3.0 * r.rhs.std_error());
    CHECK(r.agree);
  }
}

TEST_CASE("lemma constancy: probe checks and translation covariance") {
  SamplingConfig cfg;
  cfg.seed = 4242;
  cfg.base_samples = 1 << 15;
  const std::vector<std::pair<TubePoint, TubePoint>> same = {
      {pt({0, 0}, {0, 1}), pt({0, 0}, {0, 1})}, {pt({0, 0}, {0, 1}), pt({0, 0}, {0, 1})},
      {pt({0, 0}, {0, 1}), pt({0, 0}, {0, 1})}};
  CHECK_THROWS_AS(verify_lemma21(2, 0, 2, 2, same, cfg), DomainError);
  CHECK_THROWS_AS(verify_lemma21(2, 0, 2, 2, {same[0], same[1]}, cfg), DomainError);

  const std::vector<std::pair<TubePoint, TubePoint>> probes = {
      {pt({0, 0}, {0, 1}), pt({0, 0}, {0, 1})},
      {pt({0, 0}, {0, 2}), pt({0, 0}, {0, 1})},
      {pt({1, 0}, {0, 1}), pt({0, 0}, {0, 3})}};
  const Lemma21Report base = verify_lemma21(2, 0, 2, 2, probes, cfg);
  CHECK(base.prediction.valid);
  CHECK_FALSE(base.diverged);
  CHECK(base.constant);

  std::vector<std::pair<TubePoint, TubePoint>> moved;
  const std::vector<double> shift = {2.5, -7.0};
  auto shifted = [&](const TubePoint& p) {
    std::vector<double> re(p.re().begin(), p.re().end());
    for (std::size_t j = 0; j < 2; ++j) re[j] += shift[j];
    return TubePoint(re, p.im());
  };
  for (const auto& [z, xi] : probes) moved.emplace_back(shifted(z), shifted(xi));
  SamplingConfig other = cfg;
  other.seed = 4343;
  const Lemma21Report translated = verify_lemma21(2, 0, 2, 2, moved, other);
  CHECK(translated.constant);
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const double diff = std::abs(translated.ratios[k] - base.ratios[k]);
    CHECK(diff <= 3.0 * std::hypot(translated.ratio_std_errors[k], base.ratio_std_errors[k]));
  }

  const Lemma21Report bad = verify_lemma21(2, 0, 1, 1, probes, cfg);
  CHECK_FALSE(bad.prediction.valid);
  CHECK(bad.diverged);
}
