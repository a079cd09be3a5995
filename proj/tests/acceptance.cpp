// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "experiments.hpp"
#include "serialize.hpp"
#include "witness.hpp"

using namespace frcone;

namespace {

using Clock = std::chrono::steady_clock;

FRParams params_of(RationalPair a, RationalPair b, RationalPair c, int n = 2) {
  FRParams p;
  p.n = n;
  p.a = a;
  p.b = b;
  p.c = c;
  return p;
}

SpaceSpec spaces_of(RationalPair p, RationalPair q, RationalPair alpha = {0, 0}, RationalPair beta = {0, 0}) {
  SpaceSpec s;
  s.p = p;
  s.q = q;
  s.alpha = alpha;
  s.beta = beta;
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

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

/// Outcome of one criterion; `numbers` holds every numeric output for the rerun check.
struct Outcome {
  bool pass = false;
  std::string detail;
  Json numbers;
};

Outcome remark_power_law() {
  SamplingConfig cfg;
  cfg.seed = 1001;
  cfg.base_samples = 1 << 18;
  const McEstimate j1 = remark21_integral(2, 4, 0, 1.0, cfg.derived(0));
  const McEstimate j2 = remark21_integral(2, 4, 0, 2.0, cfg.derived(1));
  const double ratio = j2.value / j1.value;
  const double se = ratio * std::hypot(j1.std_error / j1.value, j2.std_error / j2.value);
  const double worst_rel = std::max(j1.std_error / j1.value, j2.std_error / j2.value);
  const bool pass = !j1.diverged && !j2.diverged && std::abs(ratio - 1.0 / 16.0) <= 3.0 * se && worst_rel < 0.02 &&
                    j1.n_samples <= 10'000'000 && j2.n_samples <= 10'000'000;
  char buf[200];
  std::snprintf(buf, sizeof buf, "ratio %.5f +- %.5f (exact 0.0625), max stderr/value %.4f, samples %llu", ratio, se,
                worst_rel, static_cast<unsigned long long>(std::max(j1.n_samples, j2.n_samples)));
  return {pass, buf, Json{j1, j2}};
}

Outcome remark_divergence() {
  SamplingConfig cfg;
  cfg.seed = 1002;
  const McEstimate j = remark21_integral(2, 2, 0, 1.0, cfg);
  return {j.diverged, "diverged = " + std::string(j.diverged ? "true" : "false") + " (" + j.divergence_reason + ")",
          Json(j)};
}

Outcome lemma_constancy() {
  SamplingConfig cfg;
  cfg.seed = 1003;
  cfg.base_samples = 1 << 16;
  const std::vector<std::pair<TubePoint, TubePoint>> probes = {
      {pt({0, 0}, {0, 1}), pt({0, 0}, {0, 1})},
      {pt({0, 0}, {0, 2}), pt({0, 0}, {0, 1})},
      {pt({1, 0}, {0, 1}), pt({0, 0}, {0, 3})}};
  const Lemma21Report rep = verify_lemma21(2, 0, 2, 2, probes, cfg);
  std::string detail = "ratios";
  for (std::size_t k = 0; k < rep.ratios.size(); ++k) {
    char buf[80];
    std::snprintf(buf, sizeof buf, " %.4g%+.4gi (se %.2g)", rep.ratios[k].real(), rep.ratios[k].imag(),
                  rep.ratio_std_errors[k]);
    detail += buf;
  }
  return {rep.constant && !rep.diverged, detail, Json(rep)};
}

Outcome scaling_slopes() {
  SamplingConfig cfg;
  cfg.seed = 1004;
  cfg.base_samples = 1 << 14;
  const ScalingPair pair =
      run_scaling(worked_testfn(), params_of({1, 1}, {1, 1}, {4, 4}), spaces_of({2, 2}, {2, 2}), {1, 2, 4, 8}, cfg);
  const double ds = pair.source.fitted_slope - to_double(pair.source.predicted_slope);
  const double di = pair.image.fitted_slope - to_double(pair.image.predicted_slope);
  const bool pass = !pair.source.diverged && !pair.image.diverged && std::abs(ds) <= 0.04 && std::abs(di) <= 0.04;
  char buf[160];
  std::snprintf(buf, sizeof buf, "source %.4f (predicted %s), image %.4f (predicted %s)", pair.source.fitted_slope,
                to_wire(pair.source.predicted_slope).c_str(), pair.image.fitted_slope,
                to_wire(pair.image.predicted_slope).c_str());
  return {pass, buf, Json(pair)};
}

Outcome blowup_slopes() {
  SamplingConfig cfg;
  cfg.seed = 1005;
  cfg.base_samples = 1 << 14;
  const FRParams base = params_of({1, 1}, {1, 1}, {4, 4});
  const SpaceSpec spaces = spaces_of({2, 2}, {2, 2});
  const ScalingReport down = run_blowup_probe(base, spaces, {Factor::first, Rational(-1, 2)}, worked_testfn(),
                                              {1, 2, 4, 8}, cfg);
  const ScalingReport up =
      run_blowup_probe(base, spaces, {Factor::first, Rational(1, 2)}, worked_testfn(), {1, 2, 4, 8}, cfg);
  const bool pass = std::abs(down.fitted_slope - 0.5) <= 0.06 && std::abs(up.fitted_slope + 0.5) <= 0.06 &&
                    std::abs(down.fitted_slope + up.fitted_slope) <= 0.06;
  char buf[200];
  std::snprintf(buf, sizeof buf, "eps -1/2: %.4f (predicted %s), eps +1/2: %.4f (predicted %s), sum %.4f",
                down.fitted_slope, to_wire(down.predicted_slope).c_str(), up.fitted_slope,
                to_wire(up.predicted_slope).c_str(), down.fitted_slope + up.fitted_slope);
  return {pass, buf, Json{down, up}};
}

Outcome witness_suite() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1006);
  std::uniform_int_distribution<int> pick(0, 10);
  int solved = 0, verified = 0, rejected = 0, boundary = 0;
  Json numbers = Json::array();
  while (solved < 100) {
    const Rational p1 = 1 + Rational(1 + pick(rng), 5), p2 = 1 + Rational(1 + pick(rng), 4);
    const Rational q = std::max(p1, p2) + Rational(pick(rng), 3);
    const SpaceSpec sp = spaces_of({p1, p2}, {q, q + Rational(pick(rng), 2)},
                                   {Rational(pick(rng) - 4, 5), Rational(pick(rng), 4)},
                                   {Rational(pick(rng) - 4, 5), Rational(pick(rng), 3)});
    FRParams pr = params_of({Rational(pick(rng), 2), Rational(pick(rng) + 1, 3)},
                            {Rational(pick(rng), 3), Rational(pick(rng), 2)}, {0, 0}, 2 + pick(rng) % 2);
    for (Factor f : {Factor::first, Factor::second}) pr.c[index(f)] = thm1_c_value(pr, sp, f);
    if (!thm2_sufficient(pr, sp).holds) continue;
    ++solved;
    const WitnessResult r = witness_solve(pr, sp, SchurVariant::L22);
    if (const auto* w = std::get_if<SchurWitness>(&r)) {
      verified += all_hold(w->checks) && all_hold(witness_checks(*w, pr, sp));
      numbers.push_back(*w);
    }
  }
  // boundary sets: alpha1 + 1 = p1 (b1 + 1), so the p-side inequality is an equality
  while (boundary < 100) {
    const Rational p1 = 1 + Rational(1 + pick(rng), 5), p2 = 1 + Rational(1 + pick(rng), 4);
    const Rational q = std::max(p1, p2) + Rational(pick(rng), 3);
    const Rational b1 = Rational(pick(rng) - 5, 6);
    const SpaceSpec sp = spaces_of({p1, p2}, {q, q}, {p1 * (b1 + 1) - 1, Rational(pick(rng), 4)},
                                   {Rational(pick(rng) - 4, 5), Rational(pick(rng), 3)});
    FRParams pr = params_of({Rational(pick(rng), 2), Rational(pick(rng) + 1, 3)}, {b1, Rational(pick(rng), 2)},
                            {0, 0}, 2 + pick(rng) % 2);
    for (Factor f : {Factor::first, Factor::second}) pr.c[index(f)] = thm1_c_value(pr, sp, f);
    ++boundary;
    const WitnessResult r = witness_solve(pr, sp, SchurVariant::L22);
    rejected += std::holds_alternative<Infeasible>(r);
    if (const auto* inf = std::get_if<Infeasible>(&r)) numbers.push_back(*inf);
  }
  const double elapsed = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "witnesses %d/100, infeasible %d/100, %.2f s", verified, rejected, elapsed);
  return {verified == 100 && rejected == 100 && elapsed < 10.0, buf, numbers};
}

Outcome sandwich() {
  std::mt19937_64 rng(1007);
  std::uniform_int_distribution<int> pick(0, 12);
  int sufficient = 0, exceptions = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 2 + pick(rng) % 3;
    const Rational p1 = 1 + Rational(1 + pick(rng), 6);
    const Rational p2 = 1 + Rational(1 + pick(rng), 6);
    const Rational qm = std::max(p1, p2) + Rational(pick(rng), 4);
    const SpaceSpec s = spaces_of({p1, p2}, {qm, qm + Rational(pick(rng), 3)},
                                  {Rational(pick(rng) - 5, 6), Rational(pick(rng), 5)},
                                  {Rational(pick(rng) - 5, 6), Rational(pick(rng), 7)});
    FRParams pr = params_of({Rational(pick(rng) - 4, 3), Rational(pick(rng) - 2, 2)},
                            {Rational(pick(rng) - 4, 2), Rational(pick(rng), 3)}, {0, 0}, n);
    for (Factor f : {Factor::first, Factor::second}) {
      pr.c[index(f)] = thm1_c_value(pr, s, f) + (pick(rng) < 2 ? Rational(1, 7) : Rational(0));
    }
    if (thm2_sufficient(pr, s).holds) {
      ++sufficient;
      exceptions += !thm1_necessary(pr, s).holds;
    }
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "10000 sets, %d sufficient, %d exceptions", sufficient, exceptions);
  return {exceptions == 0 && sufficient > 0, buf, Json{sufficient, exceptions}};
}

Outcome duality() {
  SamplingConfig cfg;
  cfg.seed = 1008;
  cfg.base_samples = 1 << 18;
  const TestFnSpec spec = worked_testfn();
  const SeparableFn f{FactorFn::power(spec.l[0], spec.s[0], 1.0), FactorFn::power(spec.l[1], spec.s[1], 1.0)};
  const DualityReport rep = run_duality(params_of({1, 1}, {1, 1}, {4, 4}), spaces_of({2, 2}, {2, 2}), f, f, cfg);
  const double gap = std::abs(rep.lhs.value() - rep.rhs.value());
  const double se = std::hypot(rep.lhs.std_error(), rep.rhs.std_error());
  const bool within = rep.lhs.re.n_samples <= 10'000'000 && rep.rhs.re.n_samples <= 10'000'000;
  char buf[200];
  std::snprintf(buf, sizeof buf, "lhs %.6g%+.3gi, rhs %.6g%+.3gi, gap %.3g vs 3se %.3g", rep.lhs.value().real(),
                rep.lhs.value().imag(), rep.rhs.value().real(), rep.rhs.value().imag(), gap, 3.0 * se);
  return {rep.agree && gap <= 3.0 * se && !rep.lhs.diverged() && !rep.rhs.diverged() && within, buf, Json(rep)};
}

}  // namespace

int main() {
  using Criterion = Outcome (*)();
  const std::vector<std::pair<const char*, Criterion>> criteria = {
      {"power law ratio", remark_power_law}, {"power law divergence", remark_divergence},
      {"reproducing constant", lemma_constancy}, {"scaling slopes", scaling_slopes},
      {"blow-up slopes", blowup_slopes},      {"witness suite", witness_suite},
      {"sandwich", sandwich},                 {"duality", duality}};

  bool all = true;
  std::vector<Json> first;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = Clock::now();
    const Outcome o = criteria[k].second();
    std::printf("[%s] %zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    all = all && o.pass;
    first.push_back(o.numbers);
  }

  std::size_t identical = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) identical += criteria[k].second().numbers.dump() == first[k].dump();
  const bool rerun = identical == criteria.size();
  std::printf("[%s] 9 rerun: %zu/%zu criteria reproduce bit-exactly\n", rerun ? "PASS" : "FAIL", identical,
              criteria.size());
  all = all && rerun;
  return all ? 0 : 1;
}
