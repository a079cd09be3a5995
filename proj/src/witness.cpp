#include "witness.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace frcone {

namespace {

bool shape_matches(SchurVariant v, const SpaceSpec& sp) {
  const bool first_l1 = sp.p[0] == 1;
  const bool second_l1 = sp.p[1] == 1;
  switch (v) {
    case SchurVariant::L22: return !first_l1 && !second_l1;
    case SchurVariant::L23: return first_l1 && second_l1;
    case SchurVariant::L24: return !first_l1 && second_l1;
    case SchurVariant::L25: return first_l1 && !second_l1;
  }
  return false;
}

/// Exponent bundle of one factor, shared by the solver and the check list.
struct FactorData {
  Rational n, a, b, c, alpha, beta, p, q;
  Rational inv_p;  // 1/p′, zero for p = 1
  Rational d;      // b − α
  bool l1 = false;
};

FactorData factor_data(const FRParams& pr, const SpaceSpec& sp, std::size_t i) {
  FactorData f;
  f.n = pr.n;
  f.a = pr.a[i];
  f.b = pr.b[i];
  f.c = pr.c[i];
  f.alpha = sp.alpha[i];
  f.beta = sp.beta[i];
  f.p = sp.p[i];
  f.q = sp.q[i];
  f.inv_p = conjugate_reciprocal(f.p);
  f.d = f.b - f.alpha;
  f.l1 = f.p == 1;
  return f;
}

void append_factor_checks(std::vector<Clause>& out, const SchurWitness& w, const FactorData& f, std::size_t i) {
  const Rational& r = w.r[i];
  const Rational& s = w.s[i];
  const Rational& g = w.gamma[i];
  const Rational& dl = w.delta[i];
  const Rational& tau = w.tau[i];
  out.push_back(make_clause(indexed("gamma# + delta# = 1", i), g + dl, "=", 1));
  out.push_back(make_clause(indexed("-(1 + beta#)/q# < r#", i), -(1 + f.beta) / f.q, "<", r));
  out.push_back(make_clause(indexed("r# < 0", i), r, "<", 0));
  out.push_back(make_clause(indexed("tau# > 0", i), tau, ">", 0));
  out.push_back(make_clause(indexed("tau# = c# - a# - b# + alpha#", i), tau, "=", f.c - f.a - f.b + f.alpha));
  out.push_back(make_clause(indexed("tau# = (n + alpha#)/p#' + (n + beta#)/q#", i), tau, "=",
                            (f.n + f.alpha) * f.inv_p + (f.n + f.beta) / f.q));
  out.push_back(make_clause(indexed("gamma# tau# + r# - s# = (n + alpha#)/p#'", i), g * tau + r - s, "=",
                            (f.n + f.alpha) * f.inv_p));
  out.push_back(
      make_clause(indexed("delta# tau# + s# - r# = (n + beta#)/q#", i), dl * tau + s - r, "=", (f.n + f.beta) / f.q));
  out.push_back(make_clause(indexed("-(1 + alpha#)/p#' - (b# - alpha#) gamma# < s#", i),
                            -(1 + f.alpha) * f.inv_p - f.d * g, "<", s));
  out.push_back(make_clause(indexed("s# < (b# - alpha#) delta#", i), s, "<", f.d * dl));
  if (!f.l1) {
    const Rational pc = 1 / f.inv_p;
    out.push_back(make_clause(indexed("(b# - alpha#) gamma# p#' + s# p#' + alpha# > -1", i),
                              f.d * g * pc + s * pc + f.alpha, ">", -1));
    out.push_back(make_clause(
        indexed("n + (a# + b# - alpha#) gamma# p#' + s# p#' + alpha# - c# gamma# p#' = r# p#'", i),
        f.n + (f.a + f.d) * g * pc + s * pc + f.alpha - f.c * g * pc, "=", r * pc));
  } else {
    out.push_back(make_clause(indexed("c# gamma# = (a# + b# - alpha#) gamma# + s# - r#", i), f.c * g, "=",
                              (f.a + f.d) * g + s - r));
  }
  out.push_back(make_clause(indexed("r# q# + beta# > -1", i), r * f.q + f.beta, ">", -1));
  out.push_back(make_clause(indexed("n + r# q# + beta# - c# delta# q# = s# q# - (a# + b# - alpha#) delta# q#", i),
                            f.n + r * f.q + f.beta - f.c * dl * f.q, "=", s * f.q - (f.a + f.d) * dl * f.q));
}

void append_factor_diagnostics(std::vector<Clause>& out, const SchurWitness& w, const FactorData& f, std::size_t i) {
  const Rational& r = w.r[i];
  const Rational& s = w.s[i];
  const Rational& g = w.gamma[i];
  const Rational& dl = w.delta[i];
  const Rational edge = 1 - f.n / 2;
  if (!f.l1) {
    const Rational pc = 1 / f.inv_p;
    out.push_back(make_clause(indexed("r# p#' - a# gamma# p#' < 1 - n/2", i), r * pc - f.a * g * pc, "<", edge));
  } else {
    out.push_back(make_clause(indexed("(b# - alpha#) gamma# + s# >= 0", i), f.d * g + s, ">=", 0));
    out.push_back(make_clause(indexed("c# gamma# - (b# - alpha#) gamma# - s# >= 0", i), f.c * g - f.d * g - s, ">=", 0));
  }
  out.push_back(make_clause(indexed("a# delta# q# + r# q# + beta# > -1", i), f.a * dl * f.q + r * f.q + f.beta, ">", -1));
  out.push_back(make_clause(indexed("s# q# - (b# - alpha#) delta# q# < 1 - n/2", i), s * f.q - f.d * dl * f.q, "<", edge));
}

std::vector<Clause> failing(const std::vector<Clause>& clauses) {
  std::vector<Clause> out;
  std::copy_if(clauses.begin(), clauses.end(), std::back_inserter(out), [](const Clause& c) { return !c.holds; });
  return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo side

McEstimate power_of(const McEstimate& est, double exponent) {
  McEstimate out = est;
  if (exponent == 1.0) return out;
  if (est.value > 0.0) {
    out.value = std::pow(est.value, exponent);
    out.std_error = std::abs(exponent) * out.value * est.std_error / est.value;
  } else {
    out.value = 0.0;
  }
  out.checkpoints.clear();
  return out;
}

SamplingConfig probe_config(const SamplingConfig& base, std::uint64_t stream, TubeView probe,
                            const std::optional<TruncatedBox>& region) {
  SamplingConfig cfg = base.derived(stream);
  if (!region) {
    cfg.scale = base.scale * std::sqrt(g_of(probe));
    if (base.x_center.empty()) cfg.x_center.assign(probe.re.begin(), probe.re.end());
  }
  return cfg;
}

/// 𝔤(P)^{fixed_exp} ∫ 𝔤(Im v)^{var_exp} / |Q(P − v̄)|^{q_exp} dV(v).
McEstimate power_integral(const TubePoint& probe, double fixed_exp, double var_exp, double q_exp,
                          const SamplingConfig& cfg, const std::optional<TruncatedBox>& region) {
  const TubeView p = view(probe);
  McEstimate est = integrate_tube(
      [&](TubeView v) {
        if (region && !region->contains(v)) return 0.0;
        double value = var_exp == 0.0 ? 1.0 : std::pow(g_of(v), var_exp);
        if (q_exp != 0.0) value *= std::pow(std::abs(q_conj_difference(p, v)), -q_exp);
        return value;
      },
      probe.dim(), cfg);
  return scaled(est, fixed_exp == 0.0 ? 1.0 : std::pow(g_of(p), fixed_exp));
}

/// sup over a sample cloud of 𝔤(P)^{fixed_exp} 𝔤(Im v)^{var_exp} / |Q(P − v̄)|^{q_exp}.
McEstimate power_sup(const TubePoint& probe, double fixed_exp, double var_exp, double q_exp, const SamplingConfig& cfg,
                     const std::optional<TruncatedBox>& region) {
  const std::size_t n = probe.dim();
  const Proposal proposal(n, cfg.scale, cfg.x_center);
  const TubeView p = view(probe);
  std::mt19937_64 rng(derive_seed(cfg.seed, 0));
  std::vector<double> re(n), im(n);
  const TubeView v{re, im};
  double best = 0.0;
  const std::size_t count = cfg.total_samples();
  for (std::size_t k = 0; k < count; ++k) {
    proposal.draw(rng, re, im);
    if (region && !region->contains(v)) continue;
    double value = var_exp == 0.0 ? 1.0 : std::pow(g_of(v), var_exp);
    if (q_exp != 0.0) value *= std::pow(std::abs(q_conj_difference(p, v)), -q_exp);
    if (std::isfinite(value)) best = std::max(best, value);
  }
  McEstimate out;
  out.value = best * (fixed_exp == 0.0 ? 1.0 : std::pow(g_of(p), fixed_exp));
  out.n_samples = count;
  out.seed = cfg.seed;
  return out;
}

}  // namespace

std::string to_string(SchurVariant v) {
  switch (v) {
    case SchurVariant::L22: return "L22";
    case SchurVariant::L23: return "L23";
    case SchurVariant::L24: return "L24";
    case SchurVariant::L25: return "L25";
  }
  return "L22";
}

SchurVariant schur_variant_from_string(const std::string& text) {
  for (auto v : {SchurVariant::L22, SchurVariant::L23, SchurVariant::L24, SchurVariant::L25}) {
    if (to_string(v) == text) return v;
  }
  throw ParseError("unknown Schur variant '" + text + "'");
}

SchurVariant variant_for(const SpaceSpec& spaces) {
  const bool first_l1 = spaces.p[0] == 1;
  const bool second_l1 = spaces.p[1] == 1;
  if (first_l1 && second_l1) return SchurVariant::L23;
  if (first_l1) return SchurVariant::L25;
  if (second_l1) return SchurVariant::L24;
  return SchurVariant::L22;
}

TheoremId theorem_for(SchurVariant v) {
  switch (v) {
    case SchurVariant::L22: return TheoremId::t2_sufficient;
    case SchurVariant::L23: return TheoremId::t5ii;
    case SchurVariant::L24: return TheoremId::t4ii;
    case SchurVariant::L25: return TheoremId::t3ii;
  }
  return TheoremId::t2_sufficient;
}

std::string to_string(SchurSide side) { return side == SchurSide::first ? "first" : "second"; }

SchurSide schur_side_from_string(const std::string& text) {
  if (text == "first" || text == "p") return SchurSide::first;
  if (text == "second" || text == "q") return SchurSide::second;
  throw ParseError("unknown Schur side '" + text + "'");
}

std::vector<Clause> witness_checks(const SchurWitness& w, const FRParams& params, const SpaceSpec& spaces) {
  std::vector<Clause> out;
  for (std::size_t i = 0; i < 2; ++i) append_factor_checks(out, w, factor_data(params, spaces, i), i);
  return out;
}

WitnessResult witness_solve(const FRParams& params, const SpaceSpec& spaces, SchurVariant variant) {
  params.validate();
  spaces.validate();
  if (!shape_matches(variant, spaces)) {
    throw DomainError("variant " + to_string(variant) + " does not match the shape of p");
  }
  const TheoremVerdict verdict = evaluate_theorem(theorem_for(variant), params, spaces);

  Infeasible infeasible;
  if (!verdict.holds) {
    infeasible.reason = to_string(verdict.theorem) + " conditions fail";
    infeasible.violated = failing(verdict.clauses);
  }

  SchurWitness w;
  w.variant = variant;
  for (std::size_t i = 0; i < 2; ++i) {
    const FactorData f = factor_data(params, spaces, i);
    const Rational tau = f.c - f.a - f.b + f.alpha;
    const Rational kappa = tau + f.d;
    if (tau <= 0 || kappa <= 0) {
      infeasible.violated.push_back(make_clause(indexed("tau# + (b# - alpha#) > 0", i), kappa, ">", 0));
      if (infeasible.reason.empty()) infeasible.reason = "non-positive tau";
      continue;
    }
    const Rational r = -(1 + f.beta) / (2 * f.q);
    const Rational lower = -tau * (1 + f.alpha) * f.inv_p - f.d * (f.n + f.alpha) * f.inv_p;
    const Rational upper = f.d * (f.n + f.beta) / f.q;
    const Rational s_lo = (lower + f.d * r) / kappa;
    const Rational s_hi = (upper + f.d * r) / kappa;
    const Clause nonempty = make_clause(indexed("s# lower endpoint < s# upper endpoint", i), s_lo, "<", s_hi);
    if (!nonempty.holds) {
      infeasible.violated.push_back(nonempty);
      if (infeasible.reason.empty()) infeasible.reason = "empty s-interval";
      continue;
    }
    const Rational s = (s_lo + s_hi) / 2;
    w.tau[i] = tau;
    w.r[i] = r;
    w.s[i] = s;
    w.gamma[i] = ((f.n + f.alpha) * f.inv_p + s - r) / tau;
    w.delta[i] = 1 - w.gamma[i];
  }
  if (!infeasible.violated.empty() || !infeasible.reason.empty()) return infeasible;

  w.checks = witness_checks(w, params, spaces);
  if (!all_hold(w.checks)) {
    return Infeasible{"witness identities fail", failing(w.checks)};
  }
  for (std::size_t i = 0; i < 2; ++i) append_factor_diagnostics(w.diagnostics, w, factor_data(params, spaces, i), i);
  return w;
}

SchurCheck schur_lhs_check(const SchurWitness& witness, const FRParams& params, const SpaceSpec& spaces,
                           const TubePoint& z, const TubePoint& w, SchurSide side, const SamplingConfig& config,
                           const std::optional<TruncatedBox>& region) {
  params.validate();
  spaces.validate();
  if (!shape_matches(witness.variant, spaces)) {
    throw DomainError("variant " + to_string(witness.variant) + " does not match the shape of p");
  }
  const std::size_t n = static_cast<std::size_t>(params.n);
  if (z.dim() != n || w.dim() != n) throw DomainError("probe dimension differs from n");
  const TubePoint* probes[2] = {&z, &w};

  SchurCheck out;
  out.side = side;
  out.variant = witness.variant;
  McEstimate parts[2];
  double rhs = 1.0;

  if (side == SchurSide::first) {
    const Rational outer = witness.variant == SchurVariant::L24 ? conjugate_reciprocal(spaces.p[0])
                                                                : conjugate_reciprocal(spaces.p[1]);
    const bool all_sup = witness.variant == SchurVariant::L23;
    const Rational rhs_power = all_sup ? Rational(1) : 1 / outer;
    for (std::size_t i = 0; i < 2; ++i) {
      const FactorData f = factor_data(params, spaces, i);
      const TubePoint& probe = *probes[i];
      const SamplingConfig cfg = probe_config(config, 100 + i, view(probe), region);
      const Rational& g = witness.gamma[i];
      const Rational& s = witness.s[i];
      if (f.l1) {
        const McEstimate sup = power_sup(probe, to_double(f.a * g), to_double(f.d * g + s), to_double(f.c * g), cfg,
                                         region);
        parts[i] = all_sup ? sup : power_of(sup, to_double(rhs_power));
      } else {
        const Rational pc = 1 / f.inv_p;
        const McEstimate integral = power_integral(probe, to_double(f.a * g * pc),
                                                   to_double(f.d * g * pc + s * pc + f.alpha),
                                                   to_double(f.c * g * pc), cfg, region);
        // inner factor of the iterated integral is raised to p₂′/p₁′
        const bool inner_raised = i == 0 && witness.variant == SchurVariant::L22;
        parts[i] = inner_raised ? power_of(integral, to_double(f.inv_p / outer)) : integral;
      }
      rhs *= std::pow(g_of(view(probe)), to_double(witness.r[i] * rhs_power));
    }
  } else {
    for (std::size_t i = 0; i < 2; ++i) {
      const FactorData f = factor_data(params, spaces, i);
      const TubePoint& probe = *probes[i];
      const SamplingConfig cfg = probe_config(config, 200 + i, view(probe), region);
      const Rational& dl = witness.delta[i];
      const McEstimate integral =
          power_integral(probe, to_double(f.d * dl * f.q), to_double(f.a * dl * f.q + witness.r[i] * f.q + f.beta),
                         to_double(f.c * dl * f.q), cfg, region);
      parts[i] = i == 0 ? power_of(integral, to_double(spaces.q[1] / spaces.q[0])) : integral;
      rhs *= std::pow(g_of(view(probe)), to_double(witness.s[i] * spaces.q[1]));
    }
  }

  out.lhs = product(parts[0], parts[1]);
  out.lhs.seed = config.seed;
  out.rhs = rhs;
  out.ratio = out.lhs.value / rhs;
  out.ratio_std_error = out.lhs.std_error / rhs;
  out.diverged = out.lhs.diverged;
  return out;
}

}  // namespace frcone
