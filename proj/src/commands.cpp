#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace frcone {

namespace {

constexpr const char* kVersion = "frcone 1.0";

FRParams read_params(const RunConfig& cfg) {
  FRParams p;
  p.n = cfg.integer("params", "n", 2);
  p.a = cfg.rational_pair("params", "a");
  p.b = cfg.rational_pair("params", "b");
  p.c = cfg.rational_pair("params", "c");
  p.validate();
  return p;
}

SpaceSpec read_spaces(const RunConfig& cfg) {
  SpaceSpec s;
  s.p = cfg.rational_pair("spaces", "p");
  s.q = cfg.rational_pair("spaces", "q");
  s.alpha = cfg.has("spaces", "alpha") ? cfg.rational_pair("spaces", "alpha") : RationalPair{0, 0};
  s.beta = cfg.has("spaces", "beta") ? cfg.rational_pair("spaces", "beta") : RationalPair{0, 0};
  s.validate();
  return s;
}

TestFnSpec read_testfn(const RunConfig& cfg, int n) {
  TestFnSpec spec;
  spec.n = n;
  spec.l = cfg.optional_pair("params", "testfn.l");
  spec.s = cfg.rational_pair("params", "testfn.s");
  if (cfg.has("params", "testfn.variant")) {
    spec.variant = test_fn_variant_from_string(cfg.text("params", "testfn.variant", ""));
  } else if (spec.l[0] && spec.l[1]) {
    spec.variant = TestFnVariant::both_factors;
  } else if (spec.l[0]) {
    spec.variant = TestFnVariant::first_only;
  } else if (spec.l[1]) {
    spec.variant = TestFnVariant::second_only;
  } else {
    spec.variant = TestFnVariant::none;
  }
  spec.validate();
  return spec;
}

std::vector<double> read_heights(const RunConfig& cfg, const std::string& key, std::vector<double> fallback) {
  if (!cfg.has("params", key)) return fallback;
  std::vector<double> out;
  for (const Rational& r : cfg.rational_list("params", key)) out.push_back(to_double(r));
  return out;
}

TubePoint read_point(const std::vector<Rational>& values, std::size_t offset, int n) {
  std::vector<double> re, im;
  for (int j = 0; j < n; ++j) re.push_back(to_double(values[offset + j]));
  for (int j = 0; j < n; ++j) im.push_back(to_double(values[offset + n + j]));
  return TubePoint::from_parts(re, im);
}

std::vector<std::pair<TubePoint, TubePoint>> read_probes(const RunConfig& cfg, int n) {
  std::vector<std::pair<TubePoint, TubePoint>> out;
  for (int k = 1; k <= 6; ++k) {
    const std::string key = "probe" + std::to_string(k);
    const ConfigEntry* e = cfg.find("params", key);
    if (!e) continue;
    std::vector<Rational> values;
    const std::size_t bar = e->value.find('|');
    if (bar == std::string::npos) throw ParseError("probe needs two points separated by '|'", e->line, e->column);
    std::vector<Rational> first, second;
    RunConfig scratch;
    scratch.set("params", "probe1", e->value.substr(0, bar));
    scratch.set("params", "probe2", e->value.substr(bar + 1));
    for (int half = 0; half < 2; ++half) {
      try {
        (half == 0 ? first : second) = scratch.rational_list("params", half == 0 ? "probe1" : "probe2");
      } catch (const ParseError& err) {
        // scratch entries carry no position; map back onto the probe line
        const std::string_view msg = err.what();
        const int shift = half == 0 ? 0 : static_cast<int>(bar) + 1;
        throw ParseError(std::string(msg), e->line, e->column + shift + std::max(err.column(), 1) - 1);
      }
    }
    if (first.size() != static_cast<std::size_t>(2 * n) || second.size() != static_cast<std::size_t>(2 * n)) {
      throw ParseError("each probe point needs 2n = " + std::to_string(2 * n) + " coordinates", e->line, e->column);
    }
    try {
      out.emplace_back(read_point(first, 0, n), read_point(second, 0, n));
    } catch (const DomainError& err) {
      throw ParseError(std::string(err.what()), e->line, e->column);
    }
  }
  return out;
}

Json header(const std::string& command, const std::string& target, const RunConfig& cfg, const SamplingConfig* s) {
  Json h{{"tool", kVersion}, {"command", command}, {"target", target}};
  h["config_hash"] = [&] {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(command + "\n" + target + "\n" + cfg.canonical())));
    return std::string(buf);
  }();
  if (s) {
    h["seed"] = s->seed;
    h["seed_source"] = cfg.seed_from_entropy() ? "entropy" : "config";
    h["sampling"] = *s;
  }
  return h;
}

std::string fixed(double x, int digits = 4) {
  std::ostringstream out;
  out.precision(digits);
  out << x;
  return out.str();
}

CommandResult cmd_check(const RunConfig& cfg) {
  CommandResult r;
  const FRParams params = read_params(cfg);
  const SpaceSpec spaces = read_spaces(cfg);
  const auto theorems = applicable_theorems(spaces);
  const TheoremId query =
      cfg.has("params", "theorem") ? theorem_from_string(cfg.text("params", "theorem", "")) : theorems.front();
  Json verdicts = Json::array();
  bool holds = false;
  std::size_t true_count = 0, clause_count = 0;
  for (TheoremId id : theorems) {
    const TheoremVerdict v = evaluate_theorem(id, params, spaces);
    verdicts.push_back(v);
    if (id == query) {
      holds = v.holds;
      clause_count = v.clauses.size();
      for (const auto& c : v.clauses) true_count += c.holds;
    }
  }
  if (std::find(theorems.begin(), theorems.end(), query) == theorems.end()) {
    const TheoremVerdict v = evaluate_theorem(query, params, spaces);
    verdicts.push_back(v);
    holds = v.holds;
    clause_count = v.clauses.size();
    for (const auto& c : v.clauses) true_count += c.holds;
  }
  r.report = Json{{"params", params}, {"spaces", spaces}, {"query", to_string(query)}, {"holds", holds},
                  {"verdicts", verdicts}};
  r.exit_code = holds ? kExitPass : kExitFailed;
  r.summary = "check " + to_string(query) + ": " + (holds ? "holds" : "fails") + " (" + std::to_string(true_count) +
              "/" + std::to_string(clause_count) + " clauses)";
  return r;
}

CommandResult cmd_witness(const RunConfig& cfg) {
  CommandResult r;
  const FRParams params = read_params(cfg);
  const SpaceSpec spaces = read_spaces(cfg);
  const SchurVariant variant = cfg.has("params", "variant")
                                   ? schur_variant_from_string(cfg.text("params", "variant", ""))
                                   : variant_for(spaces);
  const WitnessResult result = witness_solve(params, spaces, variant);
  r.report = Json{{"params", params}, {"spaces", spaces}, {"variant", to_string(variant)}};
  if (const auto* w = std::get_if<SchurWitness>(&result)) {
    r.report["witness"] = *w;
    r.report["infeasible"] = nullptr;
    r.exit_code = kExitPass;
    r.summary = "witness " + to_string(variant) + ": r = (" + to_wire(w->r[0]) + ", " + to_wire(w->r[1]) +
                "), s = (" + to_wire(w->s[0]) + ", " + to_wire(w->s[1]) + "), gamma = (" + to_wire(w->gamma[0]) +
                ", " + to_wire(w->gamma[1]) + ")";
  } else {
    const auto& inf = std::get<Infeasible>(result);
    r.report["witness"] = nullptr;
    r.report["infeasible"] = inf;
    r.exit_code = kExitFailed;
    r.summary = "witness " + to_string(variant) + ": infeasible (" + inf.reason + ")";
  }
  return r;
}

int estimate_exit(bool diverged, bool pass) { return diverged ? kExitDivergence : (pass ? kExitPass : kExitFailed); }

CommandResult verify_lemma21(const RunConfig& cfg, const SamplingConfig& s) {
  CommandResult r;
  const int n = cfg.integer("params", "n", 2);
  const Rational l = cfg.has("params", "lemma.l") ? cfg.rational("params", "lemma.l") : Rational(0);
  const Lemma21Report rep = verify_lemma21(n, l, cfg.rational("params", "lemma.r"), cfg.rational("params", "lemma.s"),
                                           read_probes(cfg, n), s);
  r.report = Json{{"lemma21", rep}};
  const bool pass = rep.prediction.valid && rep.constant;
  r.exit_code = estimate_exit(rep.diverged, pass);
  r.summary = std::string("verify lemma21: ") + (rep.diverged ? "diverged" : rep.constant ? "constant ratio" : "ratio not constant");
  return r;
}

CommandResult verify_remark21(const RunConfig& cfg, const SamplingConfig& s) {
  CommandResult r;
  const int n = cfg.integer("params", "n", 2);
  const Rational sv = cfg.rational("params", "remark.s");
  const Rational l = cfg.has("params", "remark.l") ? cfg.rational("params", "remark.l") : Rational(0);
  const std::vector<double> heights = read_heights(cfg, "remark.heights", {1.0, 2.0});
  const PowerLawPrediction pred = remark21_predict(n, sv, l);
  Json estimates = Json::array();
  std::vector<McEstimate> values;
  bool diverged = false;
  for (std::size_t k = 0; k < heights.size(); ++k) {
    values.push_back(remark21_integral(n, sv, l, heights[k], s.derived(k)));
    diverged = diverged || values.back().diverged;
    estimates.push_back(Json{{"height", double_json(heights[k])}, {"estimate", values.back()}});
  }
  bool pass = pred.valid;
  Json ratios = Json::array();
  for (std::size_t k = 1; k < values.size(); ++k) {
    const double ratio = values[k].value / values[0].value;
    const double se = ratio * std::hypot(values[k].std_error / values[k].value, values[0].std_error / values[0].value);
    const double expected = std::pow(heights[k] / heights[0], 2.0 * to_double(pred.formal_exponent));
    const bool ok = std::abs(ratio - expected) <= 3.0 * se;
    pass = pass && ok;
    ratios.push_back(Json{{"ratio", double_json(ratio)}, {"std_error", double_json(se)},
                          {"expected", double_json(expected)}, {"agree", ok}});
  }
  r.report = Json{{"remark21", Json{{"prediction", pred}, {"estimates", estimates}, {"ratios", ratios}, {"diverged", diverged}}}};
  r.exit_code = estimate_exit(diverged, pass);
  r.summary = std::string("verify remark21: ") + (diverged ? "diverged" : pass ? "power law confirmed" : "power law not confirmed");
  return r;
}

CommandResult verify_schur(const RunConfig& cfg, const SamplingConfig& s) {
  CommandResult r;
  const FRParams params = read_params(cfg);
  const SpaceSpec spaces = read_spaces(cfg);
  const SchurVariant variant = cfg.has("params", "variant")
                                   ? schur_variant_from_string(cfg.text("params", "variant", ""))
                                   : variant_for(spaces);
  const WitnessResult result = witness_solve(params, spaces, variant);
  if (const auto* inf = std::get_if<Infeasible>(&result)) {
    r.report = Json{{"infeasible", *inf}};
    r.exit_code = kExitFailed;
    r.summary = "verify schur: no witness (" + inf->reason + ")";
    return r;
  }
  const SchurWitness& w = std::get<SchurWitness>(result);
  const auto probes = read_probes(cfg, params.n);
  if (probes.empty()) throw ParseError("verify schur needs at least one probe");
  const std::string side_text = cfg.text("params", "side", "both");
  std::vector<SchurSide> sides;
  if (side_text == "both") {
    sides = {SchurSide::first, SchurSide::second};
  } else {
    sides = {schur_side_from_string(side_text)};
  }
  Json checks = Json::array();
  bool diverged = false, pass = true;
  for (SchurSide side : sides) {
    std::vector<SchurCheck> results;
    for (std::size_t k = 0; k < probes.size(); ++k) {
      results.push_back(schur_lhs_check(w, params, spaces, probes[k].first, probes[k].second, side,
                                        s.derived(600 + 10 * k + (side == SchurSide::first ? 0 : 1))));
      diverged = diverged || results.back().diverged;
      pass = pass && std::isfinite(results.back().ratio) && results.back().ratio > 0.0;
      checks.push_back(results.back());
    }
    // M must be stable across probes: 3σ for integrals, 10% for sample-cloud suprema.
    for (std::size_t a = 0; a < results.size(); ++a) {
      for (std::size_t b = a + 1; b < results.size(); ++b) {
        const double gap = std::abs(results[a].ratio - results[b].ratio);
        const double se = std::hypot(results[a].ratio_std_error, results[b].ratio_std_error);
        const double tol = se > 0.0 ? 3.0 * se : 0.1 * std::max(results[a].ratio, results[b].ratio);
        pass = pass && gap <= tol;
      }
    }
  }
  r.report = Json{{"witness", w}, {"checks", checks}, {"stable", pass}, {"diverged", diverged}};
  r.exit_code = estimate_exit(diverged, pass);
  r.summary = std::string("verify schur: ") + (diverged ? "diverged" : pass ? "M stable across probes" : "M not stable");
  return r;
}

CommandResult verify_duality(const RunConfig& cfg, const SamplingConfig& s) {
  CommandResult r;
  const FRParams params = read_params(cfg);
  const SpaceSpec spaces = read_spaces(cfg);
  const TestFnSpec spec = read_testfn(cfg, params.n);
  const SeparableFn f{FactorFn::power(spec.l[0], spec.s[0], 1.0), FactorFn::power(spec.l[1], spec.s[1], 1.0)};
  const std::string g_kind = cfg.text("params", "duality.g", "testfn");
  SeparableFn g = f;
  if (g_kind == "zero") {
    g = SeparableFn{FactorFn::zero(), FactorFn::zero()};
  } else if (g_kind != "testfn") {
    const ConfigEntry* e = cfg.find("params", "duality.g");
    throw ParseError("duality.g must be testfn or zero", e->line, e->column);
  }
  const DualityReport rep = run_duality(params, spaces, f, g, s);
  r.report = Json{{"duality", rep}};
  const bool diverged = rep.lhs.diverged() || rep.rhs.diverged();
  r.exit_code = estimate_exit(diverged, rep.agree);
  r.summary = std::string("verify duality: ") + (diverged ? "diverged" : rep.agree ? "pairings agree" : "pairings differ") +
              " (lhs " + fixed(rep.lhs.value().real()) + ", rhs " + fixed(rep.rhs.value().real()) + ")";
  return r;
}

CommandResult cmd_scaling(const RunConfig& cfg, const std::string& target, const SamplingConfig& s) {
  CommandResult r;
  const FRParams params = read_params(cfg);
  const SpaceSpec spaces = read_spaces(cfg);
  const TestFnSpec spec = read_testfn(cfg, params.n);
  const std::vector<double> grid = read_heights(cfg, "R_grid", {1.0, 2.0, 4.0, 8.0});
  if (target == "blowup") {
    const double tol = cfg.has("params", "tolerance") ? to_double(cfg.rational("params", "tolerance")) : 0.06;
    BlowupDirection dir;
    const int factor = cfg.integer("params", "blowup.factor", 1);
    if (factor != 1 && factor != 2) throw ParseError("blowup.factor must be 1 or 2");
    dir.factor = factor == 1 ? Factor::first : Factor::second;
    dir.epsilon = cfg.rational("params", "blowup.epsilon");
    const ScalingReport rep = run_blowup_probe(params, spaces, dir, spec, grid, s);
    r.report = Json{{"blowup", rep}, {"tolerance", double_json(tol)}};
    r.csv = rep.to_csv();
    const bool pass = std::abs(rep.fitted_slope - to_double(rep.predicted_slope)) < tol;
    r.exit_code = estimate_exit(rep.diverged, pass);
    r.summary = "scaling blowup: ratio slope " + fixed(rep.fitted_slope) + " (predicted " + to_wire(rep.predicted_slope) + ")";
    return r;
  }
  const double tol = cfg.has("params", "tolerance") ? to_double(cfg.rational("params", "tolerance")) : 0.04;
  const ScalingPair rep = run_scaling(spec, params, spaces, grid, s);
  r.report = Json{{"scaling", rep}, {"tolerance", double_json(tol)}};
  r.csv = rep.source.to_csv();
  const std::string image_csv = rep.image.to_csv();
  r.csv += image_csv.substr(image_csv.find('\n') + 1);
  const bool pass = std::abs(rep.source.fitted_slope - to_double(rep.source.predicted_slope)) < tol &&
                    std::abs(rep.image.fitted_slope - to_double(rep.image.predicted_slope)) < tol;
  r.exit_code = estimate_exit(rep.source.diverged || rep.image.diverged, pass);
  r.summary = "scaling: source slope " + fixed(rep.source.fitted_slope) + " (predicted " +
              to_wire(rep.source.predicted_slope) + "), image slope " + fixed(rep.image.fitted_slope) +
              " (predicted " + to_wire(rep.image.predicted_slope) + ")";
  return r;
}

}  // namespace

CommandResult run_command(const std::string& command, const std::string& target, const RunConfig& config) {
  CommandResult r;
  try {
    const bool sampled = command == "verify" || command == "scaling";
    const SamplingConfig sampling = sampled ? config.sampling() : SamplingConfig{};
    if (command == "check") {
      r = cmd_check(config);
    } else if (command == "witness") {
      r = cmd_witness(config);
    } else if (command == "verify") {
      if (target == "lemma21") r = verify_lemma21(config, sampling);
      else if (target == "remark21") r = verify_remark21(config, sampling);
      else if (target == "schur") r = verify_schur(config, sampling);
      else if (target == "duality") r = verify_duality(config, sampling);
      else throw ParseError("verify target must be lemma21, remark21, schur or duality");
    } else if (command == "scaling") {
      if (target != "" && target != "scaling" && target != "blowup") {
        throw ParseError("scaling target must be scaling or blowup");
      }
      r = cmd_scaling(config, target.empty() ? "scaling" : target, sampling);
    } else {
      throw ParseError("unknown command '" + command + "'");
    }
    r.report["header"] = header(command, target, config, sampled ? &sampling : nullptr);
    r.report["exit_code"] = r.exit_code;
    r.output_dir = config.output_dir();
    r.output_format = config.output_format();
  } catch (const RangeGateError& e) {
    r = CommandResult{};
    r.exit_code = kExitRangeGate;
    r.diagnostics = e.what();
    r.summary = command + ": range gate: " + e.what();
    r.report = Json{{"error", e.what()}, {"exit_code", r.exit_code}};
  } catch (const Error& e) {
    r = CommandResult{};
    r.exit_code = kExitParse;
    r.diagnostics = e.what();
    r.summary = command + ": invalid input: " + e.what();
    r.report = Json{{"error", e.what()}, {"exit_code", r.exit_code}};
  }
  if (r.output_dir.empty()) {
    try {
      r.output_dir = config.output_dir();
      r.output_format = config.output_format();
    } catch (const Error&) {
      r.output_dir = ".";
      r.output_format = "json";
    }
  }
  char buf[17];
  std::string hashed = command + "\n" + target + "\n";
  try {
    hashed += config.canonical();
  } catch (const Error&) {
  }
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(hashed)));
  r.file_stem = command + (target.empty() ? "" : "-" + target) + "-" + buf;
  return r;
}

std::string write_report(const CommandResult& result, const std::string& directory) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw Error("cannot create output directory " + directory + ": " + ec.message());
  const fs::path json_path = fs::path(directory) / (result.file_stem + ".json");
  {
    std::ofstream out(json_path);
    if (!out) throw Error("cannot write " + json_path.string());
    out << result.report.dump(2) << '\n';
  }
  if (result.output_format == "csv" && !result.csv.empty()) {
    const fs::path csv_path = fs::path(directory) / (result.file_stem + ".csv");
    std::ofstream out(csv_path);
    if (!out) throw Error("cannot write " + csv_path.string());
    out << result.csv;
  }
  return json_path.string();
}

}  // namespace frcone
