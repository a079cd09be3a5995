#include "serialize.hpp"

#include <cmath>
#include <limits>

#include "errors.hpp"

namespace frcone {

namespace {

Json pair_json(const RationalPair& p) { return Json::array({rational_json(p[0]), rational_json(p[1])}); }

RationalPair pair_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("expected a pair of rationals");
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

Json doubles_json(const std::vector<double>& xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(double_json(x));
  return out;
}

std::vector<double> doubles_from_json(const Json& j) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(double_from_json(x));
  return out;
}

Json complex_json(std::complex<double> z) { return Json::array({double_json(z.real()), double_json(z.imag())}); }

std::complex<double> complex_from_json(const Json& j) { return {double_from_json(j.at(0)), double_from_json(j.at(1))}; }

template <class T>
std::vector<T> list_from_json(const Json& j) {
  std::vector<T> out;
  for (const auto& x : j) out.push_back(x.get<T>());
  return out;
}

}  // namespace

Json rational_json(const Rational& r) { return to_wire(r); }

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw ParseError("rationals must be encoded as \"num/den\" strings");
  return parse_rational(j.get<std::string>());
}

Json double_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double double_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ParseError("unexpected string for a real number: " + s);
  }
  return j.get<double>();
}

void to_json(Json& j, const FRParams& v) {
  j = Json{{"n", v.n}, {"a", pair_json(v.a)}, {"b", pair_json(v.b)}, {"c", pair_json(v.c)}};
}

void from_json(const Json& j, FRParams& v) {
  v.n = j.at("n").get<int>();
  v.a = pair_from_json(j.at("a"));
  v.b = pair_from_json(j.at("b"));
  v.c = pair_from_json(j.at("c"));
}

void to_json(Json& j, const SpaceSpec& v) {
  j = Json{{"p", pair_json(v.p)}, {"q", pair_json(v.q)}, {"alpha", pair_json(v.alpha)}, {"beta", pair_json(v.beta)}};
}

void from_json(const Json& j, SpaceSpec& v) {
  v.p = pair_from_json(j.at("p"));
  v.q = pair_from_json(j.at("q"));
  v.alpha = pair_from_json(j.at("alpha"));
  v.beta = pair_from_json(j.at("beta"));
}

void to_json(Json& j, const Clause& v) {
  j = Json{{"text", v.text},
           {"relation", v.relation},
           {"lhs", rational_json(v.lhs)},
           {"rhs", rational_json(v.rhs)},
           {"holds", v.holds}};
}

void from_json(const Json& j, Clause& v) {
  v.text = j.at("text").get<std::string>();
  v.relation = j.at("relation").get<std::string>();
  v.lhs = rational_from_json(j.at("lhs"));
  v.rhs = rational_from_json(j.at("rhs"));
  v.holds = j.at("holds").get<bool>();
}

void to_json(Json& j, const TheoremVerdict& v) {
  j = Json{{"theorem", to_string(v.theorem)}, {"holds", v.holds}, {"clauses", v.clauses}, {"warnings", v.warnings}};
}

void from_json(const Json& j, TheoremVerdict& v) {
  v.theorem = theorem_from_string(j.at("theorem").get<std::string>());
  v.holds = j.at("holds").get<bool>();
  v.clauses = list_from_json<Clause>(j.at("clauses"));
  v.warnings = j.at("warnings").get<std::vector<std::string>>();
}

void to_json(Json& j, const PowerLawPrediction& v) {
  j = Json{{"valid", v.valid},
           {"exponent", v.exponent ? rational_json(*v.exponent) : Json(nullptr)},
           {"formal_exponent", rational_json(v.formal_exponent)},
           {"reason", v.reason},
           {"clauses", v.clauses}};
}

void from_json(const Json& j, PowerLawPrediction& v) {
  v.valid = j.at("valid").get<bool>();
  v.exponent.reset();
  if (!j.at("exponent").is_null()) v.exponent = rational_from_json(j.at("exponent"));
  v.formal_exponent = rational_from_json(j.at("formal_exponent"));
  v.reason = j.at("reason").get<std::string>();
  v.clauses = list_from_json<Clause>(j.at("clauses"));
}

void to_json(Json& j, const TestFnSpec& v) {
  Json l = Json::array();
  for (const auto& li : v.l) l.push_back(li ? rational_json(*li) : Json(nullptr));
  j = Json{{"n", v.n}, {"l", l}, {"s", pair_json(v.s)}, {"height", double_json(v.height)},
           {"variant", to_string(v.variant)}};
}

void from_json(const Json& j, TestFnSpec& v) {
  v.n = j.at("n").get<int>();
  const Json& l = j.at("l");
  for (std::size_t i = 0; i < 2; ++i) {
    v.l[i].reset();
    if (!l.at(i).is_null()) v.l[i] = rational_from_json(l.at(i));
  }
  v.s = pair_from_json(j.at("s"));
  v.height = double_from_json(j.at("height"));
  v.variant = test_fn_variant_from_string(j.at("variant").get<std::string>());
}

void to_json(Json& j, const SchurWitness& v) {
  j = Json{{"variant", to_string(v.variant)}, {"r", pair_json(v.r)},         {"s", pair_json(v.s)},
           {"gamma", pair_json(v.gamma)},     {"delta", pair_json(v.delta)}, {"tau", pair_json(v.tau)},
           {"checks", v.checks},              {"diagnostics", v.diagnostics}};
}

void from_json(const Json& j, SchurWitness& v) {
  v.variant = schur_variant_from_string(j.at("variant").get<std::string>());
  v.r = pair_from_json(j.at("r"));
  v.s = pair_from_json(j.at("s"));
  v.gamma = pair_from_json(j.at("gamma"));
  v.delta = pair_from_json(j.at("delta"));
  v.tau = pair_from_json(j.at("tau"));
  v.checks = list_from_json<Clause>(j.at("checks"));
  v.diagnostics = list_from_json<Clause>(j.at("diagnostics"));
}

void to_json(Json& j, const Infeasible& v) { j = Json{{"reason", v.reason}, {"violated", v.violated}}; }

void from_json(const Json& j, Infeasible& v) {
  v.reason = j.at("reason").get<std::string>();
  v.violated = list_from_json<Clause>(j.at("violated"));
}

void to_json(Json& j, const SchurCheck& v) {
  j = Json{{"side", to_string(v.side)},
           {"variant", to_string(v.variant)},
           {"lhs", v.lhs},
           {"rhs", double_json(v.rhs)},
           {"ratio", double_json(v.ratio)},
           {"ratio_std_error", double_json(v.ratio_std_error)},
           {"diverged", v.diverged}};
}

void from_json(const Json& j, SchurCheck& v) {
  v.side = schur_side_from_string(j.at("side").get<std::string>());
  v.variant = schur_variant_from_string(j.at("variant").get<std::string>());
  v.lhs = j.at("lhs").get<McEstimate>();
  v.rhs = double_from_json(j.at("rhs"));
  v.ratio = double_from_json(j.at("ratio"));
  v.ratio_std_error = double_from_json(j.at("ratio_std_error"));
  v.diverged = j.at("diverged").get<bool>();
}

void to_json(Json& j, const McEstimate& v) {
  j = Json{{"value", double_json(v.value)},
           {"stderr", double_json(v.std_error)},
           {"n_samples", v.n_samples},
           {"seed", v.seed},
           {"diverged", v.diverged},
           {"divergence_reason", v.divergence_reason},
           {"tail_xi", double_json(v.tail_xi)},
           {"checkpoints", doubles_json(v.checkpoints)},
           {"inner_samples", v.inner_samples}};
}

void from_json(const Json& j, McEstimate& v) {
  v.value = double_from_json(j.at("value"));
  v.std_error = double_from_json(j.at("stderr"));
  v.n_samples = j.at("n_samples").get<std::uint64_t>();
  v.seed = j.at("seed").get<std::uint64_t>();
  v.diverged = j.at("diverged").get<bool>();
  v.divergence_reason = j.at("divergence_reason").get<std::string>();
  v.tail_xi = double_from_json(j.at("tail_xi"));
  v.checkpoints = doubles_from_json(j.at("checkpoints"));
  v.inner_samples = j.at("inner_samples").get<std::uint64_t>();
}

void to_json(Json& j, const ComplexEstimate& v) { j = Json{{"re", v.re}, {"im", v.im}}; }

void from_json(const Json& j, ComplexEstimate& v) {
  v.re = j.at("re").get<McEstimate>();
  v.im = j.at("im").get<McEstimate>();
}

void to_json(Json& j, const SamplingConfig& v) {
  j = Json{{"seed", v.seed},
           {"scale", double_json(v.scale)},
           {"batch_size", v.batch_size},
           {"base_samples", v.base_samples},
           {"doublings", v.doublings},
           {"cauchy_tolerance", double_json(v.cauchy_tolerance)},
           {"tail_threshold", double_json(v.tail_threshold)},
           {"inner_factor", v.inner_factor},
           {"pair_samples", v.pair_samples},
           {"image_samples", v.image_samples},
           {"x_center", doubles_json(v.x_center)}};
}

void from_json(const Json& j, SamplingConfig& v) {
  v.seed = j.at("seed").get<std::uint64_t>();
  v.scale = double_from_json(j.at("scale"));
  v.batch_size = j.at("batch_size").get<std::size_t>();
  v.base_samples = j.at("base_samples").get<std::size_t>();
  v.doublings = j.at("doublings").get<int>();
  v.cauchy_tolerance = double_from_json(j.at("cauchy_tolerance"));
  v.tail_threshold = double_from_json(j.at("tail_threshold"));
  v.inner_factor = j.at("inner_factor").get<std::size_t>();
  v.pair_samples = j.at("pair_samples").get<std::size_t>();
  v.image_samples = j.at("image_samples").get<std::size_t>();
  v.x_center = doubles_from_json(j.at("x_center"));
}

void to_json(Json& j, const ScalingReport& v) {
  j = Json{{"quantity", v.quantity},
           {"R_grid", doubles_json(v.R_grid)},
           {"log_g_R", doubles_json(v.log_g_R)},
           {"log_norms", doubles_json(v.log_norms)},
           {"estimates", v.estimates},
           {"fitted_slope", double_json(v.fitted_slope)},
           {"intercept", double_json(v.intercept)},
           {"predicted_slope", rational_json(v.predicted_slope)},
           {"residual", double_json(v.residual)},
           {"seed", v.seed},
           {"diverged", v.diverged}};
}

void from_json(const Json& j, ScalingReport& v) {
  v.quantity = j.at("quantity").get<std::string>();
  v.R_grid = doubles_from_json(j.at("R_grid"));
  v.log_g_R = doubles_from_json(j.at("log_g_R"));
  v.log_norms = doubles_from_json(j.at("log_norms"));
  v.estimates = list_from_json<McEstimate>(j.at("estimates"));
  v.fitted_slope = double_from_json(j.at("fitted_slope"));
  v.intercept = double_from_json(j.at("intercept"));
  v.predicted_slope = rational_from_json(j.at("predicted_slope"));
  v.residual = double_from_json(j.at("residual"));
  v.seed = j.at("seed").get<std::uint64_t>();
  v.diverged = j.at("diverged").get<bool>();
}

void to_json(Json& j, const ScalingPair& v) { j = Json{{"source", v.source}, {"image", v.image}}; }

void from_json(const Json& j, ScalingPair& v) {
  v.source = j.at("source").get<ScalingReport>();
  v.image = j.at("image").get<ScalingReport>();
}

void to_json(Json& j, const DualityReport& v) {
  j = Json{{"probes", v.probes}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"agree", v.agree}};
}

void from_json(const Json& j, DualityReport& v) {
  v.probes = j.at("probes").get<std::size_t>();
  v.lhs = j.at("lhs").get<ComplexEstimate>();
  v.rhs = j.at("rhs").get<ComplexEstimate>();
  v.agree = j.at("agree").get<bool>();
}

void to_json(Json& j, const TubePoint& v) {
  j = Json{{"re", doubles_json(std::vector<double>(v.re().begin(), v.re().end()))},
           {"im", doubles_json(std::vector<double>(v.im().coords().begin(), v.im().coords().end()))}};
}

TubePoint tube_point_from_json(const Json& j) {
  return TubePoint::from_parts(doubles_from_json(j.at("re")), doubles_from_json(j.at("im")));
}

void to_json(Json& j, const Lemma21Report& v) {
  Json probes = Json::array();
  for (const auto& [z, xi] : v.probes) probes.push_back(Json{{"z", z}, {"xi", xi}});
  Json ratios = Json::array();
  for (const auto& r : v.ratios) ratios.push_back(complex_json(r));
  j = Json{{"prediction", v.prediction},
           {"probes", probes},
           {"integrals", v.integrals},
           {"ratios", ratios},
           {"ratio_std_errors", doubles_json(v.ratio_std_errors)},
           {"constant", v.constant},
           {"diverged", v.diverged},
           {"offending", v.offending ? Json::array({v.offending->first, v.offending->second}) : Json(nullptr)}};
}

void from_json(const Json& j, Lemma21Report& v) {
  v.prediction = j.at("prediction").get<PowerLawPrediction>();
  v.probes.clear();
  for (const auto& p : j.at("probes")) v.probes.emplace_back(tube_point_from_json(p.at("z")), tube_point_from_json(p.at("xi")));
  v.integrals = list_from_json<ComplexEstimate>(j.at("integrals"));
  v.ratios.clear();
  for (const auto& r : j.at("ratios")) v.ratios.push_back(complex_from_json(r));
  v.ratio_std_errors = doubles_from_json(j.at("ratio_std_errors"));
  v.constant = j.at("constant").get<bool>();
  v.diverged = j.at("diverged").get<bool>();
  v.offending.reset();
  if (!j.at("offending").is_null()) {
    v.offending = std::make_pair(j.at("offending").at(0).get<std::size_t>(), j.at("offending").at(1).get<std::size_t>());
  }
}

}  // namespace frcone
