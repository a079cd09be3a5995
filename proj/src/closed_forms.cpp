#include "closed_forms.hpp"

#include <algorithm>

#include "errors.hpp"

namespace frcone {

namespace {

PowerLawPrediction finish(std::vector<Clause> clauses, const Rational& exponent) {
  PowerLawPrediction out;
  out.valid = all_hold(clauses);
  for (const auto& c : clauses) {
    if (c.holds) continue;
    if (!out.reason.empty()) out.reason += "; ";
    out.reason += c.text;
  }
  out.formal_exponent = exponent;
  if (out.valid) out.exponent = exponent;
  out.clauses = std::move(clauses);
  return out;
}

Rational half(int n) { return Rational(n, 2); }
Rational three_halves(int n) { return Rational(3 * n, 2); }

}  // namespace

PowerLawPrediction lemma21_predict(int n, const Rational& l, const Rational& r, const Rational& s) {
  if (n < 2) throw DomainError("dimension n must be at least 2");
  const Rational floor_rs = Rational(n - 1, 2);
  std::vector<Clause> clauses{
      make_clause("r > (n-1)/2", r, ">", floor_rs),
      make_clause("s > (n-1)/2", s, ">", floor_rs),
      make_clause("l > -1", l, ">", Rational(-1)),
      make_clause("r + s - l > 3n/2 - 1", r + s - l, ">", three_halves(n) - 1),
  };
  return finish(std::move(clauses), Rational(n) - r - s + l);
}

PowerLawPrediction remark21_predict(int n, const Rational& s, const Rational& l) {
  if (n < 2) throw DomainError("dimension n must be at least 2");
  std::vector<Clause> clauses{
      make_clause("l > -1", l, ">", Rational(-1)),
      make_clause("l - s < 1 - 3n/2", l - s, "<", Rational(1) - three_halves(n)),
  };
  return finish(std::move(clauses), Rational(n) - s + l);
}

std::string to_string(TestFnVariant v) {
  switch (v) {
    case TestFnVariant::both_factors: return "both-factors";
    case TestFnVariant::first_only: return "first-only";
    case TestFnVariant::second_only: return "second-only";
    case TestFnVariant::none: return "none";
  }
  return "none";
}

TestFnVariant test_fn_variant_from_string(const std::string& text) {
  if (text == "both-factors") return TestFnVariant::both_factors;
  if (text == "first-only") return TestFnVariant::first_only;
  if (text == "second-only") return TestFnVariant::second_only;
  if (text == "none") return TestFnVariant::none;
  throw ParseError("unknown test-function variant '" + text + "'");
}

void TestFnSpec::validate() const {
  if (n < 2) throw DomainError("dimension n must be at least 2");
  for (const auto& si : s) {
    if (si <= 0) throw DomainError("test-function exponents s must be positive");
  }
  if (!(height > 0.0)) throw DomainError("shift height R must be positive");
  const bool want_first = variant == TestFnVariant::both_factors || variant == TestFnVariant::first_only;
  const bool want_second = variant == TestFnVariant::both_factors || variant == TestFnVariant::second_only;
  if (l[0].has_value() != want_first || l[1].has_value() != want_second) {
    throw VariantMismatch("l entries do not match test-function variant " + to_string(variant));
  }
}

Rational TestFnSpec::l_or_zero(Factor f) const {
  const auto& li = l[index(f)];
  return li ? *li : Rational(0);
}

std::vector<Clause> norm_membership(const TestFnSpec& spec, const SpaceSpec& spaces, Factor factor) {
  spec.validate();
  spaces.validate();
  const std::size_t i = index(factor);
  const int n = spec.n;
  const Rational& p = spaces.p[i];
  const Rational& alpha = spaces.alpha[i];
  const Rational l = spec.l_or_zero(factor);
  const Rational& s = spec.s[i];
  return {
      make_clause(indexed("s# > max{n/2 - 1, (n-1)/p#}", i), s, ">",
                  std::max(half(n) - 1, Rational(n - 1) / p)),
      make_clause(indexed("l# > -(1 + alpha#)/p#", i), l, ">", -(1 + alpha) / p),
      make_clause(indexed("s# - l# > (alpha# - 1)/p# + 3n/(2p#)", i), s - l, ">",
                  (alpha - 1) / p + three_halves(n) / p),
  };
}

std::vector<Clause> membership_conditions(const TestFnSpec& spec, const FRParams& params,
                                          const SpaceSpec& spaces, Factor factor) {
  params.validate();
  if (params.n != spec.n) throw DomainError("test function and operator disagree on n");
  auto clauses = norm_membership(spec, spaces, factor);
  const std::size_t i = index(factor);
  const int n = spec.n;
  const Rational l = spec.l_or_zero(factor);
  const Rational& s = spec.s[i];
  const Rational& b = params.b[i];
  const Rational& c = params.c[i];
  // Lines of the membership system that involve the operator exponents.
  clauses.push_back(make_clause(indexed("l# > -1 - b#", i), l, ">", -1 - b));
  clauses.push_back(make_clause(indexed("s# - l# > 3n/2 - 1 - c# + b#", i), s - l, ">",
                                three_halves(n) - 1 - c + b));
  return clauses;
}

PowerLawPrediction testfn_norm_exponent(const TestFnSpec& spec, const SpaceSpec& spaces, Factor factor) {
  auto clauses = norm_membership(spec, spaces, factor);
  const std::size_t i = index(factor);
  const Rational l = spec.l_or_zero(factor);
  const Rational exponent = l - spec.s[i] + (spec.n + spaces.alpha[i]) / spaces.p[i];
  return finish(std::move(clauses), exponent);
}

Rational image_q_exponent(const TestFnSpec& spec, const FRParams& params, Factor factor) {
  const std::size_t i = index(factor);
  return params.c[i] + spec.s[i] - spec.n - params.b[i] - spec.l_or_zero(factor);
}

PowerLawPrediction image_norm_exponent(const TestFnSpec& spec, const FRParams& params,
                                       const SpaceSpec& spaces, Factor factor) {
  auto clauses = membership_conditions(spec, params, spaces, factor);
  const std::size_t i = index(factor);
  const int n = spec.n;
  const Rational l = spec.l_or_zero(factor);
  const Rational& s = spec.s[i];
  const Rational& a = params.a[i];
  const Rational& b = params.b[i];
  const Rational& c = params.c[i];
  const Rational& q = spaces.q[i];
  const Rational& beta = spaces.beta[i];
  const Rational floor_rs = Rational(n - 1, 2);
  // Validity of the inner integral defining T f_R.
  clauses.push_back(make_clause(indexed("c# > (n-1)/2", i), c, ">", floor_rs));
  clauses.push_back(make_clause(indexed("s# > (n-1)/2", i), s, ">", floor_rs));
  // Integrability of |T f_R|^q against dv_beta.
  clauses.push_back(make_clause(indexed("q# a# + beta# > -1", i), q * a + beta, ">", Rational(-1)));
  clauses.push_back(make_clause(indexed("q# (c# - b# - a# - n + s# - l#) - beta# > 3n/2 - 1", i),
                                q * (c - b - a - n + s - l) - beta, ">", three_halves(n) - 1));
  const Rational exponent = a + b - c + l - s + n + (beta + n) / q;
  return finish(std::move(clauses), exponent);
}

}  // namespace frcone
