#include "conditions.hpp"

#include <algorithm>

#include "errors.hpp"

namespace frcone {

namespace {

const char* kT2Warning =
    "c-equation uses a_i, not alpha_i: c_i = n + a_i + b_i + lambda_i, matching T1 and the sufficiency "
    "construction";
const char* kT4Warning =
    "c-equation uses c_2 = a_2 + b_2 - alpha_2 + (n + beta_2)/q_2 as in T4(i), not the shorter "
    "c_2 = a_2 + (n + beta_2)/q_2";

void prepare(const FRParams& params, const SpaceSpec& spaces) {
  params.validate();
  spaces.validate();
}

Rational q_min(const SpaceSpec& s) { return std::min(s.q[0], s.q[1]); }

void gate_pq(const SpaceSpec& s, const char* theorem) {
  const Rational p_minus = std::min(s.p[0], s.p[1]);
  const Rational p_plus = std::max(s.p[0], s.p[1]);
  if (!(p_minus > 1 && p_plus <= q_min(s))) {
    throw RangeGateError(std::string(theorem) + " requires 1 < p_- <= p_+ <= q_- < infinity");
  }
}

void gate_one_sided(const SpaceSpec& s, Factor l1_factor, const char* theorem) {
  const std::size_t one = index(l1_factor);
  const std::size_t other_i = index(other(l1_factor));
  if (!(s.p[one] == 1 && s.p[other_i] > 1 && s.p[other_i] <= q_min(s))) {
    throw RangeGateError(std::string(theorem) + " requires p_" + std::to_string(one + 1) + " = 1 and 1 < p_" +
                         std::to_string(other_i + 1) + " <= q_- < infinity");
  }
}

void gate_l1(const SpaceSpec& s) {
  for (std::size_t i = 0; i < 2; ++i) {
    if (!(s.p[i] == 1 && s.q[i] >= 1)) throw RangeGateError("T5 requires 1 = p_i <= q_i < infinity");
  }
}

Clause q_side(const FRParams& pr, const SpaceSpec& sp, std::size_t i) {
  return make_clause(indexed("-q# a# < beta# + 1", i), -sp.q[i] * pr.a[i], "<", sp.beta[i] + 1);
}

Clause p_side(const FRParams& pr, const SpaceSpec& sp, std::size_t i) {
  return make_clause(indexed("alpha# + 1 < p# (b# + 1)", i), sp.alpha[i] + 1, "<", sp.p[i] * (pr.b[i] + 1));
}

Clause alpha_below_b(const FRParams& pr, const SpaceSpec& sp, std::size_t i) {
  return make_clause(indexed("alpha# < b#", i), sp.alpha[i], "<", pr.b[i]);
}

Clause c_equation(const FRParams& pr, const SpaceSpec& sp, std::size_t i) {
  return make_clause(indexed("c# = n + a# + b# + (n + beta#)/q# - (n + alpha#)/p#", i), pr.c[i], "=",
                     thm1_c_value(pr, sp, static_cast<Factor>(i)));
}

Clause c_equation_l1(const FRParams& pr, const SpaceSpec& sp, std::size_t i) {
  return make_clause(indexed("c# = a# + b# - alpha# + (n + beta#)/q#", i), pr.c[i], "=",
                     l1_c_value(pr, sp, static_cast<Factor>(i)));
}

Clause c_large(const FRParams& pr, std::size_t i) {
  return make_clause(indexed("c# > 3n/2", i), pr.c[i], ">", Rational(3 * pr.n, 2));
}

TheoremVerdict finish(TheoremId id, std::vector<Clause> clauses, std::vector<std::string> warnings = {}) {
  TheoremVerdict v;
  v.theorem = id;
  v.holds = all_hold(clauses);
  v.clauses = std::move(clauses);
  v.warnings = std::move(warnings);
  return v;
}

/// Clause list for one factor: necessary-condition type (p > 1) or L¹ type (p = 1).
void append_factor(std::vector<Clause>& out, const FRParams& pr, const SpaceSpec& sp, std::size_t i,
                   bool l1_type, bool with_c_large) {
  if (with_c_large) out.push_back(c_large(pr, i));
  out.push_back(q_side(pr, sp, i));
  if (l1_type) {
    out.push_back(alpha_below_b(pr, sp, i));
    out.push_back(c_equation_l1(pr, sp, i));
  } else {
    out.push_back(p_side(pr, sp, i));
    out.push_back(c_equation(pr, sp, i));
  }
}

}  // namespace

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::t1_necessary: return "T1-necessary";
    case TheoremId::t2_sufficient: return "T2-sufficient";
    case TheoremId::t3i: return "T3i";
    case TheoremId::t3ii: return "T3ii";
    case TheoremId::t4i: return "T4i";
    case TheoremId::t4ii: return "T4ii";
    case TheoremId::t5i: return "T5i";
    case TheoremId::t5ii: return "T5ii";
  }
  return "T1-necessary";
}

TheoremId theorem_from_string(const std::string& text) {
  for (auto id : {TheoremId::t1_necessary, TheoremId::t2_sufficient, TheoremId::t3i, TheoremId::t3ii,
                  TheoremId::t4i, TheoremId::t4ii, TheoremId::t5i, TheoremId::t5ii}) {
    if (to_string(id) == text) return id;
  }
  if (text == "T1" || text == "t1") return TheoremId::t1_necessary;
  if (text == "T2" || text == "t2") return TheoremId::t2_sufficient;
  throw ParseError("unknown theorem id '" + text + "'");
}

Rational thm1_c_value(const FRParams& pr, const SpaceSpec& sp, Factor f) {
  const std::size_t i = index(f);
  return pr.n + pr.a[i] + pr.b[i] + (pr.n + sp.beta[i]) / sp.q[i] - (pr.n + sp.alpha[i]) / sp.p[i];
}

Rational l1_c_value(const FRParams& pr, const SpaceSpec& sp, Factor f) {
  const std::size_t i = index(f);
  return pr.a[i] + pr.b[i] - sp.alpha[i] + (pr.n + sp.beta[i]) / sp.q[i];
}

TheoremVerdict thm1_necessary(const FRParams& params, const SpaceSpec& spaces) {
  prepare(params, spaces);
  gate_pq(spaces, "T1");
  std::vector<Clause> clauses;
  for (std::size_t i = 0; i < 2; ++i) append_factor(clauses, params, spaces, i, false, false);
  return finish(TheoremId::t1_necessary, std::move(clauses));
}

TheoremVerdict thm2_sufficient(const FRParams& params, const SpaceSpec& spaces) {
  prepare(params, spaces);
  gate_pq(spaces, "T2");
  std::vector<Clause> clauses;
  for (std::size_t i = 0; i < 2; ++i) append_factor(clauses, params, spaces, i, false, true);
  return finish(TheoremId::t2_sufficient, std::move(clauses), {kT2Warning});
}

TheoremVerdict thm3_conditions(const FRParams& params, const SpaceSpec& spaces, Part part) {
  prepare(params, spaces);
  gate_one_sided(spaces, Factor::first, "T3");
  const bool strong = part == Part::ii;
  std::vector<Clause> clauses;
  append_factor(clauses, params, spaces, 0, true, strong);
  append_factor(clauses, params, spaces, 1, false, strong);
  return finish(strong ? TheoremId::t3ii : TheoremId::t3i, std::move(clauses));
}

TheoremVerdict thm4_conditions(const FRParams& params, const SpaceSpec& spaces, Part part) {
  prepare(params, spaces);
  gate_one_sided(spaces, Factor::second, "T4");
  const bool strong = part == Part::ii;
  std::vector<Clause> clauses;
  append_factor(clauses, params, spaces, 0, false, strong);
  append_factor(clauses, params, spaces, 1, true, strong);
  std::vector<std::string> warnings;
  if (strong) warnings.emplace_back(kT4Warning);
  return finish(strong ? TheoremId::t4ii : TheoremId::t4i, std::move(clauses), std::move(warnings));
}

TheoremVerdict thm5_conditions(const FRParams& params, const SpaceSpec& spaces, Part part) {
  prepare(params, spaces);
  gate_l1(spaces);
  const bool strong = part == Part::ii;
  std::vector<Clause> clauses;
  for (std::size_t i = 0; i < 2; ++i) append_factor(clauses, params, spaces, i, true, strong);
  return finish(strong ? TheoremId::t5ii : TheoremId::t5i, std::move(clauses));
}

TheoremVerdict evaluate_theorem(TheoremId id, const FRParams& params, const SpaceSpec& spaces) {
  switch (id) {
    case TheoremId::t1_necessary: return thm1_necessary(params, spaces);
    case TheoremId::t2_sufficient: return thm2_sufficient(params, spaces);
    case TheoremId::t3i: return thm3_conditions(params, spaces, Part::i);
    case TheoremId::t3ii: return thm3_conditions(params, spaces, Part::ii);
    case TheoremId::t4i: return thm4_conditions(params, spaces, Part::i);
    case TheoremId::t4ii: return thm4_conditions(params, spaces, Part::ii);
    case TheoremId::t5i: return thm5_conditions(params, spaces, Part::i);
    case TheoremId::t5ii: return thm5_conditions(params, spaces, Part::ii);
  }
  throw Error("unreachable theorem id");
}

std::vector<TheoremId> applicable_theorems(const SpaceSpec& spaces) {
  const bool first_l1 = spaces.p[0] == 1;
  const bool second_l1 = spaces.p[1] == 1;
  if (first_l1 && second_l1) return {TheoremId::t5i, TheoremId::t5ii};
  if (first_l1) return {TheoremId::t3i, TheoremId::t3ii};
  if (second_l1) return {TheoremId::t4i, TheoremId::t4ii};
  return {TheoremId::t1_necessary, TheoremId::t2_sufficient};
}

}  // namespace frcone
