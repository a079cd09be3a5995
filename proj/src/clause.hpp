#pragma once

#include <string>
#include <vector>

#include "rational.hpp"

namespace frcone {

/// One exactly-evaluated (in)equality "lhs REL rhs".
struct Clause {
  std::string text;
  std::string relation;  // "<", ">", "=" or "<=", ">="
  Rational lhs;
  Rational rhs;
  bool holds = false;

  friend bool operator==(const Clause&, const Clause&) = default;
};

inline Clause make_clause(std::string text, const Rational& lhs, std::string relation, const Rational& rhs) {
  bool holds = false;
  if (relation == "<") holds = lhs < rhs;
  else if (relation == ">") holds = lhs > rhs;
  else if (relation == "=") holds = lhs == rhs;
  else if (relation == "<=") holds = lhs <= rhs;
  else if (relation == ">=") holds = lhs >= rhs;
  return Clause{std::move(text), std::move(relation), lhs, rhs, holds};
}

inline bool all_hold(const std::vector<Clause>& clauses) {
  for (const auto& c : clauses) {
    if (!c.holds) return false;
  }
  return true;
}

/// Replaces every '#' in a clause template with the factor number (1 or 2).
inline std::string indexed(std::string text, std::size_t factor_index) {
  const char digit = static_cast<char>('1' + factor_index);
  for (auto& ch : text) {
    if (ch == '#') ch = digit;
  }
  return text;
}

}  // namespace frcone
