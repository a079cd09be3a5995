#pragma once

#include <array>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace frcone {

/// Exact rational; every theorem-level comparison goes through this type.
using Rational = boost::multiprecision::cpp_rational;

/// An ordered pair (x₁, x₂) of exact rationals, one entry per operator factor.
using RationalPair = std::array<Rational, 2>;

/// Parses "num/den", "num" or "-num/den". Decimal points, exponents and zero
/// denominators are rejected. `column_offset` is added to error columns.
Rational parse_rational(std::string_view text, int line = 0, int column_offset = 0);

/// Canonical wire form "num/den" (den > 0, lowest terms; integers as "k/1").
std::string to_wire(const Rational& value);

double to_double(const Rational& value);

Rational make_rational(long long num, long long den = 1);

/// Hölder conjugate reciprocal 1/p' = 1 − 1/p; zero for p = 1.
Rational conjugate_reciprocal(const Rational& p);

}  // namespace frcone
