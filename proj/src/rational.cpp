#include "rational.hpp"

#include <cctype>

#include "errors.hpp"

namespace frcone {

namespace {

boost::multiprecision::cpp_int parse_integer(std::string_view digits, int line, int column) {
  if (digits.empty()) throw ParseError("expected digits in rational", line, column);
  boost::multiprecision::cpp_int value = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const char ch = digits[i];
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw ParseError(std::string("unexpected character '") + ch + "' in rational",
                       line, column + static_cast<int>(i));
    }
    value = value * 10 + (ch - '0');
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text, int line, int column_offset) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  const int col0 = column_offset + static_cast<int>(begin) + 1;
  std::string_view body = text.substr(begin, end - begin);
  if (body.empty()) throw ParseError("empty rational", line, col0);

  bool negative = false;
  std::size_t pos = 0;
  if (body[0] == '-' || body[0] == '+') {
    negative = body[0] == '-';
    pos = 1;
  }
  const std::size_t slash = body.find('/', pos);
  const std::string_view num_text = body.substr(pos, slash == std::string_view::npos ? body.npos : slash - pos);
  auto num = parse_integer(num_text, line, col0 + static_cast<int>(pos));
  boost::multiprecision::cpp_int den = 1;
  if (slash != std::string_view::npos) {
    den = parse_integer(body.substr(slash + 1), line, col0 + static_cast<int>(slash) + 1);
    if (den == 0) throw ParseError("zero denominator", line, col0 + static_cast<int>(slash) + 1);
  }
  Rational value(num, den);
  return negative ? Rational(-value) : value;
}

std::string to_wire(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational make_rational(long long num, long long den) { return Rational(num, den); }

Rational conjugate_reciprocal(const Rational& p) { return Rational(1) - Rational(1) / p; }

}  // namespace frcone
