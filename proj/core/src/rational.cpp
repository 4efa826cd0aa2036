#include "epr/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace epr {
namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw std::invalid_argument("missing digits in number '" + std::string(whole) + "'");
  }
  cpp_int value = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("invalid number '" + std::string(whole) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

cpp_int pow10(long exponent) {
  cpp_int result = 1;
  for (long i = 0; i < exponent; ++i) result *= 10;
  return result;
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    cpp_int magnitude = parse_digits(exp_text, whole);
    if (magnitude > 4000) throw std::invalid_argument("exponent out of range in '" + std::string(whole) + "'");
    exponent = magnitude.convert_to<long>();
    if (exp_negative) exponent = -exponent;
    text = text.substr(0, e);
  }
  std::string_view int_part = text;
  std::string_view frac_part;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) {
    throw std::invalid_argument("invalid number '" + std::string(whole) + "'");
  }
  cpp_int numerator = int_part.empty() ? cpp_int(0) : parse_digits(int_part, whole);
  if (!frac_part.empty()) {
    numerator = numerator * pow10(static_cast<long>(frac_part.size())) + parse_digits(frac_part, whole);
  }
  exponent -= static_cast<long>(frac_part.size());
  Rational value = exponent >= 0 ? Rational(numerator * pow10(exponent))
                                 : Rational(numerator, pow10(-exponent));
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(text.substr(0, slash), text);
    Rational den = parse_decimal(text.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return num / den;
  }
  return parse_decimal(text, text);
}

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite weight");
  int exponent = 0;
  double mantissa = std::frexp(value, &exponent);
  // 53 significant bits fit in a scaled integer exactly.
  auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  cpp_int num = scaled;
  if (exponent >= 0) return Rational(num << exponent);
  return Rational(num, cpp_int(1) << -exponent);
}

}  // namespace epr
