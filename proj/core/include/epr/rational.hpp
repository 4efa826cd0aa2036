#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace epr {

using Rational = boost::multiprecision::cpp_rational;

// Accepts integers, decimals with optional exponent ("2.5", "-1e-3") and
// fractions "p/q". Throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

// Exact conversion; every finite double is a dyadic rational.
Rational from_double(double value);

}  // namespace epr
