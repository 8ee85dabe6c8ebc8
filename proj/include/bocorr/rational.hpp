#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bocorr {

using Rational = mpq_class;

// Accepts "p", "-p" or "p/q". Throws ParseError.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
Rational pow(const Rational& base, long exponent);

}  // namespace bocorr
