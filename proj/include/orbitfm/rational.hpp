#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace orbitfm {

/// Exact rational number, reduced with positive denominator (zero is 0/1).
/// GMP does not reduce mpq_class(n, d); build fractions with make_rational.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den);

/// "p/q" with q > 0; integers keep the "/1" so every coefficient has one shape.
std::string to_fraction_string(const Rational& r);

/// Shortest human form: "p" for integers, "p/q" otherwise.
std::string to_display_string(const Rational& r);

/// Parses "p", "p/q", "-p/q". Throws std::invalid_argument on malformed text
/// or a zero denominator.
Rational parse_rational(std::string_view text);

Rational rational_pow(const Rational& base, long exponent);

}  // namespace orbitfm
