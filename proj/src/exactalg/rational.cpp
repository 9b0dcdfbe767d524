#include "orbitfm/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace orbitfm {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_fraction_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_display_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return to_fraction_string(r);
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) pos = 1;
  if (pos == text.size()) {
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  }
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    }
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return Integer(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  Integer num = parse_integer(text.substr(0, slash), text);
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  Integer den = parse_integer(den_text, text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational rational_pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("negative power of zero");
    return rational_pow(Rational(1) / base, -exponent);
  }
  Rational result = 1;
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    b *= b;
    exponent >>= 1;
  }
  return result;
}

}  // namespace orbitfm
