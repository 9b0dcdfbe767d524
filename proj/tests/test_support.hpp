#pragma once

#include "doctest.h"
#include "orbitfm/poly.hpp"

namespace doctest {
template <>
struct StringMaker<orbitfm::Poly> {
  static String convert(const orbitfm::Poly& p) { return orbitfm::to_string(p).c_str(); }
};
template <>
struct StringMaker<orbitfm::Rational> {
  static String convert(const orbitfm::Rational& r) { return orbitfm::to_display_string(r).c_str(); }
};
}  // namespace doctest
