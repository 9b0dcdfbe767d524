#include <map>

#include "orbitfm/errors.hpp"
#include "orbitfm/frobenius.hpp"

namespace orbitfm {

namespace {

Rational q(long a, long b) { return make_rational(a, b); }

std::vector<Fixture> make_fixtures() {
  std::vector<Fixture> out;

  Fixture c3k1;
  c3k1.id = "c3k1";
  c3k1.spec = {Family::C, 3, 1};
  c3k1.z_of_y = {"y1 - 2*E", "y2 - 1/6*y3", "y3"};
  c3k1.w_exponents = {q(-1, 4), q(1, 4)};
  c3k1.t_of_w = {"w1", "w2", "w3"};
  c3k1.potential =
      "1/2*t1^2*t4 + 1/2*t1*t2*t3 - 1/48*t2^2*t3^2 + 1/1440*t2*t3^5 - 1/36288*t3^8"
      " + t2*t3*E + 1/6*t3^4*E + 1/2*E^2 + 1/48*t2^3*t3^-1";
  c3k1.euler = {{Rational(1), q(3, 4), q(1, 4)}, Rational(1)};
  out.push_back(c3k1);

  Fixture c4k1;
  c4k1.id = "c4k1";
  c4k1.spec = {Family::C, 4, 1};
  c4k1.z_of_y = {"y1 - 2*E", "y2 - 1/6*y3 + 1/30*y4", "y3 - 1/4*y4", "y4"};
  c4k1.w_exponents = {q(-1, 6), q(-2, 3), q(1, 6)};
  c4k1.t_of_w = {"w1", "w2 - 1/12*w3^2*w4", "w3*w4", "w4"};
  c4k1.potential =
      "1/2*t1^2*t5 + 1/2*t1*t2*t4 - 1/6912*t3^4 + 1/17280*t3^3*t4^3"
      " - 1/288*t2*t4*t3^2 - 1/34560*t4^6*t3^2 + 1/24*t1*t3^2 + 1/1440*t3*t4^4*t2"
      " - 1/48*t2^2*t4^2 - 1/60480*t4^7*t2 + 1/345600*t4^9*t3 - 1/7603200*t4^12"
      " + 1/12*E*t3^2 + 1/6*E*t3*t4^3 + 1/120*E*t4^6 + t2*t4*E + 1/2*E^2"
      " + 1/24*t3*t2^2*t4^-1 - 1/216*t2*t3^3*t4^-2 + 1/4320*t3^5*t4^-3";
  c4k1.euler = {{Rational(1), q(5, 6), q(1, 2), q(1, 6)}, Rational(1)};
  out.push_back(c4k1);

  Fixture c4k2;
  c4k2.id = "c4k2";
  c4k2.spec = {Family::C, 4, 2};
  c4k2.z_of_y = {"y1 - 4*E", "y2 - 2*y1*E + 6*E^2", "y3 - 1/6*y4", "y4"};
  c4k2.w_exponents = {q(-1, 4), q(1, 4)};
  c4k2.t_of_w = {"w1", "w2", "w3", "w4"};
  c4k2.potential =
      "1/2*t2^2*t5 + 1/4*t1^2*t2 + 1/2*t4*t3*t2 + 1/1440*t4^5*t3 - 1/48*t4^2*t3^2"
      " - 1/36288*t4^8 - 1/96*t1^4 + 1/2*E^2*t1^2 + 1/6*E*t1*t4^4 + 2/3*t4^4*E^2"
      " + E*t1*t3*t4 + t3*t4*E^2 + 1/4*E^4 + 1/48*t3^3*t4^-1";
  c4k2.euler = {{q(1, 2), Rational(1), q(3, 4), q(1, 4)}, q(1, 2)};
  out.push_back(c4k2);
  return out;
}

std::vector<std::string> term_diff(const Poly& want, const Poly& got) {
  std::vector<std::string> out;
  const ChartPtr& chart = got.chart();
  for (const auto& [m, c] : want.terms()) {
    const Rational g = got.coefficient(m);
    if (g != c) out.push_back(monomial_to_string(*chart, m) + ": expected " + c.get_str() + ", got " + g.get_str());
  }
  for (const auto& [m, c] : got.terms()) {
    if (want.coefficient(m) == 0) out.push_back(monomial_to_string(*chart, m) + ": unexpected " + c.get_str());
  }
  return out;
}

}  // namespace

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = make_fixtures();
  return all;
}

const Fixture& fixture(const std::string& id) {
  for (const auto& f : fixtures()) {
    if (f.id == id) return f;
  }
  throw InvalidSpec("unknown fixture '" + id + "'");
}

FixtureComparison compare_fixture(const FrobeniusStructure& s, const Fixture& f) {
  FixtureComparison out;
  if (!(s.spec == f.spec)) {
    out.differences.push_back("structure is " + s.spec.label() + ", fixture is " + f.spec.label());
    return out;
  }
  const int l = f.spec.rank;
  const int k = f.spec.vertex;
  const int n = l - k;
  auto add = [&](const std::string& where, const std::vector<std::string>& diffs) {
    for (const auto& d : diffs) out.differences.push_back(where + ": " + d);
  };

  const CoordMap& yz = s.flat.z.y_to_z;
  for (int j = 1; j <= l; ++j) {
    const auto jj = static_cast<std::size_t>(j - 1);
    add("z" + std::to_string(j), term_diff(parse_poly(yz.source, f.z_of_y[jj]), yz.target_in_source->at(jj)));
  }
  const CoordMap& zw = s.flat.w.z_to_w;
  const auto sv = static_cast<std::size_t>(l - 1);
  for (int j = k + 1; j <= l; ++j) {
    Rational got;
    const Poly& img = zw.source_in_target[static_cast<std::size_t>(j - 1)];
    const int e = img.terms().begin()->first[sv];
    got = j == l ? make_rational(1, e) : make_rational(-e, 2 * n);
    const Rational& want = f.w_exponents[static_cast<std::size_t>(j - k - 1)];
    if (got != want) {
      out.differences.push_back("w" + std::to_string(j) + ": exponent of z" + std::to_string(l) + " expected " +
                                want.get_str() + ", got " + got.get_str());
    }
  }
  for (int j = 1; j <= l; ++j) {
    const auto jj = static_cast<std::size_t>(j - 1);
    add("t" + std::to_string(j), term_diff(parse_poly(s.flat.w.chart, f.t_of_w[jj]), s.flat.t.t_of_w[jj]));
  }
  if (s.euler.weights != f.euler.weights || s.euler.last != f.euler.last) {
    out.differences.push_back("Euler field differs");
  }

  const Poly want = parse_poly(s.chart, f.potential);
  std::vector<std::string> fdiff = term_diff(want, s.potential);
  if (!fdiff.empty()) {
    // s -> -s flips t^{k+1}..t^l
    std::map<std::string, Poly> flip;
    for (int m = k + 1; m <= l; ++m) {
      flip.emplace("t" + std::to_string(m), -Poly::variable(s.chart, static_cast<std::size_t>(m - 1)));
    }
    if (term_diff(substitute(want, flip), s.potential).empty()) {
      out.sign_flipped = true;
      fdiff.clear();
    }
  }
  add("F", fdiff);
  out.match = out.differences.empty();
  return out;
}

}  // namespace orbitfm
