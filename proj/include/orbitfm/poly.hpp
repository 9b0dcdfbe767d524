#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbitfm/chart.hpp"
#include "orbitfm/rational.hpp"

namespace orbitfm {

using Exponent = std::int16_t;

/// Exponent vector indexed by chart variable position. Unused slots are 0.
class Monomial {
 public:
  Monomial() = default;

  Exponent operator[](std::size_t i) const { return e_[i]; }
  Exponent& operator[](std::size_t i) { return e_[i]; }

  int total_degree() const;
  bool is_one() const;

  Monomial& operator*=(const Monomial& o);
  Monomial& operator/=(const Monomial& o);
  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }
  friend Monomial operator/(Monomial a, const Monomial& b) { return a /= b; }
  friend bool operator==(const Monomial&, const Monomial&) = default;

  static Monomial unit(std::size_t var, Exponent power = 1);

 private:
  std::array<Exponent, Chart::kMaxVars> e_{};
};

/// Descending graded-lex: higher total degree first, then lexicographically
/// larger exponent vector (variable 0 most significant).
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse Laurent polynomial with exact rational coefficients on a chart.
///
/// Terms are kept canonical (no zero coefficients, fixed order), so equality
/// of polynomials is equality of term maps. A default-constructed Poly is a
/// chart-less zero that adopts the chart of whatever it is combined with.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GradedLexGreater>;

  Poly() = default;
  explicit Poly(ChartPtr chart) : chart_(std::move(chart)) {}

  static Poly constant(ChartPtr chart, const Rational& c);
  static Poly variable(ChartPtr chart, std::size_t index);
  static Poly variable(ChartPtr chart, const std::string& name);
  static Poly term(ChartPtr chart, const Monomial& m, const Rational& c);

  const ChartPtr& chart() const { return chart_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Single term (a unit of the Laurent ring when its variables are Laurent).
  bool is_monomial() const { return terms_.size() == 1; }
  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const { return coefficient(Monomial{}); }

  /// Adds c*m, dropping the term if it cancels.
  void add_term(const Monomial& m, const Rational& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend Poly operator-(const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b);

 private:
  void adopt_chart(const Poly& o);

  ChartPtr chart_;
  TermMap terms_;
};

Poly pow(const Poly& p, unsigned exponent);

/// r with r*q == p exactly, in the Laurent ring of p's chart.
/// Throws NonExactDivision when no such r exists.
Poly exact_div(const Poly& p, const Poly& q);

/// Formal partial derivative by a ring variable.
Poly diff(const Poly& p, std::size_t var);
Poly diff(const Poly& p, const std::string& var_name);

/// Derivative along a chart coordinate; for an exponential coordinate this is
/// d/d(explicit variable) + E d/dE.
Poly diff_coord(const Poly& p, std::size_t coord);

/// x d/dx.
Poly euler_diff(const Poly& p, std::size_t var);

/// Replaces every variable of p's chart by a polynomial on `target`.
/// `images[i]` is the image of variable i. A variable occurring with a negative
/// exponent must map to a single term; otherwise NonUnitLaurentSubstitution.
Poly substitute(const Poly& p, const ChartPtr& target, const std::vector<Poly>& images);

/// Name-keyed substitution. The target chart is taken from the bindings.
/// Unbound variables map to the variable of the same name in the target
/// chart (or to themselves when the chart is unchanged).
Poly substitute(const Poly& p, const std::map<std::string, Poly>& bindings);

/// Transfers p to a chart that contains all of p's variables by name.
Poly rechart(const Poly& p, const ChartPtr& target);

struct DegreeResult {
  /// Set when all terms share one weighted degree (unset for the zero poly).
  std::optional<Rational> degree;
  bool homogeneous = true;
  std::vector<Monomial> offending;
};

DegreeResult weighted_degree(const Poly& p);
Rational monomial_weight(const Chart& chart, const Monomial& m);

/// Largest and smallest exponent of a variable across all terms.
int max_exponent(const Poly& p, std::size_t var);
int min_exponent(const Poly& p, std::size_t var);

/// "-1/48*t2^2*t3^2 + t1" style text; round-trips through parse_poly.
std::string to_string(const Poly& p);
std::string monomial_to_string(const Chart& chart, const Monomial& m);

/// Parses sums of terms like "4*E*y1 - 1/6*y3 + y2^-1". Variables must exist
/// in `chart`. Throws std::invalid_argument on syntax errors.
Poly parse_poly(const ChartPtr& chart, std::string_view text);

}  // namespace orbitfm
