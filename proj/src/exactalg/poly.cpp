#include "orbitfm/poly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "orbitfm/errors.hpp"

namespace orbitfm {

// Monomial

int Monomial::total_degree() const {
  int d = 0;
  for (auto x : e_) d += x;
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(e_.begin(), e_.end(), [](Exponent x) { return x == 0; });
}

namespace {

Exponent checked(int value) {
  if (value > std::numeric_limits<Exponent>::max() || value < std::numeric_limits<Exponent>::min()) {
    throw std::overflow_error("monomial exponent overflow");
  }
  return static_cast<Exponent>(value);
}

}  // namespace

Monomial& Monomial::operator*=(const Monomial& o) {
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] = checked(e_[i] + o.e_[i]);
  return *this;
}

Monomial& Monomial::operator/=(const Monomial& o) {
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] = checked(e_[i] - o.e_[i]);
  return *this;
}

Monomial Monomial::unit(std::size_t var, Exponent power) {
  Monomial m;
  m[var] = power;
  return m;
}

bool GradedLexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const int da = a.total_degree();
  const int db = b.total_degree();
  if (da != db) return da > db;
  for (std::size_t i = 0; i < Chart::kMaxVars; ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

// Poly

Poly Poly::constant(ChartPtr chart, const Rational& c) {
  Poly p(std::move(chart));
  p.add_term(Monomial{}, c);
  return p;
}

Poly Poly::variable(ChartPtr chart, std::size_t index) {
  if (index >= chart->num_vars()) throw std::out_of_range("variable index out of range");
  Poly p(std::move(chart));
  p.add_term(Monomial::unit(index), 1);
  return p;
}

Poly Poly::variable(ChartPtr chart, const std::string& name) {
  const auto idx = chart->var_index(name);
  return variable(std::move(chart), idx);
}

Poly Poly::term(ChartPtr chart, const Monomial& m, const Rational& c) {
  Poly p(std::move(chart));
  p.add_term(m, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Poly::adopt_chart(const Poly& o) {
  if (!o.chart_) return;
  if (!chart_) {
    chart_ = o.chart_;
    return;
  }
  if (!compatible(chart_, o.chart_)) {
    throw ChartMismatch("'" + chart_->name() + "' vs '" + o.chart_->name() + "'");
  }
}

Poly& Poly::operator+=(const Poly& o) {
  adopt_chart(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  adopt_chart(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out(a.chart_);
  out.adopt_chart(b);
  if (a.is_zero() || b.is_zero()) return out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      auto [it, inserted] = out.terms_.try_emplace(ma * mb, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  std::erase_if(out.terms_, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Poly operator-(const Poly& a) {
  Poly out = a;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.chart_ && b.chart_ && !compatible(a.chart_, b.chart_)) return false;
  return a.terms_ == b.terms_;
}

Poly pow(const Poly& p, unsigned exponent) {
  Poly result = Poly::constant(p.chart(), 1);
  Poly base = p;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

namespace {

void require_laurent_ok(const Chart& chart, const Monomial& m, const char* context) {
  for (std::size_t i = 0; i < chart.num_vars(); ++i) {
    if (m[i] < 0 && !chart.var(i).laurent) {
      throw NonExactDivision(std::string(context) + ": negative power of non-Laurent variable '" +
                             chart.var(i).name + "'");
    }
  }
}

}  // namespace

Poly exact_div(const Poly& p, const Poly& q) {
  if (q.is_zero()) throw NonExactDivision("division by zero polynomial");
  ChartPtr chart = p.chart() ? p.chart() : q.chart();
  if (p.chart() && q.chart() && !compatible(p.chart(), q.chart())) {
    throw ChartMismatch("'" + p.chart()->name() + "' vs '" + q.chart()->name() + "'");
  }
  Poly quotient(chart);
  if (p.is_zero()) return quotient;

  const std::size_t nv = chart->num_vars();
  // Newton polytope of p is the Minkowski sum of those of the quotient and q,
  // so the quotient's exponents lie in a known box.
  std::vector<int> lo(nv), hi(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    lo[i] = min_exponent(p, i) - min_exponent(q, i);
    hi[i] = max_exponent(p, i) - max_exponent(q, i);
    if (lo[i] > hi[i]) throw NonExactDivision("exponent ranges incompatible");
  }

  const auto& [lead_q, lead_c] = *q.terms().begin();
  Poly remainder = p;
  while (!remainder.is_zero()) {
    const auto& [lead_r, lead_rc] = *remainder.terms().begin();
    Monomial m = lead_r / lead_q;
    for (std::size_t i = 0; i < nv; ++i) {
      if (m[i] < lo[i] || m[i] > hi[i]) {
        throw NonExactDivision("remainder does not vanish (" + to_string(p) + ") / (" +
                               to_string(q) + ")");
      }
    }
    require_laurent_ok(*chart, m, "exact_div");
    Rational c = lead_rc / lead_c;
    quotient.add_term(m, c);
    remainder -= Poly::term(chart, m, c) * q;
  }
  return quotient;
}

Poly diff(const Poly& p, std::size_t var) {
  Poly out(p.chart());
  for (const auto& [m, c] : p.terms()) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] = static_cast<Exponent>(d[var] - 1);
    out.add_term(d, c * m[var]);
  }
  return out;
}

Poly diff(const Poly& p, const std::string& var_name) {
  return diff(p, p.chart()->var_index(var_name));
}

Poly euler_diff(const Poly& p, std::size_t var) {
  Poly out(p.chart());
  for (const auto& [m, c] : p.terms()) {
    if (m[var] != 0) out.add_term(m, c * m[var]);
  }
  return out;
}

Poly diff_coord(const Poly& p, std::size_t coord) {
  if (!p.chart()) return p;
  const Coordinate& c = p.chart()->coord(coord);
  if (!c.is_exponential()) return diff(p, static_cast<std::size_t>(c.var));
  Poly out = euler_diff(p, static_cast<std::size_t>(c.exp_var));
  if (c.exp_scale != 1) out *= c.exp_scale;
  if (c.log_var >= 0) out += diff(p, static_cast<std::size_t>(c.log_var));
  return out;
}

namespace {

/// Caches powers of each image polynomial during a substitution.
class PowerCache {
 public:
  PowerCache(const ChartPtr& target, const std::vector<Poly>& images)
      : target_(target), images_(images), pos_(images.size()), neg_(images.size()) {}

  const Poly& get(std::size_t var, int e, const std::string& var_name) {
    auto& table = e >= 0 ? pos_[var] : neg_[var];
    const std::size_t n = static_cast<std::size_t>(e >= 0 ? e : -e);
    if (table.empty()) {
      table.push_back(Poly::constant(target_, 1));
      if (e < 0) {
        const Poly& img = images_[var];
        if (!img.is_monomial()) {
          throw NonUnitLaurentSubstitution("variable '" + var_name +
                                           "' has negative exponent but image " + to_string(img) +
                                           " is not a single term");
        }
        const auto& [m, c] = *img.terms().begin();
        Poly inv = Poly::term(target_, Monomial{} / m, Rational(1) / c);
        require_laurent_ok_target(m);
        table.push_back(inv);
      } else {
        table.push_back(images_[var]);
      }
    }
    while (table.size() <= n) table.push_back(table.back() * table[1]);
    return table[n];
  }

 private:
  void require_laurent_ok_target(const Monomial& m) const {
    for (std::size_t i = 0; i < target_->num_vars(); ++i) {
      if (m[i] > 0 && !target_->var(i).laurent) {
        throw NonUnitLaurentSubstitution("inverse of image needs negative power of non-Laurent '" +
                                         target_->var(i).name + "'");
      }
    }
  }

  ChartPtr target_;
  const std::vector<Poly>& images_;
  std::vector<std::vector<Poly>> pos_;
  std::vector<std::vector<Poly>> neg_;
};

}  // namespace

Poly substitute(const Poly& p, const ChartPtr& target, const std::vector<Poly>& images) {
  Poly out(target);
  if (p.is_zero()) return out;
  const Chart& src = *p.chart();
  if (images.size() != src.num_vars()) {
    throw ChartMismatch("substitution needs one image per variable of '" + src.name() + "'");
  }
  for (const auto& img : images) {
    if (img.chart() && !compatible(img.chart(), target)) {
      throw ChartMismatch("substitution image not on target chart '" + target->name() + "'");
    }
  }
  PowerCache cache(target, images);
  for (const auto& [m, c] : p.terms()) {
    Poly t = Poly::constant(target, c);
    for (std::size_t i = 0; i < src.num_vars(); ++i) {
      if (m[i] != 0) t *= cache.get(i, m[i], src.var(i).name);
    }
    out += t;
  }
  return out;
}

Poly substitute(const Poly& p, const std::map<std::string, Poly>& bindings) {
  if (!p.chart()) return p;
  ChartPtr target;
  for (const auto& [name, img] : bindings) {
    if (!img.chart()) continue;
    if (!target) {
      target = img.chart();
    } else if (!compatible(target, img.chart())) {
      throw ChartMismatch("bindings live on different charts");
    }
  }
  if (!target) target = p.chart();
  const Chart& src = *p.chart();
  std::vector<Poly> images;
  images.reserve(src.num_vars());
  for (std::size_t i = 0; i < src.num_vars(); ++i) {
    const auto& name = src.var(i).name;
    auto it = bindings.find(name);
    if (it != bindings.end()) {
      images.push_back(it->second.chart() ? it->second : Poly(target));
      continue;
    }
    const int j = target->find_var(name);
    if (j < 0) throw ChartMismatch("variable '" + name + "' unbound and absent from target");
    images.push_back(Poly::variable(target, static_cast<std::size_t>(j)));
  }
  return substitute(p, target, images);
}

Poly rechart(const Poly& p, const ChartPtr& target) {
  if (!p.chart()) return Poly(target);
  const Chart& src = *p.chart();
  std::vector<int> where(src.num_vars());
  for (std::size_t i = 0; i < src.num_vars(); ++i) {
    where[i] = target->find_var(src.var(i).name);
  }
  Poly out(target);
  for (const auto& [m, c] : p.terms()) {
    Monomial moved;
    for (std::size_t i = 0; i < src.num_vars(); ++i) {
      if (m[i] == 0) continue;
      if (where[i] < 0) {
        throw ChartMismatch("variable '" + src.var(i).name + "' absent from '" + target->name() + "'");
      }
      moved[static_cast<std::size_t>(where[i])] = m[i];
    }
    out.add_term(moved, c);
  }
  return out;
}

Rational monomial_weight(const Chart& chart, const Monomial& m) {
  Rational w = 0;
  for (std::size_t i = 0; i < chart.num_vars(); ++i) {
    if (m[i] != 0) w += chart.var(i).weight * m[i];
  }
  return w;
}

DegreeResult weighted_degree(const Poly& p) {
  DegreeResult r;
  if (p.is_zero()) return r;
  const Chart& chart = *p.chart();
  std::map<Rational, std::vector<Monomial>> by_degree;
  for (const auto& [m, c] : p.terms()) by_degree[monomial_weight(chart, m)].push_back(m);
  if (by_degree.size() == 1) {
    r.degree = by_degree.begin()->first;
    return r;
  }
  r.homogeneous = false;
  // The most populated degree is taken as the intended one.
  auto best = std::max_element(by_degree.begin(), by_degree.end(), [](const auto& a, const auto& b) {
    return a.second.size() < b.second.size();
  });
  for (const auto& [deg, ms] : by_degree) {
    if (deg == best->first) continue;
    r.offending.insert(r.offending.end(), ms.begin(), ms.end());
  }
  return r;
}

int max_exponent(const Poly& p, std::size_t var) {
  int best = std::numeric_limits<int>::min();
  for (const auto& [m, c] : p.terms()) best = std::max(best, static_cast<int>(m[var]));
  return p.is_zero() ? 0 : best;
}

int min_exponent(const Poly& p, std::size_t var) {
  int best = std::numeric_limits<int>::max();
  for (const auto& [m, c] : p.terms()) best = std::min(best, static_cast<int>(m[var]));
  return p.is_zero() ? 0 : best;
}

std::string monomial_to_string(const Chart& chart, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < chart.num_vars(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += chart.var(i).name;
    if (m[i] != 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    const std::string mono = monomial_to_string(*p.chart(), m);
    if (mono.empty()) {
      out += to_display_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += to_display_string(mag) + "*" + mono;
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(const ChartPtr& chart, std::string_view text) : chart_(chart), text_(text) {}

  Poly parse() {
    Poly out(chart_);
    skip_ws();
    if (peek() == '0' && text_.size() - pos_ == 1) return out;
    bool first = true;
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [m, c] = parse_term();
      out.add_term(m, c * sign);
    }
    if (first) fail("empty polynomial");
    return out;
  }

 private:
  std::pair<Monomial, Rational> parse_term() {
    Rational coeff = 1;
    Monomial m;
    bool need_factor = true;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = parse_number();
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
      } else {
        need_factor = false;
      }
    }
    while (need_factor) {
      std::string name = parse_name();
      int e = 1;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        e = parse_int();
      }
      const int idx = chart_->find_var(name);
      if (idx < 0) fail("unknown variable '" + name + "'");
      m[static_cast<std::size_t>(idx)] = static_cast<Exponent>(m[static_cast<std::size_t>(idx)] + e);
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
      } else {
        need_factor = false;
      }
    }
    return {m, coeff};
  }

  Rational parse_number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) {
      ++pos_;
    }
    return parse_rational(text_.substr(start, pos_ - start));
  }

  int parse_int() {
    int sign = 1;
    if (peek() == '-') {
      sign = -1;
      ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    return sign * std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  std::string parse_name() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected variable name");
    return std::string(text_.substr(start, pos_ - start));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("parse_poly at " + std::to_string(pos_) + ": " + msg + " in '" +
                                std::string(text_) + "'");
  }

  ChartPtr chart_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const ChartPtr& chart, std::string_view text) {
  return PolyParser(chart, text).parse();
}

}  // namespace orbitfm
