#include "orbitfm/rootdata.hpp"

#include <algorithm>
#include <cctype>

#include "orbitfm/errors.hpp"

namespace orbitfm {

std::string to_string(Family f) { return f == Family::B ? "B" : "C"; }

Family parse_family(const std::string& text) {
  if (text.size() == 1) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    if (c == 'B') return Family::B;
    if (c == 'C') return Family::C;
  }
  throw InvalidSpec("family must be B or C, got '" + text + "'");
}

void RootSystemSpec::validate() const {
  if (rank < 1) throw InvalidSpec("rank must be positive, got " + std::to_string(rank));
  if (vertex < 1 || vertex > rank) {
    throw InvalidSpec("vertex must satisfy 1 <= k <= l, got k=" + std::to_string(vertex) +
                      " l=" + std::to_string(rank));
  }
  if (family == Family::B && rank < 2) throw InvalidSpec("B_l needs l >= 2");
}

std::string RootSystemSpec::label() const {
  return to_string(family) + std::to_string(rank) + ",k=" + std::to_string(vertex);
}

Rational flat_degree(int rank, int vertex, int i) {
  const int l = rank;
  const int k = vertex;
  if (i >= 1 && i <= k) return make_rational(i, k);
  if (i > k && i <= l) {
    Rational r(2 * l - 2 * i + 1, 2 * (l - k));
    r.canonicalize();
    return r;
  }
  if (i == l + 1) return Rational(0);
  throw InvalidSpec("flat degree index out of range");
}

namespace {

std::vector<Rational> c_degrees(int l, int k) {
  std::vector<Rational> d;
  for (int j = 1; j <= l; ++j) d.emplace_back(std::min(j, k));
  return d;
}

std::vector<Rational> b_degrees(int l, int k) {
  std::vector<Rational> d;
  if (k < l) {
    for (int j = 1; j <= l - 1; ++j) d.emplace_back(std::min(j, k));
    Rational last(k, 2);
    last.canonicalize();
    d.push_back(last);
  } else {
    for (int j = 1; j <= l - 1; ++j) {
      Rational v(j, 2);
      v.canonicalize();
      d.push_back(v);
    }
    Rational last(l, 4);
    last.canonicalize();
    d.push_back(last);
  }
  return d;
}

}  // namespace

RootData build_root_data(const RootSystemSpec& spec) {
  spec.validate();
  const int l = spec.rank;
  const int k = spec.vertex;
  RootData rd;
  rd.spec = spec;
  rd.degrees.cartan_det = 2;
  rd.degrees.d = spec.family == Family::C ? c_degrees(l, k) : b_degrees(l, k);
  for (int i = 1; i <= l + 1; ++i) rd.degrees.d_tilde.push_back(flat_degree(l, k, i));

  auto& m = rd.metric.m;
  m.assign(static_cast<std::size_t>(l + 1), std::vector<Rational>(static_cast<std::size_t>(l + 1)));
  for (int a = 1; a <= l; ++a) {
    for (int b = 1; b <= l; ++b) {
      const int lo = std::min(a, b);
      const int hi = std::max(a, b);
      Rational v;
      if (spec.family == Family::C) {
        v = lo;
      } else {
        // (1 - delta_{n,l}/2) m - (l/4) delta_{n,l} delta_{m,l}, m <= n
        v = lo;
        if (hi == l) v = make_rational(lo, 2);
        if (lo == l && hi == l) v -= make_rational(l, 4);
        v.canonicalize();
      }
      m[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] = v;
    }
  }
  const Rational d_k = rd.degrees.d[static_cast<std::size_t>(k - 1)];
  m[static_cast<std::size_t>(l)][static_cast<std::size_t>(l)] = Rational(-1) / d_k;
  return rd;
}

int dual_index(const RootSystemSpec& spec, int i) {
  spec.validate();
  const int l = spec.rank;
  const int k = spec.vertex;
  if (i < 1 || i > l + 1) throw InvalidSpec("dual_index: index out of range");
  if (i == k) return l + 1;
  if (i == l + 1) return k;
  if (i < k) return k - i;
  return k + 1 + l - i;
}

}  // namespace orbitfm
