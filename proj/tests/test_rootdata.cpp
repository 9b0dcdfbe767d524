#include "test_support.hpp"
#include "orbitfm/errors.hpp"
#include "orbitfm/rootdata.hpp"

using namespace orbitfm;

namespace {

// Leading principal minors of a small rational matrix by fraction elimination.
bool positive_definite(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i][i] <= 0) return false;
    for (std::size_t r = i + 1; r < n; ++r) {
      const Rational f = a[r][i] / a[i][i];
      for (std::size_t c = i; c < n; ++c) a[r][c] -= f * a[i][c];
    }
  }
  return true;
}

}  // namespace

TEST_CASE("C3 metric block") {
  const RootData rd = build_root_data({Family::C, 3, 1});
  const int expected[3][3] = {{1, 1, 1}, {1, 2, 2}, {1, 2, 3}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) CHECK(rd.metric(i, j) == expected[i][j]);
    CHECK(rd.metric(i, 3) == 0);
  }
  CHECK(rd.metric(3, 3) == -1);
}

TEST_CASE("C4 k=2 metric and degrees") {
  const RootData rd = build_root_data({Family::C, 4, 2});
  CHECK(rd.metric(4, 4) == make_rational(-1, 2));
  CHECK(rd.degrees.d == std::vector<Rational>{1, 2, 2, 2});
  CHECK(rd.degrees.d_tilde ==
        std::vector<Rational>{make_rational(1, 2), Rational(1), make_rational(3, 4), make_rational(1, 4), Rational(0)});
  CHECK(rd.degrees.cartan_det == 2);
}

TEST_CASE("B metric corner and degrees") {
  for (int l = 2; l <= 6; ++l) {
    const RootData rd = build_root_data({Family::B, l, 1});
    const auto last = static_cast<std::size_t>(l - 1);
    CHECK(rd.metric(last, last) == make_rational(l, 4));
    CHECK(rd.metric(0, last) == make_rational(1, 2));
  }
  CHECK(build_root_data({Family::B, 3, 2}).degrees.d == std::vector<Rational>{1, 2, 1});
  CHECK(build_root_data({Family::B, 3, 3}).degrees.d ==
        std::vector<Rational>{make_rational(1, 2), Rational(1), make_rational(3, 4)});
  CHECK(build_root_data({Family::B, 3, 3}).metric(3, 3) == make_rational(-4, 3));
}

TEST_CASE("invalid specs") {
  CHECK_THROWS_AS(build_root_data({Family::C, 3, 0}), InvalidSpec);
  CHECK_THROWS_AS(build_root_data({Family::C, 3, 4}), InvalidSpec);
  CHECK_THROWS_AS(build_root_data({Family::B, 1, 1}), InvalidSpec);
  CHECK_THROWS_AS(parse_family("D"), InvalidSpec);
  CHECK(parse_family("b") == Family::B);
}

TEST_CASE("duality involution") {
  const RootSystemSpec c3{Family::C, 3, 1};
  CHECK(dual_index(c3, 1) == 4);
  CHECK(dual_index(c3, 2) == 3);
  CHECK(dual_index({Family::C, 4, 2}, 1) == 1);
  for (int l = 1; l <= 8; ++l) {
    for (int k = 1; k <= l; ++k) {
      const RootSystemSpec s{Family::C, l, k};
      CHECK(dual_index(s, k) == l + 1);
      for (int i = 1; i <= l + 1; ++i) {
        const int j = dual_index(s, i);
        CHECK(dual_index(s, j) == i);
        CHECK(flat_degree(l, k, i) + flat_degree(l, k, j) == 1);
      }
    }
  }
}

TEST_CASE("V-block is positive definite") {
  for (int l = 1; l <= 8; ++l) {
    for (Family f : {Family::B, Family::C}) {
      if (f == Family::B && l < 2) continue;
      const RootData rd = build_root_data({f, l, 1});
      std::vector<std::vector<Rational>> v(static_cast<std::size_t>(l));
      for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) v[i].push_back(rd.metric(i, j));
      }
      CHECK(positive_definite(v));
    }
  }
}
