#include "test_support.hpp"
#include "orbitfm/errors.hpp"
#include "orbitfm/orbitspace.hpp"

using namespace orbitfm;

TEST_CASE("elementary symmetric polynomials") {
  auto c = Chart::polynomial_ring("abc", {{"a", Rational(1), false}, {"b", Rational(1), false}, {"c", Rational(1), false}});
  std::vector<Poly> xs{Poly::variable(c, 0), Poly::variable(c, 1), Poly::variable(c, 2)};
  CHECK(elementary_symmetric(xs, 2, c) == parse_poly(c, "a*b + a*c + b*c"));
  CHECK(elementary_symmetric(xs, 0, c) == Poly::constant(c, 1));
}

TEST_CASE("generators") {
  const Generators g2 = build_generators({Family::C, 2, 1});
  CHECK(g2.y_of_base[0] == parse_poly(g2.base, "E*zeta1 + E*zeta2"));
  CHECK(g2.y_of_base[1] == parse_poly(g2.base, "E*zeta1*zeta2"));

  const Generators g3 = build_generators({Family::C, 3, 1});
  CHECK(g3.y_of_base[0] == parse_poly(g3.base, "E*zeta1 + E*zeta2 + E*zeta3"));
  CHECK(g3.y_of_base[2] == parse_poly(g3.base, "E*zeta1*zeta2*zeta3"));

  const Generators b = build_generators({Family::B, 3, 3});
  CHECK(b.y_of_base[0] == parse_poly(b.base, "Q^2*r1^2 + Q^2*r2^2 + Q^2*r3^2"));
  CHECK(b.y_of_base[2] == parse_poly(b.base, "Q^3*r1*r2*r3"));
  CHECK(b.y_of_base[3] == parse_poly(b.base, "Q^2"));
  CHECK(build_generators({Family::B, 3, 2}).y_of_base[3] == parse_poly(b.base, "Q^4"));
}

TEST_CASE("theta chart and P(u)") {
  const GenPolyP p11 = assemble_P({Family::C, 1, 1});
  const ChartPtr y1 = p11.theta_to_y.target;
  CHECK(p11.theta_to_y.source_in_target[0] == parse_poly(y1, "E"));
  CHECK(p11.theta_to_y.source_in_target[1] == parse_poly(y1, "y1"));

  const GenPolyP p22 = assemble_P({Family::C, 2, 2});
  const ChartPtr y2 = p22.theta_to_y.target;
  CHECK(p22.theta_to_y.source_in_target[0] == parse_poly(y2, "E^2"));
  CHECK(p22.theta_to_y.source_in_target[1] == parse_poly(y2, "y1*E"));
  CHECK(p22.theta_to_y.source_in_target[2] == parse_poly(y2, "y2"));

  for (int l = 1; l <= 5; ++l) {
    for (int k = 1; k <= l; ++k) {
      const GenPolyP p = assemble_P({Family::C, l, k});
      CHECK(p.expansion_identity_holds());
      for (const auto& th : p.theta_to_y.source_in_target) CHECK(*weighted_degree(th).degree == k);
    }
  }
  CHECK_THROWS_AS(assemble_P({Family::B, 3, 1}), InvalidSpec);
}

TEST_CASE("coordinate maps verify round trips") {
  auto a = Chart::polynomial_ring("a", {{"x", Rational(1), false}, {"y", Rational(2), false}});
  auto b = Chart::polynomial_ring("b", {{"u", Rational(1), false}, {"v", Rational(2), false}});
  // x = u, y = v + u^2 and back
  std::vector<Poly> inv{parse_poly(b, "u"), parse_poly(b, "v + u^2")};
  std::vector<Poly> fwd{parse_poly(a, "x"), parse_poly(a, "y - x^2")};
  CoordMap m = make_coord_map(a, b, inv, fwd);
  CoordMap round = compose(m, make_coord_map(b, a, fwd, inv));
  CHECK(round.source_in_target[1] == parse_poly(a, "y"));
  std::vector<Poly> wrong{parse_poly(a, "x"), parse_poly(a, "y + x^2")};
  CHECK_THROWS_AS(make_coord_map(a, b, inv, wrong), ChartMismatch);
  PolyMatrix k = m.inverse_jacobian();
  CHECK(k(1, 0) == parse_poly(b, "2*u"));
}

TEST_CASE("monomial basis enumeration") {
  auto y = make_y_chart({Family::C, 3, 2});
  std::vector<std::size_t> vars{0, 1, 2, y->var_index("E")};
  // weights 1,2,2,1: degree 2 -> y1^2, y1 E, E^2, y2, y3
  CHECK(monomials_of_degree(*y, vars, Rational(2)).size() == 5);
  CHECK(monomials_of_degree(*y, vars, Rational(0)).size() == 1);
}

TEST_CASE("x-space oracle at rank one") {
  const PolyMatrix g = compute_g_direct({Family::C, 1, 1});
  const ChartPtr y = g.chart();
  CHECK(g(0, 0) == parse_poly(y, "4*E*y1"));
  CHECK(g(0, 1) == parse_poly(y, "y1"));
  CHECK(g(1, 1) == Poly::constant(y, 1));
}

TEST_CASE("x-space oracle general properties") {
  for (Family f : {Family::C, Family::B}) {
    for (int l = 2; l <= 3; ++l) {
      for (int k = 1; k <= l; ++k) {
        const RootSystemSpec spec{f, l, k};
        const RootData rd = build_root_data(spec);
        const PolyMatrix g = compute_g_direct(spec);
        const ChartPtr y = g.chart();
        const auto n = static_cast<std::size_t>(l);
        CHECK(g.is_symmetric());
        const Rational dk = rd.degrees.d[static_cast<std::size_t>(k - 1)];
        CHECK(g(n, n) == Poly::constant(y, 1 / dk));
        for (std::size_t m = 0; m < n; ++m) {
          CHECK(g(m, n) == (rd.degrees.d[m] / dk) * Poly::variable(y, m));
          for (std::size_t j = 0; j < n; ++j) {
            const auto deg = weighted_degree(g(m, j));
            if (g(m, j).is_zero()) continue;
            CHECK(deg.homogeneous);
            CHECK(*deg.degree == rd.degrees.d[m] + rd.degrees.d[j]);
          }
        }
      }
    }
  }
  CHECK_THROWS_AS(compute_g_direct({Family::C, 5, 1}), InvalidSpec);
}
