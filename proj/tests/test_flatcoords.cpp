#include "orbitfm/errors.hpp"
#include "orbitfm/flatcoords.hpp"
#include "test_support.hpp"

using namespace orbitfm;

namespace {

Rational q(long a, long b) { return make_rational(a, b); }

// Truncated product of power series given by coefficient lists.
std::vector<Rational> series_mul(const std::vector<Rational>& a, const std::vector<Rational>& b, std::size_t n) {
  std::vector<Rational> r(n);
  for (std::size_t i = 0; i < n && i < a.size(); ++i) {
    for (std::size_t j = 0; i + j < n && j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

std::vector<Rational> series_diff(const std::vector<Rational>& a) {
  std::vector<Rational> r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * Rational(static_cast<long>(i)));
  return r;
}

}  // namespace

TEST_CASE("B coefficients: spot values") {
  const BSeries b = b_coefficients(9);
  CHECK(b(1, 2) == q(1, 6));
  CHECK(b(2, 3) == q(1, 4));
  CHECK(b(1, 3) == q(1, 120));
  for (int i = 1; i <= 9; ++i) CHECK(b(i, i) == 1);
}

TEST_CASE("B series satisfy the generating-function ODE") {
  // 4(i+j-1) t^{i+j-2} f^{i+j-1} + (i+j) t^{i+j-1} f^{i+j} = 4 d/dt(t^{i+j-1} f^i f^j),
  // checked as truncated power series independently of the recursion solver.
  const int n = 10;
  const BSeries b = b_series(n);
  auto f = [&](int i) {
    std::vector<Rational> c;
    for (int m = i; m <= n; ++m) c.push_back(b(i, m));
    return c;
  };
  auto shift = [](std::vector<Rational> a, int s) {
    a.insert(a.begin(), static_cast<std::size_t>(s), Rational(0));
    return a;
  };
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 4; ++j) {
      const int s = i + j;
      const std::size_t len = static_cast<std::size_t>(n - s + 1);
      std::vector<Rational> lhs(len);
      const auto a = shift(f(s - 1), s - 2);
      const auto c = shift(f(s), s - 1);
      for (std::size_t x = 0; x < len; ++x) {
        if (x < a.size()) lhs[x] += Rational(4 * (s - 1)) * a[x];
        if (x < c.size()) lhs[x] += Rational(s) * c[x];
      }
      const auto prod = shift(series_mul(f(i), f(j), len + 2), s - 1);
      auto rhs = series_diff(prod);
      rhs.resize(len);
      for (auto& r : rhs) r *= 4;
      CHECK(lhs == rhs);
    }
  }
  CHECK_NOTHROW(b_coefficients(n));
}

TEST_CASE("p-block: spec examples") {
  for (int l = 1; l <= 4; ++l) {
    const FlatPencil p = build_flat_pencil({Family::C, l, 1});
    const std::vector<Poly> pb = solve_p_block(p);
    REQUIRE(pb.size() == 1);
    CHECK(pb[0] == parse_poly(p.chart, "-2*E"));
  }
  const FlatPencil p42 = build_flat_pencil({Family::C, 4, 2});
  const ZChart z = build_z_chart(p42);
  const ChartPtr y = p42.chart;
  CHECK(z.y_to_z.target_in_source->at(0) == parse_poly(y, "y1 - 4*E"));
  CHECK(z.y_to_z.target_in_source->at(1) == parse_poly(y, "y2 - 2*y1*E + 6*E^2"));
  CHECK_FALSE(z.parametric);
}

TEST_CASE("z-chart: spec examples") {
  const ZChart z41 = build_z_chart(build_flat_pencil({Family::C, 4, 1}));
  const ChartPtr y = z41.y_to_z.source;
  CHECK(z41.y_to_z.target_in_source->at(1) == parse_poly(y, "y2 - 1/6*y3 + 1/30*y4"));
  CHECK(z41.y_to_z.target_in_source->at(2) == parse_poly(y, "y3 - 1/4*y4"));
  const ZChart z31 = build_z_chart(build_flat_pencil({Family::C, 3, 1}));
  CHECK(z31.y_to_z.target_in_source->at(1) == parse_poly(z31.y_to_z.source, "y2 - 1/6*y3"));
}

TEST_CASE("w-chart: block form and Christoffel properties") {
  for (int l = 1; l <= 5; ++l) {
    for (int k = 1; k <= l; ++k) {
      CAPTURE(l);
      CAPTURE(k);
      const RootSystemSpec spec{Family::C, l, k};
      const FlatPencil p = build_flat_pencil(spec);
      const ZChart z = build_z_chart(p);
      const WChart w = build_w_chart(spec, z);
      CHECK(w.eta == w_block_form(spec, w.chart));
      CHECK_NOTHROW(check_gamma_w(spec, w));
      if (l - k <= 2) {
        // eta(w) is constant there, so every gamma vanishes
        for (std::size_t i = 0; i <= static_cast<std::size_t>(l); ++i)
          for (std::size_t j = 0; j <= static_cast<std::size_t>(l); ++j)
            for (std::size_t m = 0; m <= static_cast<std::size_t>(l); ++m) CHECK(w.gamma(i, j, m).is_zero());
      }
    }
  }
  const RootSystemSpec c41{Family::C, 4, 1};
  const WChart w41 = build_w_chart(c41, build_z_chart(build_flat_pencil(c41)));
  const ChartPtr wc = w41.chart;
  CHECK(w41.z_to_w.source_in_target[2] == parse_poly(wc, "w3*w4^4"));
  CHECK(w41.z_to_w.source_in_target[3] == parse_poly(wc, "w4^6"));
  const RootSystemSpec c51{Family::C, 5, 1};
  const WChart w51 = build_w_chart(c51, build_z_chart(build_flat_pencil(c51)));
  CHECK(w51.gamma(4, 3, 3) == parse_poly(w51.chart, "w5^-1"));
  const RootSystemSpec c21{Family::C, 2, 1};
  const WChart w21 = build_w_chart(c21, build_z_chart(build_flat_pencil(c21)));
  CHECK(w21.eta(1, 1) == Poly::constant(w21.chart, 1));
}

TEST_CASE("Christoffel property violations are reported") {
  const RootSystemSpec c41{Family::C, 4, 1};
  WChart w = build_w_chart(c41, build_z_chart(build_flat_pencil(c41)));
  w.gamma(0, 0, 0) = Poly::constant(w.chart, 1);
  CHECK_THROWS_AS(check_gamma_w(c41, w), PropertyViolation);
}

TEST_CASE("flat chart: spec examples") {
  const FlatCoordinates fc = build_flat_coordinates({Family::C, 4, 1});
  const ChartPtr w = fc.w.chart;
  REQUIRE(fc.t.h.size() == 2);
  CHECK(fc.t.h[0] == parse_poly(w, "-1/12*w3^2"));
  CHECK(fc.t.h[1].is_zero());
  CHECK(fc.t.t_of_w[1] == parse_poly(w, "w2 - 1/12*w3^2*w4"));
  CHECK(fc.t.t_of_w[2] == parse_poly(w, "w3*w4"));
}

TEST_CASE("flat chart: constant eta, degrees and round trip") {
  for (int l = 1; l <= 5; ++l) {
    for (int k = 1; k <= l; ++k) {
      CAPTURE(l);
      CAPTURE(k);
      const RootSystemSpec spec{Family::C, l, k};
      const FlatCoordinates fc = build_flat_coordinates(spec);
      CHECK(fc.t.eta == eta_flat_pattern(spec, fc.t.chart));
      for (std::size_t i = 0; i < fc.t.eta.rows(); ++i)
        for (std::size_t j = 0; j < fc.t.eta.cols(); ++j) CHECK((fc.t.eta(i, j).is_zero() || fc.t.eta(i, j).is_constant()));
      // t^j has w-degree k * d~_j
      const RootData rd = build_root_data(spec);
      for (int j = 1; j <= l; ++j) {
        const DegreeResult d = weighted_degree(fc.t.t_of_w[static_cast<std::size_t>(j - 1)]);
        CHECK(d.homogeneous);
        REQUIRE(d.degree.has_value());
        CHECK(*d.degree == Rational(k) * rd.degrees.d_tilde[static_cast<std::size_t>(j - 1)]);
      }
      for (int j = k + 1; j <= l - 1; ++j) {
        const Poly& h = fc.t.h[static_cast<std::size_t>(j - k - 1)];
        if (h.is_zero()) continue;
        const DegreeResult d = weighted_degree(h);
        CHECK(d.homogeneous);
        CHECK(*d.degree == make_rational(k * (l - j), l - k));
      }
      // transporting eta straight from y to t gives the same constant matrix
      const PolyMatrix direct = transform_form(fc.pencil.eta, make_transport(fc.y_to_t));
      CHECK(direct == fc.t.eta);
      // duality of degrees
      for (int i = 1; i <= l + 1; ++i) {
        CHECK(rd.degrees.d_tilde[static_cast<std::size_t>(i - 1)] +
                  rd.degrees.d_tilde[static_cast<std::size_t>(dual_index(spec, i) - 1)] ==
              1);
      }
    }
  }
}

TEST_CASE("B_l has no flat chart of its own") {
  CHECK_THROWS_AS(make_w_chart({Family::B, 3, 1}), InvalidSpec);
}
