#include <functional>

#include "orbitfm/errors.hpp"
#include "orbitfm/metrics.hpp"
#include "test_support.hpp"

using namespace orbitfm;

namespace {

// Independent computation in the chart (zeta_1..zeta_l, E, u, v), where
// zeta_a = e^{mu_a} + e^{-mu_a} + 2 and E = e^{mu_{l+1}} with mu flat.
struct MuChart {
  int l = 0;
  int k = 0;
  ChartPtr chart;
  std::vector<Poly> zeta;
  Poly e, u, v;

  MuChart(int rank, int vertex) : l(rank), k(vertex) {
    std::vector<VarSpec> vars;
    for (int a = 1; a <= l; ++a) vars.push_back({"zeta" + std::to_string(a), Rational(0), false});
    vars.push_back({"E", Rational(1), true});
    vars.push_back({"u", Rational(0), false});
    vars.push_back({"v", Rational(0), false});
    chart = Chart::polynomial_ring("mu", std::move(vars));
    for (int a = 0; a < l; ++a) zeta.push_back(Poly::variable(chart, static_cast<std::size_t>(a)));
    e = Poly::variable(chart, "E");
    u = Poly::variable(chart, "u");
    v = Poly::variable(chart, "v");
  }

  // E^k prod_{j not in skip} (x + zeta_j)
  Poly p_skip(const Poly& x, int skip1 = -1, int skip2 = -1) const {
    Poly out = pow(e, static_cast<unsigned>(k));
    for (int j = 0; j < l; ++j) {
      if (j != skip1 && j != skip2) out *= x + zeta[static_cast<std::size_t>(j)];
    }
    return out;
  }

  std::vector<Poly> theta_images() const {
    std::vector<Poly> images;
    for (int j = 0; j <= l; ++j) images.push_back(pow(e, static_cast<unsigned>(k)) * elementary_symmetric(zeta, j, chart));
    return images;
  }

  // sum_{ij} m(i,j) u^{l-i} v^{l-j} with theta substituted
  Poly generate(const std::function<Poly(std::size_t, std::size_t)>& entry) const {
    const std::vector<Poly> th = theta_images();
    Poly out(chart);
    for (int i = 0; i <= l; ++i) {
      for (int j = 0; j <= l; ++j) {
        const Poly x = entry(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        if (x.is_zero()) continue;
        out += substitute(x, chart, th) * pow(u, static_cast<unsigned>(l - i)) * pow(v, static_cast<unsigned>(l - j));
      }
    }
    return out;
  }

  Poly g_generating() const {
    Poly out = Rational(k) * p_skip(u) * p_skip(v);
    for (int a = 0; a < l; ++a) {
      const Poly& z = zeta[static_cast<std::size_t>(a)];
      out -= (z * z - 4 * z) * p_skip(u, a) * p_skip(v, a);
    }
    return out;
  }
};

}  // namespace

TEST_CASE("g_theta at rank one") {
  const PolyMatrix g = g_theta({Family::C, 1, 1});
  const ChartPtr t = g.chart();
  CHECK(g(0, 0) == parse_poly(t, "theta0^2"));
  CHECK(g(0, 1) == parse_poly(t, "theta0*theta1"));
  CHECK(g(1, 1) == parse_poly(t, "4*theta0*theta1"));
}

TEST_CASE("g_theta and gamma_theta shape") {
  for (int l = 1; l <= 4; ++l) {
    for (int k = 1; k <= l; ++k) {
      const PolyMatrix g = g_theta({Family::C, l, k});
      CHECK(g.is_symmetric());
      for (std::size_t i = 0; i < g.rows(); ++i) {
        for (std::size_t j = 0; j < g.cols(); ++j) {
          for (const auto& [m, c] : g(i, j).terms()) CHECK(m.total_degree() == 2);
        }
      }
      const ChristoffelContra gm = gamma_theta({Family::C, l, k});
      const auto n = static_cast<std::size_t>(l + 1);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          for (std::size_t m = 0; m < n; ++m) {
            for (const auto& [mono, c] : gm(i, j, m).terms()) CHECK(mono.total_degree() == 1);
          }
        }
      }
    }
  }
}

TEST_CASE("generating functions agree with the flat mu-chart computation") {
  for (int l = 1; l <= 3; ++l) {
    for (int k = 1; k <= l; ++k) {
      CAPTURE(l);
      CAPTURE(k);
      const RootSystemSpec spec{Family::C, l, k};
      const MuChart mu(l, k);
      const PolyMatrix g = g_theta(spec);
      CHECK(mu.generate([&](std::size_t i, std::size_t j) { return g(i, j); }) == mu.g_generating());

      const ChristoffelContra gm = gamma_theta(spec);
      const auto n = static_cast<std::size_t>(l + 1);
      std::vector<Poly> gen(n);
      for (std::size_t m = 0; m < n; ++m) {
        gen[m] = mu.generate([&](std::size_t i, std::size_t j) { return gm(i, j, m); });
      }
      const std::vector<Poly> th = mu.theta_images();
      // zeta_c direction
      for (int c = 0; c < l; ++c) {
        const Poly& zc = mu.zeta[static_cast<std::size_t>(c)];
        Poly lhs = Rational(k) * mu.p_skip(mu.u) * mu.p_skip(mu.v, c);
        lhs -= (zc - Poly::constant(mu.chart, 2)) * mu.p_skip(mu.u, c) * mu.p_skip(mu.v, c);
        for (int a = 0; a < l; ++a) {
          if (a == c) continue;
          const Poly& za = mu.zeta[static_cast<std::size_t>(a)];
          lhs -= (za * za - 4 * za) * mu.p_skip(mu.u, a) * mu.p_skip(mu.v, a, c);
        }
        // d theta^m / d zeta_c = [w^{l-m}] P_c(w): the coefficient of theta^m in P_c
        Poly rhs(mu.chart);
        const Poly pc = mu.p_skip(mu.u, c);
        for (std::size_t m = 0; m < n; ++m) {
          Poly coeff(mu.chart);
          for (const auto& [mono, cf] : pc.terms()) {
            if (mono[mu.chart->var_index("u")] != static_cast<int>(l - static_cast<int>(m))) continue;
            Monomial mm = mono;
            mm[mu.chart->var_index("u")] = 0;
            coeff.add_term(mm, cf);
          }
          rhs += gen[m] * coeff;
        }
        CHECK(lhs == rhs);
      }
      // E direction
      Poly rhs(mu.chart);
      for (std::size_t m = 0; m < n; ++m) rhs += gen[m] * (Rational(k) * th[m]);
      CHECK(Rational(k) * mu.g_generating() == rhs);
    }
  }
}

TEST_CASE("transport by the identity map") {
  const PolyMatrix g = g_theta({Family::C, 2, 1});
  const ChristoffelContra gm = gamma_theta({Family::C, 2, 1});
  const Transport tr = make_transport(identity_map(g.chart()));
  const PolyMatrix g2 = transform_form(g, tr);
  CHECK(g2 == g);
  CHECK(transform_christoffel(g2, gm, tr) == gm);
}

TEST_CASE("pencil in the y-chart matches the x-space oracle") {
  for (int l = 1; l <= 3; ++l) {
    for (int k = 1; k <= l; ++k) {
      CAPTURE(l);
      CAPTURE(k);
      const RootSystemSpec spec{Family::C, l, k};
      const FlatPencil p = build_flat_pencil(spec);
      const PolyMatrix direct = compute_g_direct(spec);
      CHECK(p.g == direct);
    }
  }
}

TEST_CASE("Christoffel symbols are metric-compatible and torsion-free") {
  for (int l = 1; l <= 4; ++l) {
    for (int k = 1; k <= l; ++k) {
      CAPTURE(l);
      CAPTURE(k);
      const FlatPencil p = build_flat_pencil({Family::C, l, k});
      const auto n = static_cast<std::size_t>(l + 1);
      for (const auto* pair : {&p.g, &p.eta}) {
        const ChristoffelContra& gm = pair == &p.g ? p.gamma_g : p.gamma_eta;
        const PolyMatrix& g = *pair;
        for (std::size_t a = 0; a < n; ++a) {
          for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
              CHECK(diff_coord(g(a, b), c) == gm(a, b, c) + gm(b, a, c));
              Poly lhs(p.chart);
              Poly rhs(p.chart);
              for (std::size_t s = 0; s < n; ++s) {
                lhs += g(a, s) * gm(b, c, s);
                rhs += g(b, s) * gm(a, c, s);
              }
              CHECK(lhs == rhs);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("degrees and linearity in y^k") {
  for (int l = 1; l <= 4; ++l) {
    for (int k = 1; k <= l; ++k) {
      const RootSystemSpec spec{Family::C, l, k};
      const RootData rd = build_root_data(spec);
      const FlatPencil p = build_flat_pencil(spec);
      std::vector<Rational> w = rd.degrees.d;
      w.emplace_back(0);
      CHECK(degrees_match(p.g, w));
      CHECK(degrees_match(p.gamma_g, w));
      const auto kc = static_cast<std::size_t>(k - 1);
      CHECK(linearity_check(p.g, p.gamma_g, kc));
    }
  }
  FlatPencil p = build_flat_pencil({Family::C, 2, 1});
  p.g(0, 0) += pow(Poly::variable(p.chart, 0), 2);
  CHECK_FALSE(linearity_check(p.g, p.gamma_g, 0));
}

TEST_CASE("eta closed form and determinant") {
  const FlatPencil c31 = build_flat_pencil({Family::C, 3, 1});
  const ChartPtr y = c31.chart;
  CHECK(c31.eta(0, 0) == parse_poly(y, "4*E"));
  CHECK(c31.eta(1, 1) == parse_poly(y, "4*y2 + 2*y3"));
  CHECK(c31.eta(1, 2) == parse_poly(y, "8*y3"));
  CHECK(c31.eta(2, 2).is_zero());
  CHECK(c31.eta(0, 3) == Poly::constant(y, 1));
  // pairs 1<->4 and 2<->3: an even permutation, so the sign is +
  const DetEtaReport r31 = det_eta_check(c31);
  CHECK(r31.det == parse_poly(y, "64*y3^2"));
  CHECK(r31.stated == parse_poly(y, "-64*y3^2"));
  CHECK_FALSE(r31.matches_stated);
  CHECK(det_eta_closed_form({Family::C, 4, 2}) == parse_poly(make_y_chart({Family::C, 4, 2}), "128*y4^2"));
  CHECK(det_eta_closed_form({Family::C, 3, 3}) == Poly::constant(make_y_chart({Family::C, 3, 3}), -9));

  for (int l = 1; l <= 6; ++l) {
    for (int k = 1; k <= l; ++k) {
      CAPTURE(l);
      CAPTURE(k);
      const FlatPencil p = build_flat_pencil({Family::C, l, k});
      CHECK_NOTHROW(check_eta_closed_form(p));
      const DetEtaReport r = det_eta_check(p);
      CHECK(r.matches_permutation);
      CHECK((r.det == r.stated || r.det == -r.stated));
    }
  }
}

TEST_CASE("eta mismatch is reported") {
  FlatPencil p = build_flat_pencil({Family::C, 2, 1});
  p.eta(1, 1) += Poly::variable(p.chart, 1);
  CHECK_THROWS_AS(check_eta_closed_form(p), ClosedFormMismatch);
  CHECK_THROWS_AS(det_eta_check(p), DetMismatch);
}
