#include "orbitfm/frobenius.hpp"

#include <map>

#include "orbitfm/errors.hpp"
#include "orbitfm/linsolve.hpp"

namespace orbitfm {

namespace {

std::size_t idx(int one_based) { return static_cast<std::size_t>(one_based - 1); }

std::string ijk(std::initializer_list<std::size_t> xs) {
  std::string s = "(";
  for (std::size_t x : xs) s += (s.size() > 1 ? "," : "") + std::to_string(x + 1);
  return s + ")";
}

std::size_t log_var(const ChartPtr& chart) {
  const Coordinate& c = chart->coord(chart->num_coords() - 1);
  return static_cast<std::size_t>(c.log_var);
}

// F_{abc} from a potential, by differentiation.
ChristoffelContra third_from_potential(const ChartPtr& chart, const Poly& f) {
  const std::size_t n = chart->num_coords();
  ChristoffelContra out(chart, n);
  for (std::size_t a = 0; a < n; ++a) {
    const Poly fa = diff_coord(f, a);
    for (std::size_t b = a; b < n; ++b) {
      const Poly fab = diff_coord(fa, b);
      for (std::size_t c = b; c < n; ++c) {
        const Poly fabc = diff_coord(fab, c);
        for (auto [x, y, z] : {std::array{a, b, c}, std::array{a, c, b}, std::array{b, a, c}, std::array{b, c, a},
                               std::array{c, a, b}, std::array{c, b, a}}) {
          out(x, y, z) = fabc;
        }
      }
    }
  }
  return out;
}

}  // namespace

Poly euler_apply(const EulerField& e, const Poly& p) {
  const ChartPtr& chart = p.chart();
  Poly out(chart);
  for (const auto& [m, c] : p.terms()) out.add_term(m, c * monomial_weight(*chart, m));
  out += e.last * diff(p, log_var(chart));
  return out;
}

PolyMatrix g_in_t(const FlatCoordinates& fc) {
  return transform_form(fc.pencil.g, make_transport(fc.y_to_t));
}

ChristoffelContra gamma_in_t(const FlatCoordinates& fc, const PolyMatrix& g_t) {
  return transform_christoffel(g_t, fc.pencil.gamma_g, make_transport(fc.y_to_t));
}

ChristoffelContra third_derivatives(const RootSystemSpec& spec, const ChristoffelContra& gamma_t,
                                    const PolyMatrix& eta_cov) {
  const int l = spec.rank;
  const int k = spec.vertex;
  const RootData rd = build_root_data(spec);
  const std::vector<Rational>& dt = rd.degrees.d_tilde;
  const ChartPtr& chart = gamma_t.chart();
  const std::size_t n = gamma_t.size();
  const auto last = static_cast<std::size_t>(l);

  ChristoffelContra c(chart, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t m = 0; m < n; ++m) {
        if (j < last) {
          c(i, j, m) = gamma_t(i, j, m) * (1 / dt[j]);
        } else if (i < last) {
          c(i, j, m) = gamma_t(j, i, m) * (1 / dt[i]);
        } else {
          c(i, j, m) = eta_cov(idx(k), m);
        }
      }
    }
  }
  // c^{ij}_m must already be symmetric in i, j
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m)
        if (!(c(i, j, m) == c(j, i, m))) throw SymmetryViolation("c^{ij}_m not symmetric at " + ijk({i, j, m}));

  ChristoffelContra f(chart, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t m = 0; m < n; ++m) {
        Poly acc(chart);
        for (std::size_t i = 0; i < n; ++i) {
          if (eta_cov(a, i).is_zero()) continue;
          for (std::size_t j = 0; j < n; ++j) {
            if (eta_cov(b, j).is_zero() || c(i, j, m).is_zero()) continue;
            acc += c(i, j, m) * (eta_cov(a, i).constant_term() * eta_cov(b, j).constant_term());
          }
        }
        f(a, b, m) = std::move(acc);
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t m = 0; m < n; ++m) {
        if (!(f(a, b, m) == f(b, a, m)) || !(f(a, b, m) == f(a, m, b))) {
          throw SymmetryViolation("F_abc not totally symmetric at " + ijk({a, b, m}));
        }
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      for (std::size_t m = b; m < n; ++m) {
        for (std::size_t d = 0; d < n; ++d) {
          if (!(diff_coord(f(a, b, m), d) == diff_coord(f(d, b, m), a))) {
            throw IntegrabilityViolation("d_" + std::to_string(d + 1) + " F" + ijk({a, b, m}) + " != d_" +
                                         std::to_string(a + 1) + " F" + ijk({d, b, m}));
          }
        }
      }
    }
  }
  return f;
}

Poly integrate_potential(const ChristoffelContra& f3) {
  const ChartPtr& chart = f3.chart();
  const std::size_t n = f3.size();

  // Candidate monomials: each term of F_abc multiplied back by t^a t^b t^c.
  std::map<Monomial, std::size_t, GradedLexGreater> index;
  std::vector<Monomial> cands;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      for (std::size_t c = b; c < n; ++c) {
        for (const auto& [m, coeff] : f3(a, b, c).terms()) {
          Monomial up = m;
          for (std::size_t x : {a, b, c}) {
            const Coordinate& co = chart->coord(x);
            if (!co.is_exponential()) {
              up[static_cast<std::size_t>(co.var)] += 1;
            } else if (m[static_cast<std::size_t>(co.exp_var)] == 0) {
              up[static_cast<std::size_t>(co.log_var)] += 1;
            }
          }
          if (index.emplace(up, cands.size()).second) cands.push_back(up);
        }
      }
    }
  }

  std::vector<LinearEquation> eqs;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      for (std::size_t c = b; c < n; ++c) {
        LinearForm r(-f3(a, b, c));
        for (std::size_t u = 0; u < cands.size(); ++u) {
          const Poly d = diff_coord(diff_coord(diff_coord(Poly::term(chart, cands[u], Rational(1)), a), b), c);
          if (!d.is_zero()) r += LinearForm::unknown(u, d);
        }
        r.append_vanishing(eqs);
      }
    }
  }
  const LinearSolveResult sol = solve_linear(cands.size(), eqs);
  if (sol.kind == SolveKind::Inconsistent) throw Inconsistent("no potential has these third derivatives");
  Poly f(chart);
  for (std::size_t u = 0; u < cands.size(); ++u) {
    if (sol.solution[u] != 0) f.add_term(cands[u], sol.solution[u]);
  }
  return f;
}

void check_potential_shape(const FrobeniusStructure& s) {
  const int l = s.spec.rank;
  const int k = s.spec.vertex;
  const ChartPtr& t = s.chart;
  const std::size_t lv = log_var(t);
  const Poly tk = Poly::variable(t, idx(k));
  Poly g = s.potential - make_rational(1, 2) * tk * tk * Poly::variable(t, lv);
  Poly quad(t);
  for (int i = 1; i <= l; ++i) {
    for (int j = 1; j <= l; ++j) {
      if (i == k || j == k || s.eta_cov(idx(i), idx(j)).is_zero()) continue;
      quad += s.eta_cov(idx(i), idx(j)) * Poly::variable(t, idx(i)) * Poly::variable(t, idx(j));
    }
  }
  g -= make_rational(1, 2) * tk * quad;
  for (const auto& [m, c] : g.terms()) {
    if (m[idx(k)] != 0 || m[lv] != 0) {
      throw ShapeMismatch("G contains t^k or t^{l+1}: " + monomial_to_string(*t, m));
    }
  }
  if (g.is_zero()) return;
  const DegreeResult d = weighted_degree(g);
  if (!d.homogeneous || *d.degree != 2) throw ShapeMismatch("G is not homogeneous of degree 2");
}

FrobeniusStructure build_frobenius(const RootSystemSpec& spec) {
  spec.validate();
  if (spec.family != Family::C) throw InvalidSpec("B_l structures are built through b_to_c");
  FrobeniusStructure s;
  s.spec = spec;
  s.flat = build_flat_coordinates(spec);
  s.chart = s.flat.t.chart;
  s.eta = s.flat.t.eta;
  s.eta_cov = inverse_unit_det(s.eta);
  const RootData rd = build_root_data(spec);
  s.euler.weights.assign(rd.degrees.d_tilde.begin(), rd.degrees.d_tilde.end() - 1);
  s.euler.last = make_rational(1, spec.vertex);
  s.g = g_in_t(s.flat);
  s.gamma = gamma_in_t(s.flat, s.g);
  s.f3 = third_derivatives(spec, s.gamma, s.eta_cov);
  s.potential = integrate_potential(s.f3);
  check_potential_shape(s);
  return s;
}

CheckReport verify_wdvv(const ChartPtr& chart, const Poly& potential, const PolyMatrix& eta) {
  CheckReport r{"wdvv", true, {}};
  const std::size_t n = chart->num_coords();
  const ChristoffelContra f = third_from_potential(chart, potential);
  // T(i,j,mu) = F_{ij lambda} eta^{lambda mu}
  ChristoffelContra t(chart, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t mu = 0; mu < n; ++mu) {
        Poly acc(chart);
        for (std::size_t la = 0; la < n; ++la) {
          if (!eta(la, mu).is_zero() && !f(i, j, la).is_zero()) acc += f(i, j, la) * eta(la, mu);
        }
        t(i, j, mu) = std::move(acc);
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
          Poly res(chart);
          for (std::size_t mu = 0; mu < n; ++mu) {
            if (!t(i, j, mu).is_zero() && !f(mu, p, q).is_zero()) res += t(i, j, mu) * f(mu, p, q);
            if (!t(p, j, mu).is_zero() && !f(mu, i, q).is_zero()) res -= t(p, j, mu) * f(mu, i, q);
          }
          if (!res.is_zero()) r.fail("residual at " + ijk({i, j, p, q}) + ": " + to_string(res));
        }
  return r;
}

CheckReport verify_wdvv(const FrobeniusStructure& s) { return verify_wdvv(s.chart, s.potential, s.eta); }

CheckReport verify_euler_unity(const FrobeniusStructure& s) {
  CheckReport r{"euler", true, {}};
  const int l = s.spec.rank;
  const int k = s.spec.vertex;
  const ChartPtr& t = s.chart;
  const std::size_t n = t->num_coords();
  const Poly fk = diff_coord(s.potential, idx(k));
  for (std::size_t i = 0; i < n; ++i) {
    const Poly fki = diff_coord(fk, i);
    for (std::size_t j = 0; j < n; ++j) {
      if (!(diff_coord(fki, j) == s.eta_cov(i, j))) r.fail("unity: F_{k" + ijk({i, j}) + "} != eta_ij");
    }
  }
  const Poly tk = Poly::variable(t, idx(k));
  const Poly defect = euler_apply(s.euler, s.potential) - 2 * s.potential;
  if (!(defect == make_rational(1, 2 * k) * tk * tk)) r.fail("L_E F - 2F = " + to_string(defect));

  std::vector<Rational> dt = s.euler.weights;
  dt.emplace_back(0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!s.eta_cov(i, j).is_zero() && dt[i] + dt[j] != 1) r.fail("charge scaling fails at " + ijk({i, j}));
  for (int i = 1; i <= l + 1; ++i) {
    if (dt[idx(i)] + dt[idx(dual_index(s.spec, i))] != 1) r.fail("duality fails at " + std::to_string(i));
  }
  return r;
}

CheckReport verify_intersection(const FrobeniusStructure& s) {
  CheckReport r{"intersection", true, {}};
  const ChartPtr& t = s.chart;
  const std::size_t n = t->num_coords();
  std::vector<Rational> dt = s.euler.weights;
  dt.emplace_back(0);
  PolyMatrix hess(t, n, n);
  for (std::size_t a = 0; a < n; ++a) {
    const Poly fa = diff_coord(s.potential, a);
    for (std::size_t b = 0; b < n; ++b) hess(a, b) = diff_coord(fa, b);
  }
  const PolyMatrix fij = s.eta * hess * transpose(s.eta);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(euler_apply(s.euler, fij(i, j)) == s.g(i, j))) r.fail("g^" + ijk({i, j}) + " != L_E F^ij");
      for (std::size_t m = 0; m < n; ++m) {
        if (!(s.gamma(i, j, m) == dt[j] * diff_coord(fij(i, j), m))) {
          r.fail("Gamma^" + ijk({i, j}) + "_" + std::to_string(m + 1) + " != d~_j c^ij_m");
        }
      }
    }
  }
  return r;
}

CoordMap b_pullback_map(const RootSystemSpec& b_spec) {
  b_spec.validate();
  if (b_spec.family != Family::B) throw InvalidSpec("pullback map is defined for B_l");
  const int l = b_spec.rank;
  const int k = b_spec.vertex;
  const ChartPtr yc = make_y_chart({Family::C, l, k});
  const ChartPtr yb = make_y_chart(b_spec);
  std::vector<Poly> images;
  for (int j = 1; j < l; ++j) images.push_back(Poly::variable(yb, idx(j)));
  images.push_back(pow(Poly::variable(yb, idx(l)), 2));
  const Poly log_b = Poly::variable(yb, static_cast<std::size_t>(l));
  images.push_back(k == l ? make_rational(1, 2) * log_b : log_b);
  images.push_back(Poly::variable(yb, k == l ? "Eh" : "E"));
  return make_coord_map(yc, yb, std::move(images));
}

void check_b_pullback(const RootSystemSpec& b_spec, int max_rank) {
  const CoordMap map = b_pullback_map(b_spec);
  const PolyMatrix gb = compute_g_direct(b_spec, max_rank);
  const PolyMatrix gc = build_flat_pencil({Family::C, b_spec.rank, b_spec.vertex}).g;
  const PolyMatrix k = map.inverse_jacobian();
  const PolyMatrix lhs = k * gb * transpose(k);
  for (std::size_t i = 0; i < gc.rows(); ++i) {
    for (std::size_t j = 0; j < gc.cols(); ++j) {
      const Poly rhs = substitute(gc(i, j), map.target, map.source_in_target);
      if (!(lhs(i, j) == rhs)) {
        throw OracleMismatch(b_spec.label() + " entry " + ijk({i, j}) + ": pulled-back oracle " + to_string(lhs(i, j)) +
                             ", C_l metric " + to_string(rhs));
      }
    }
  }
}

BIdentification b_to_c(const RootSystemSpec& b_spec, std::optional<int> oracle_max_rank) {
  BIdentification out;
  out.b_spec = b_spec;
  out.c_to_b = b_pullback_map(b_spec);
  if (oracle_max_rank && b_spec.rank <= *oracle_max_rank) check_b_pullback(b_spec, *oracle_max_rank);
  out.structure = build_frobenius({Family::C, b_spec.rank, b_spec.vertex});
  return out;
}

}  // namespace orbitfm
