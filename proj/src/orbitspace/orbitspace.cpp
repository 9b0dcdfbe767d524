#include "orbitfm/orbitspace.hpp"

#include <functional>
#include <map>

#include "orbitfm/errors.hpp"
#include "orbitfm/linsolve.hpp"

namespace orbitfm {

namespace {

std::string indexed(const std::string& stem, int i) { return stem + std::to_string(i); }

}  // namespace

ChartPtr make_y_chart(const RootSystemSpec& spec) {
  const RootData rd = build_root_data(spec);
  std::vector<VarSpec> vars;
  for (int j = 1; j <= spec.rank; ++j) {
    vars.push_back({indexed("y", j), rd.degrees.d[static_cast<std::size_t>(j - 1)], false});
  }
  if (spec.family == Family::B && spec.vertex == spec.rank) {
    return Chart::with_exponential("y", std::move(vars), indexed("y", spec.rank + 1), "Eh", make_rational(1, 2),
                                   make_rational(1, 2));
  }
  return Chart::with_exponential("y", std::move(vars), indexed("y", spec.rank + 1), "E", Rational(1));
}

ChartPtr make_theta_chart(const RootSystemSpec& spec) {
  spec.validate();
  std::vector<VarSpec> vars;
  for (int j = 0; j <= spec.rank; ++j) vars.push_back({indexed("theta", j), Rational(spec.vertex), false});
  return Chart::polynomial_ring("theta", std::move(vars));
}

Poly CoordMap::source_coordinate(std::size_t coord) const {
  const Coordinate& c = source->coord(coord);
  if (!c.is_exponential()) return source_in_target[static_cast<std::size_t>(c.var)];
  if (c.log_var < 0) {
    throw ChartMismatch("coordinate " + c.name + " has no explicit variable to transport");
  }
  return source_in_target[static_cast<std::size_t>(c.log_var)];
}

void CoordMap::verify() const {
  if (source_in_target.size() != source->num_vars()) {
    throw ChartMismatch("map " + source->name() + " -> " + target->name() + " has wrong arity");
  }
  if (!target_in_source) return;
  const auto& fwd = *target_in_source;
  if (fwd.size() != target->num_vars()) {
    throw ChartMismatch("map " + target->name() + " -> " + source->name() + " has wrong arity");
  }
  for (std::size_t v = 0; v < source->num_vars(); ++v) {
    if (!(substitute(source_in_target[v], source, fwd) == Poly::variable(source, v))) {
      throw ChartMismatch("round trip fails for " + source->var(v).name);
    }
  }
  for (std::size_t v = 0; v < target->num_vars(); ++v) {
    if (!(substitute(fwd[v], target, source_in_target) == Poly::variable(target, v))) {
      throw ChartMismatch("round trip fails for " + target->var(v).name);
    }
  }
}

PolyMatrix CoordMap::inverse_jacobian() const {
  PolyMatrix k(target, source->num_coords(), target->num_coords());
  for (std::size_t p = 0; p < source->num_coords(); ++p) {
    const Poly s = source_coordinate(p);
    for (std::size_t c = 0; c < target->num_coords(); ++c) k(p, c) = diff_coord(s, c);
  }
  return k;
}

CoordMap make_coord_map(ChartPtr source, ChartPtr target, std::vector<Poly> source_in_target,
                        std::optional<std::vector<Poly>> target_in_source) {
  CoordMap m{std::move(source), std::move(target), std::move(source_in_target), std::move(target_in_source)};
  for (auto& p : m.source_in_target) p = rechart(p, m.target);
  if (m.target_in_source) {
    for (auto& p : *m.target_in_source) p = rechart(p, m.source);
  }
  m.verify();
  return m;
}

CoordMap compose(const CoordMap& first, const CoordMap& second) {
  if (!compatible(first.target, second.source)) {
    throw ChartMismatch("cannot compose " + first.target->name() + " with " + second.source->name());
  }
  CoordMap out;
  out.source = first.source;
  out.target = second.target;
  for (const auto& p : first.source_in_target) {
    out.source_in_target.push_back(substitute(p, second.target, second.source_in_target));
  }
  if (first.target_in_source && second.target_in_source) {
    std::vector<Poly> fwd;
    for (const auto& p : *second.target_in_source) {
      fwd.push_back(substitute(p, first.source, *first.target_in_source));
    }
    out.target_in_source = std::move(fwd);
  }
  out.verify();
  return out;
}

CoordMap identity_map(const ChartPtr& chart) {
  std::vector<Poly> vars;
  for (std::size_t v = 0; v < chart->num_vars(); ++v) vars.push_back(Poly::variable(chart, v));
  return CoordMap{chart, chart, vars, vars};
}

Poly elementary_symmetric(const std::vector<Poly>& xs, int j, const ChartPtr& chart) {
  // e[i] after processing a prefix of xs
  std::vector<Poly> e(static_cast<std::size_t>(j + 1), Poly(chart));
  e[0] = Poly::constant(chart, 1);
  for (const auto& x : xs) {
    for (int i = j; i >= 1; --i) {
      const auto ii = static_cast<std::size_t>(i);
      if (!e[ii - 1].is_zero()) e[ii] += e[ii - 1] * x;
    }
  }
  return e[static_cast<std::size_t>(j)];
}

Generators build_generators(const RootSystemSpec& spec) {
  const RootData rd = build_root_data(spec);
  const int l = spec.rank;
  Generators g;
  g.spec = spec;
  g.y_chart = make_y_chart(spec);
  std::vector<VarSpec> vars;
  if (spec.family == Family::C) {
    for (int a = 1; a <= l; ++a) vars.push_back({indexed("zeta", a), Rational(0), false});
    vars.push_back({"E", Rational(1), true});
    g.base = Chart::polynomial_ring("zeta", std::move(vars));
    std::vector<Poly> zeta;
    for (int a = 0; a < l; ++a) zeta.push_back(Poly::variable(g.base, static_cast<std::size_t>(a)));
    const Poly e = Poly::variable(g.base, "E");
    for (int j = 1; j <= l; ++j) {
      const int d = static_cast<int>(rd.degrees.d[static_cast<std::size_t>(j - 1)].get_num().get_si());
      g.y_of_base.push_back(pow(e, static_cast<unsigned>(d)) * elementary_symmetric(zeta, j, g.base));
    }
    g.y_of_base.push_back(e);
    return g;
  }
  for (int a = 1; a <= l; ++a) vars.push_back({indexed("r", a), Rational(0), false});
  vars.push_back({"Q", make_rational(1, 4), true});
  g.base = Chart::polynomial_ring("root", std::move(vars));
  std::vector<Poly> r;
  std::vector<Poly> zeta;
  for (int a = 0; a < l; ++a) {
    r.push_back(Poly::variable(g.base, static_cast<std::size_t>(a)));
    zeta.push_back(r.back() * r.back());
  }
  const Poly q = Poly::variable(g.base, "Q");
  auto twist = [&](int j) {
    const Rational power = 4 * rd.degrees.d[static_cast<std::size_t>(j - 1)];
    return pow(q, static_cast<unsigned>(power.get_num().get_si()));
  };
  for (int j = 1; j < l; ++j) g.y_of_base.push_back(twist(j) * elementary_symmetric(zeta, j, g.base));
  Poly prod = Poly::constant(g.base, 1);
  for (const auto& x : r) prod *= x;
  g.y_of_base.push_back(twist(l) * prod);
  g.y_of_base.push_back(pow(q, spec.vertex == l ? 2 : 4));
  return g;
}

GenPolyP assemble_P(const RootSystemSpec& spec) {
  spec.validate();
  if (spec.family != Family::C) throw InvalidSpec("the generating polynomial P(u) is defined for C_l");
  const int l = spec.rank;
  const int k = spec.vertex;
  GenPolyP gp;
  gp.spec = spec;
  gp.theta_chart = make_theta_chart(spec);
  const ChartPtr y = make_y_chart(spec);
  const Poly e = Poly::variable(y, "E");
  std::vector<Poly> theta;
  theta.push_back(pow(e, static_cast<unsigned>(k)));
  for (int j = 1; j <= l; ++j) {
    Poly yj = Poly::variable(y, indexed("y", j));
    if (j < k) yj *= pow(e, static_cast<unsigned>(k - j));
    theta.push_back(yj);
  }
  gp.theta_to_y = make_coord_map(gp.theta_chart, y, std::move(theta));
  return gp;
}

bool GenPolyP::expansion_identity_holds() const {
  const int l = spec.rank;
  const int k = spec.vertex;
  const Generators gens = build_generators(spec);
  std::vector<VarSpec> vars = gens.base->vars();
  vars.push_back({"u", Rational(1), false});
  const ChartPtr chart = Chart::polynomial_ring("zeta_u", std::move(vars));
  std::vector<Poly> y_images;
  for (const auto& p : gens.y_of_base) y_images.push_back(rechart(p, chart));
  // y chart variables: y1..yl, y{l+1}, E
  std::vector<Poly> y_vars(y_images.begin(), y_images.begin() + l);
  y_vars.push_back(Poly(chart));
  y_vars.push_back(y_images.back());
  const Poly u = Poly::variable(chart, "u");
  Poly lhs(chart);
  for (int j = 0; j <= l; ++j) {
    const Poly th = substitute(theta_to_y.source_in_target[static_cast<std::size_t>(j)], chart, y_vars);
    lhs += pow(u, static_cast<unsigned>(l - j)) * th;
  }
  Poly rhs = pow(Poly::variable(chart, "E"), static_cast<unsigned>(k));
  for (int a = 1; a <= l; ++a) rhs *= u + Poly::variable(chart, indexed("zeta", a));
  return lhs == rhs;
}

ChartPtr make_oracle_chart(const RootSystemSpec& spec) {
  spec.validate();
  std::vector<VarSpec> vars;
  for (int a = 1; a <= spec.rank; ++a) vars.push_back({indexed("delta", a), Rational(0), true});
  vars.push_back({"q", make_rational(1, 4), true});
  return Chart::polynomial_ring("x", std::move(vars));
}

std::vector<Poly> generators_on_oracle(const Generators& gens, const ChartPtr& oracle) {
  const int l = gens.spec.rank;
  auto delta = [&](int a) {
    if (a == 0) return Poly::constant(oracle, 1);
    return Poly::variable(oracle, static_cast<std::size_t>(a - 1));
  };
  auto inv = [&](int a, int power) {
    Monomial m;
    if (a > 0) m[static_cast<std::size_t>(a - 1)] = static_cast<Exponent>(-power);
    return Poly::term(oracle, m, 1);
  };
  // 2 cos pi(x_a - x_{a-1}) in the delta variables
  auto half = [&](int a) { return delta(a) * inv(a - 1, 1) + delta(a - 1) * inv(a, 1); };
  std::vector<Poly> base_images;
  if (gens.spec.family == Family::C) {
    for (int a = 1; a <= l; ++a) base_images.push_back(pow(half(a), 2));
    base_images.push_back(pow(Poly::variable(oracle, "q"), 4));
  } else {
    for (int a = 1; a < l; ++a) base_images.push_back(half(a));
    base_images.push_back(delta(l - 1) * inv(l, 2) + pow(delta(l), 2) * inv(l - 1, 1));
    base_images.push_back(Poly::variable(oracle, "q"));
  }
  std::vector<Poly> out;
  for (const auto& p : gens.y_of_base) out.push_back(substitute(p, oracle, base_images));
  return out;
}

PolyMatrix oracle_gram(const RootSystemSpec& spec, const ChartPtr& oracle, const std::vector<Poly>& functions,
                       const std::vector<Rational>& log_scale) {
  const RootData rd = build_root_data(spec);
  const std::size_t l = static_cast<std::size_t>(spec.rank);
  const std::size_t n = functions.size();
  // D_a f with D_a = (i pi)^{-1} d/dx_a
  std::vector<std::vector<Poly>> d(n, std::vector<Poly>(l + 1, Poly(oracle)));
  for (std::size_t i = 0; i < n; ++i) {
    if (log_scale[i] != 0) {
      d[i][l] = Poly::constant(oracle, 2 * log_scale[i]);
      continue;
    }
    for (std::size_t a = 0; a < l; ++a) d[i][a] = euler_diff(functions[i], a);
    d[i][l] = make_rational(1, 2) * euler_diff(functions[i], l);
  }
  PolyMatrix g(oracle, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Poly acc(oracle);
      for (std::size_t a = 0; a <= l; ++a) {
        if (d[i][a].is_zero()) continue;
        for (std::size_t b = 0; b <= l; ++b) {
          const Rational& m = rd.metric(a, b);
          if (m == 0 || d[j][b].is_zero()) continue;
          acc += m * (d[i][a] * d[j][b]);
        }
      }
      g(i, j) = acc;
      g(j, i) = acc;
    }
  }
  return g;
}

std::vector<Monomial> monomials_of_degree(const Chart& chart, const std::vector<std::size_t>& vars,
                                          const Rational& degree) {
  for (auto v : vars) {
    if (chart.var(v).weight <= 0) throw InvalidSpec("monomial enumeration needs positive weights");
  }
  std::vector<Monomial> out;
  Monomial cur;
  std::function<void(std::size_t, Rational)> rec = [&](std::size_t pos, Rational left) {
    if (pos == vars.size()) {
      if (left == 0) out.push_back(cur);
      return;
    }
    const Rational& w = chart.var(vars[pos]).weight;
    Exponent e = 0;
    while (left >= 0) {
      cur[vars[pos]] = e;
      rec(pos + 1, left);
      left -= w;
      ++e;
    }
    cur[vars[pos]] = 0;
  };
  rec(0, degree);
  return out;
}

PolyMatrix compute_g_direct(const RootSystemSpec& spec, int max_rank) {
  spec.validate();
  if (spec.rank > max_rank) {
    throw InvalidSpec("direct computation limited to rank <= " + std::to_string(max_rank));
  }
  const RootData rd = build_root_data(spec);
  const std::size_t l = static_cast<std::size_t>(spec.rank);
  const Generators gens = build_generators(spec);
  const ChartPtr oracle = make_oracle_chart(spec);
  const std::vector<Poly> images = generators_on_oracle(gens, oracle);

  std::vector<Poly> functions(images.begin(), images.begin() + static_cast<long>(l));
  functions.push_back(Poly(oracle));
  std::vector<Rational> log_scale(l + 1);
  log_scale[l] = 1;
  PolyMatrix gx = oracle_gram(spec, oracle, functions, log_scale);

  const ChartPtr y = gens.y_chart;
  const auto e_var = static_cast<std::size_t>(y->coord(l).exp_var);
  std::vector<std::size_t> basis_vars;
  for (std::size_t j = 0; j < l; ++j) basis_vars.push_back(j);
  basis_vars.push_back(e_var);

  std::map<Monomial, Poly, GradedLexGreater> cache;
  std::function<const Poly&(const Monomial&)> image_of = [&](const Monomial& m) -> const Poly& {
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    Poly value = Poly::constant(oracle, 1);
    for (auto v : basis_vars) {
      if (m[v] == 0) continue;
      const Poly& rest = image_of(m / Monomial::unit(v));
      value = rest * (v == e_var ? images[l] : images[v]);
      break;
    }
    return cache.emplace(m, std::move(value)).first->second;
  };

  auto degree_of = [&](std::size_t i) { return i < l ? rd.degrees.d[i] : Rational(0); };

  PolyMatrix g(y, l + 1, l + 1);
  for (std::size_t i = 0; i <= l; ++i) {
    for (std::size_t j = i; j <= l; ++j) {
      const Poly target = make_rational(-1, 4) * gx(i, j);
      const std::vector<Monomial> basis = monomials_of_degree(*y, basis_vars, degree_of(i) + degree_of(j));
      std::map<Monomial, LinearEquation, GradedLexGreater> rows;
      for (std::size_t b = 0; b < basis.size(); ++b) {
        for (const auto& [mono, c] : image_of(basis[b]).terms()) rows[mono].coeffs[b] += c;
      }
      for (const auto& [mono, c] : target.terms()) rows[mono].rhs += c;
      std::vector<LinearEquation> eqs;
      for (auto& [mono, eq] : rows) eqs.push_back(std::move(eq));
      const LinearSolveResult res = solve_linear(basis.size(), eqs);
      if (res.kind != SolveKind::Unique) {
        throw ReexpressionFailed("g^{" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                 "} is not uniquely a polynomial in the generators");
      }
      Poly entry(y);
      for (std::size_t b = 0; b < basis.size(); ++b) entry.add_term(basis[b], res.solution[b]);
      g(i, j) = entry;
      g(j, i) = entry;
    }
  }
  return g;
}

}  // namespace orbitfm
