#include "orbitfm/metrics.hpp"

#include <functional>

#include "orbitfm/errors.hpp"

namespace orbitfm {

ChristoffelContra::ChristoffelContra(ChartPtr chart, std::size_t n)
    : chart_(std::move(chart)), n_(n), data_(n * n * n, Poly(chart_)) {}

bool operator==(const ChristoffelContra& a, const ChristoffelContra& b) {
  return a.n_ == b.n_ && a.data_ == b.data_;
}

namespace {

struct GeneratingRing {
  ChartPtr chart;  // theta0..thetal, u, v
  std::size_t u = 0;
  std::size_t v = 0;
  Poly pu, pv, dpu, dpv, uu, vv;
};

GeneratingRing generating_ring(const RootSystemSpec& spec) {
  const ChartPtr theta = make_theta_chart(spec);
  std::vector<VarSpec> vars = theta->vars();
  vars.push_back({"u", Rational(0), false});
  vars.push_back({"v", Rational(0), false});
  GeneratingRing r;
  r.chart = Chart::polynomial_ring("theta_uv", std::move(vars));
  r.u = r.chart->var_index("u");
  r.v = r.chart->var_index("v");
  r.uu = Poly::variable(r.chart, r.u);
  r.vv = Poly::variable(r.chart, r.v);
  const auto l = static_cast<unsigned>(spec.rank);
  r.pu = Poly(r.chart);
  r.pv = Poly(r.chart);
  for (unsigned j = 0; j <= l; ++j) {
    const Poly th = Poly::variable(r.chart, j);
    r.pu += pow(r.uu, l - j) * th;
    r.pv += pow(r.vv, l - j) * th;
  }
  r.dpu = diff(r.pu, r.u);
  r.dpv = diff(r.pv, r.v);
  return r;
}

/// Splits sum_{a,b} c_ab(theta) u^a v^b into out(l-a, l-b) += c_ab. The theta
/// variables lead both rings, so monomials carry over once u, v are cleared.
void scatter_uv(const Poly& gen, const GeneratingRing& r, int l,
                const std::function<Poly&(std::size_t, std::size_t)>& out) {
  for (const auto& [mono, c] : gen.terms()) {
    const int a = mono[r.u];
    const int b = mono[r.v];
    if (a > l || b > l) throw NonExactDivision("generating function has u/v degree above l");
    Monomial m = mono;
    m[r.u] = 0;
    m[r.v] = 0;
    out(static_cast<std::size_t>(l - a), static_cast<std::size_t>(l - b)).add_term(m, c);
  }
}

}  // namespace

PolyMatrix g_theta(const RootSystemSpec& spec) {
  spec.validate();
  if (spec.family != Family::C) throw InvalidSpec("g_theta is defined for C_l");
  const int l = spec.rank;
  const int k = spec.vertex;
  const GeneratingRing r = generating_ring(spec);
  const Poly four_u = r.uu * r.uu + 4 * r.uu;
  const Poly four_v = r.vv * r.vv + 4 * r.vv;
  const Poly diffuv = r.uu - r.vv;
  Poly num = Rational(k - l) * r.pu * r.pv * diffuv + four_u * r.dpu * r.pv - four_v * r.pu * r.dpv;
  const Poly gen = exact_div(num, diffuv);

  const ChartPtr theta = make_theta_chart(spec);
  const auto n = static_cast<std::size_t>(l + 1);
  PolyMatrix g(theta, n, n);
  scatter_uv(gen, r, l, [&](std::size_t i, std::size_t j) -> Poly& { return g(i, j); });
  return g;
}

ChristoffelContra gamma_theta(const RootSystemSpec& spec) {
  spec.validate();
  if (spec.family != Family::C) throw InvalidSpec("gamma_theta is defined for C_l");
  const int l = spec.rank;
  const int k = spec.vertex;
  const GeneratingRing r = generating_ring(spec);
  const Poly four_u = r.uu * r.uu + 4 * r.uu;
  const Poly four_v = r.vv * r.vv + 4 * r.vv;
  const Poly diffuv = r.uu - r.vv;
  const Poly diff2 = diffuv * diffuv;
  const Poly mixed = 2 * r.uu + r.uu * r.vv + 2 * r.vv;

  const ChartPtr theta = make_theta_chart(spec);
  const auto n = static_cast<std::size_t>(l + 1);
  ChristoffelContra gamma(theta, n);
  for (int m = 0; m <= l; ++m) {
    const auto e = static_cast<unsigned>(l - m);
    const Poly vm = pow(r.vv, e);
    const Poly um = pow(r.uu, e);
    const Poly dvm = e == 0 ? Poly(r.chart) : Rational(e) * pow(r.vv, e - 1);
    Poly num = Rational(k - l) * r.pu * vm * diff2;
    num += (four_u * r.dpu * vm - four_v * r.pu * dvm) * diffuv;
    num += mixed * (r.pv * um - r.pu * vm);
    const Poly gen = exact_div(num, diff2);
    const auto mm = static_cast<std::size_t>(m);
    scatter_uv(gen, r, l, [&](std::size_t i, std::size_t j) -> Poly& { return gamma(i, j, mm); });
  }
  return gamma;
}

Transport make_transport(const CoordMap& map) {
  Transport tr;
  tr.map = map;
  tr.k = map.inverse_jacobian();
  tr.j = inverse_unit_det(tr.k);
  return tr;
}

PolyMatrix transform_form(const PolyMatrix& form, const Transport& tr) {
  const ChartPtr& target = tr.map.target;
  PolyMatrix moved(target, form.rows(), form.cols());
  for (std::size_t i = 0; i < form.rows(); ++i) {
    for (std::size_t j = 0; j < form.cols(); ++j) {
      moved(i, j) = substitute(form(i, j), target, tr.map.source_in_target);
    }
  }
  return tr.j * moved * transpose(tr.j);
}

ChristoffelContra transform_christoffel(const PolyMatrix& g_target, const ChristoffelContra& gamma,
                                        const Transport& tr) {
  const ChartPtr& target = tr.map.target;
  const std::size_t n = gamma.size();
  ChristoffelContra src(target, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t m = 0; m < n; ++m) {
        if (!gamma(i, j, m).is_zero()) src(i, j, m) = substitute(gamma(i, j, m), target, tr.map.source_in_target);
      }
    }
  }
  const PolyMatrix& k = tr.k;
  const PolyMatrix& jac = tr.j;
  // A^{ij}_c = Gamma^{ij}_n K^n_c, then contract i and j with J.
  ChristoffelContra a(target, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t m = 0; m < n; ++m) {
        const Poly& s = src(i, j, m);
        if (s.is_zero()) continue;
        for (std::size_t c = 0; c < n; ++c) {
          if (!k(m, c).is_zero()) a(i, j, c) += s * k(m, c);
        }
      }
    }
  }
  ChristoffelContra b(target, n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t i = 0; i < n; ++i) {
      if (jac(p, i).is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t c = 0; c < n; ++c) {
          if (!a(i, j, c).is_zero()) b(p, j, c) += jac(p, i) * a(i, j, c);
        }
      }
    }
  }
  ChristoffelContra out(target, n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      for (std::size_t j = 0; j < n; ++j) {
        if (jac(q, j).is_zero()) continue;
        for (std::size_t c = 0; c < n; ++c) {
          if (!b(p, j, c).is_zero()) out(p, q, c) += jac(q, j) * b(p, j, c);
        }
      }
    }
  }
  // - J^b_p (d^2 s^p / dT^q dT^c) g^{aq}
  for (std::size_t bb = 0; bb < n; ++bb) {
    for (std::size_t q = 0; q < n; ++q) {
      for (std::size_t c = 0; c < n; ++c) {
        Poly mterm(target);
        for (std::size_t p = 0; p < n; ++p) {
          if (jac(bb, p).is_zero() || k(p, q).is_zero()) continue;
          const Poly h = diff_coord(k(p, q), c);
          if (!h.is_zero()) mterm += jac(bb, p) * h;
        }
        if (mterm.is_zero()) continue;
        for (std::size_t aa = 0; aa < n; ++aa) {
          if (!g_target(aa, q).is_zero()) out(aa, bb, c) -= g_target(aa, q) * mterm;
        }
      }
    }
  }
  return out;
}

PolyMatrix diff_coord(const PolyMatrix& m, std::size_t coord) {
  PolyMatrix out(m.chart(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = diff_coord(m(i, j), coord);
  }
  return out;
}

ChristoffelContra diff_coord(const ChristoffelContra& g, std::size_t coord) {
  const std::size_t n = g.size();
  ChristoffelContra out(g.chart(), n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t m = 0; m < n; ++m) out(i, j, m) = diff_coord(g(i, j, m), coord);
    }
  }
  return out;
}

namespace {

bool has_degree(const Poly& p, const Rational& d) {
  if (p.is_zero()) return true;
  const DegreeResult r = weighted_degree(p);
  return r.homogeneous && r.degree && *r.degree == d;
}

}  // namespace

bool degrees_match(const PolyMatrix& g, const std::vector<Rational>& w) {
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (!has_degree(g(i, j), w[i] + w[j])) return false;
    }
  }
  return true;
}

bool degrees_match(const ChristoffelContra& g, const std::vector<Rational>& w) {
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t m = 0; m < n; ++m) {
        if (!has_degree(g(i, j, m), w[i] + w[j] - w[m])) return false;
      }
    }
  }
  return true;
}

FlatPencil build_flat_pencil(const RootSystemSpec& spec) {
  const GenPolyP gp = assemble_P(spec);
  const Transport tr = make_transport(gp.theta_to_y);
  FlatPencil p;
  p.spec = spec;
  p.chart = gp.theta_to_y.target;
  p.g = transform_form(g_theta(spec), tr);
  p.gamma_g = transform_christoffel(p.g, gamma_theta(spec), tr);
  const auto k = static_cast<std::size_t>(spec.vertex - 1);
  p.eta = diff_coord(p.g, k);
  p.gamma_eta = diff_coord(p.gamma_g, k);
  return p;
}

PolyMatrix eta_closed_form(const RootSystemSpec& spec) {
  spec.validate();
  if (spec.family != Family::C) throw InvalidSpec("eta closed form is stated for C_l");
  const int l = spec.rank;
  const int k = spec.vertex;
  const ChartPtr y = make_y_chart(spec);
  const Poly e = Poly::variable(y, "E");
  auto yv = [&](int j) {
    if (j == 0) return Poly::constant(y, 1);
    return Poly::variable(y, static_cast<std::size_t>(j - 1));
  };
  auto R = [&](int j) { return Rational(4 * (k - j + 1)) * yv(j - 1) * e + Rational(k - j) * yv(j); };
  auto P = [&](int j) { return Rational(4 * (k - j + 1)) * yv(j - 1) * e; };
  auto Q = [&](int m) {
    Poly q = Rational(4 * m) * yv(k + m);
    if (m != l - k) q += Rational(m + 1) * yv(k + m + 1);
    return q;
  };
  const auto n = static_cast<std::size_t>(l + 1);
  PolyMatrix eta(y, n, n);
  auto set = [&](int i, int j, const Poly& p) {
    eta(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = p;
    eta(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(i - 1)) = p;
  };
  for (int i = 1; i <= k - 1; ++i) {
    for (int j = 1; j <= k - 1; ++j) {
      if (i + j == k) set(i, j, Poly::constant(y, k));
      if (i + j > k) set(i, j, R(i + j - k));
    }
  }
  for (int i = 1; i <= k; ++i) set(i, k, P(i));
  set(k, l + 1, Poly::constant(y, 1));
  for (int a = 1; a <= l - k; ++a) {
    for (int b = 1; b <= l - k; ++b) {
      if (a + b - 1 <= l - k) set(k + a, k + b, Q(a + b - 1));
    }
  }
  return eta;
}

namespace {

Poly det_eta_magnitude(const RootSystemSpec& spec, bool negative) {
  const int l = spec.rank;
  const int k = spec.vertex;
  const ChartPtr y = make_y_chart(spec);
  Rational c = negative ? -1 : 1;
  c *= rational_pow(Rational(k), k - 1);
  c *= rational_pow(Rational(4), l - k);
  c *= rational_pow(Rational(l - k), l - k);  // 0^0 = 1
  return c * pow(Poly::variable(y, static_cast<std::size_t>(l - 1)), static_cast<unsigned>(l - k));
}

}  // namespace

Poly det_eta_closed_form(const RootSystemSpec& spec) { return det_eta_magnitude(spec, spec.rank % 2 == 1); }

Poly det_eta_permutation_form(const RootSystemSpec& spec) {
  const int flips = 1 + (spec.vertex - 1) / 2 + (spec.rank - spec.vertex) / 2;
  return det_eta_magnitude(spec, flips % 2 == 1);
}

void check_eta_closed_form(const FlatPencil& pencil) {
  const PolyMatrix closed = eta_closed_form(pencil.spec);
  for (std::size_t i = 0; i < closed.rows(); ++i) {
    for (std::size_t j = 0; j < closed.cols(); ++j) {
      if (!(closed(i, j) == pencil.eta(i, j))) {
        throw ClosedFormMismatch("eta^{" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                 "}: derived " + to_string(pencil.eta(i, j)) + ", closed form " +
                                 to_string(closed(i, j)));
      }
    }
  }
}

DetEtaReport det_eta_check(const FlatPencil& pencil) {
  DetEtaReport r;
  r.det = determinant(pencil.eta);
  r.stated = det_eta_closed_form(pencil.spec);
  r.permutation = det_eta_permutation_form(pencil.spec);
  r.matches_stated = r.det == r.stated;
  r.matches_permutation = r.det == r.permutation;
  if (!r.matches_stated && !(r.det == -r.stated)) {
    throw DetMismatch("det eta = " + to_string(r.det) + ", expected +-" + to_string(r.stated));
  }
  return r;
}

bool linearity_check(const PolyMatrix& g, const ChristoffelContra& gamma, std::size_t k_coord) {
  const PolyMatrix g2 = diff_coord(diff_coord(g, k_coord), k_coord);
  for (std::size_t i = 0; i < g2.rows(); ++i) {
    for (std::size_t j = 0; j < g2.cols(); ++j) {
      if (!g2(i, j).is_zero()) return false;
    }
  }
  const ChristoffelContra c2 = diff_coord(diff_coord(gamma, k_coord), k_coord);
  const std::size_t n = c2.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t m = 0; m < n; ++m) {
        if (!c2(i, j, m).is_zero()) return false;
      }
    }
  }
  return true;
}

}  // namespace orbitfm
