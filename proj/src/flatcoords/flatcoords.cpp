#include "orbitfm/flatcoords.hpp"

#include <functional>

#include "orbitfm/errors.hpp"
#include "orbitfm/linsolve.hpp"

namespace orbitfm {

namespace {

std::string indexed(const std::string& stem, int i) { return stem + std::to_string(i); }

std::size_t idx(int one_based) { return static_cast<std::size_t>(one_based - 1); }

void require_c(const RootSystemSpec& spec, const char* what) {
  spec.validate();
  if (spec.family != Family::C) throw InvalidSpec(std::string(what) + " is built for C_l");
}

ChartPtr named_chart(const std::string& stem, const std::vector<Rational>& weights, bool last_laurent,
                     const Rational& exp_weight) {
  std::vector<VarSpec> vars;
  const int l = static_cast<int>(weights.size());
  for (int j = 1; j <= l; ++j) vars.push_back({indexed(stem, j), weights[idx(j)], last_laurent && j == l});
  return Chart::with_exponential(stem, std::move(vars), indexed(stem, l + 1), "E", exp_weight);
}

ChartPtr make_z_chart(const RootSystemSpec& spec) {
  const RootData rd = build_root_data(spec);
  return named_chart("z", rd.degrees.d, false, Rational(1));
}

// Solves "every residual vanishes" for the unknowns of `candidate`.
Poly solve_ansatz(const LinearForm& candidate, std::size_t unknowns, const std::vector<LinearForm>& residuals,
                  const std::string& what, bool& parametric) {
  std::vector<LinearEquation> eqs;
  for (const auto& r : residuals) r.append_vanishing(eqs);
  const LinearSolveResult sol = solve_linear(unknowns, eqs);
  if (sol.kind == SolveKind::Inconsistent) throw AnsatzInsufficient(what);
  if (sol.kind == SolveKind::Parametric) parametric = true;
  return candidate.evaluate(sol.solution);
}

LinearForm ansatz(const Poly& head, const Poly& factor, const std::vector<Monomial>& basis) {
  LinearForm t(head);
  for (std::size_t b = 0; b < basis.size(); ++b) {
    t += LinearForm::unknown(b, factor * Poly::term(head.chart(), basis[b], Rational(1)));
  }
  return t;
}

// eta^{ai} d_i d_j t + gamma^{am}_j d_m t for every a, j.
std::vector<LinearForm> contravariant_flatness(const PolyMatrix& eta, const ChristoffelContra& gamma,
                                               const LinearForm& t) {
  const std::size_t n = eta.rows();
  std::vector<LinearForm> dt(n);
  for (std::size_t m = 0; m < n; ++m) dt[m] = diff_coord(t, m);
  std::vector<LinearForm> out;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<LinearForm> ddt(n);
    for (std::size_t i = 0; i < n; ++i) ddt[i] = diff_coord(dt[j], i);
    for (std::size_t a = 0; a < n; ++a) {
      LinearForm r(Poly(eta.chart()));
      for (std::size_t i = 0; i < n; ++i) {
        if (!eta(a, i).is_zero()) r += eta(a, i) * ddt[i];
      }
      for (std::size_t m = 0; m < n; ++m) {
        if (!gamma(a, m, j).is_zero()) r += gamma(a, m, j) * dt[m];
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

// d_i d_j t - gamma^m_{ij} d_m t, gamma stored at (i, j, m).
std::vector<LinearForm> covariant_flatness(const ChristoffelContra& gamma, const LinearForm& t) {
  const std::size_t n = gamma.size();
  std::vector<LinearForm> dt(n);
  for (std::size_t m = 0; m < n; ++m) dt[m] = diff_coord(t, m);
  std::vector<LinearForm> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      LinearForm r = diff_coord(dt[j], i);
      for (std::size_t m = 0; m < n; ++m) {
        if (!gamma(i, j, m).is_zero()) r -= gamma(i, j, m) * dt[m];
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

void set_sym(PolyMatrix& m, int i, int j, const Poly& p) {
  m(idx(i), idx(j)) = p;
  m(idx(j), idx(i)) = p;
}

// The common A block and the k <-> l+1 entry.
PolyMatrix a_block(int l, int k, const ChartPtr& chart) {
  PolyMatrix eta(chart, static_cast<std::size_t>(l + 1), static_cast<std::size_t>(l + 1));
  for (int i = 1; i <= k - 1; ++i) set_sym(eta, i, k - i, Poly::constant(chart, k));
  set_sym(eta, k, l + 1, Poly::constant(chart, 1));
  return eta;
}

PolyMatrix z_block_form(const RootSystemSpec& spec, const ChartPtr& z) {
  const int l = spec.rank;
  const int k = spec.vertex;
  PolyMatrix eta = a_block(l, k, z);
  for (int a = 1; a <= l - k; ++a) {
    for (int b = 1; b <= l - k; ++b) {
      const int m = a + b - 1;
      if (m <= l - k) set_sym(eta, k + a, k + b, Rational(4 * m) * Poly::variable(z, idx(k + m)));
    }
  }
  return eta;
}

std::string first_difference(const PolyMatrix& got, const PolyMatrix& want) {
  for (std::size_t i = 0; i < got.rows(); ++i) {
    for (std::size_t j = 0; j < got.cols(); ++j) {
      if (!(got(i, j) == want(i, j))) {
        return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): got " + to_string(got(i, j)) +
               ", expected " + to_string(want(i, j));
      }
    }
  }
  return {};
}

}  // namespace

BSeries b_recursion(int n) {
  if (n < 0) throw InvalidSpec("negative B table size");
  BSeries s;
  s.n = n;
  const auto sz = static_cast<std::size_t>(n + 1);
  s.b.assign(sz, std::vector<Rational>(sz));
  for (int i = 1; i <= n; ++i) s.b[idx(i + 1)][idx(i + 1)] = 1;
  auto at = [&](int i, int m) -> Rational& { return s.b[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)]; };

  // Level o: unknowns B^i_{i+o}, i = 1..n-o (unknown index i-1). Equations with
  // m = i+j-1+o; lower levels are known.
  for (int o = 1; o < n; ++o) {
    const int count = n - o;
    std::vector<LinearEquation> eqs;
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        const int m = i + j - 1 + o;
        if (m > n) continue;
        LinearEquation eq;
        auto add = [&](int r, int col, const Rational& c) {
          if (col - r == o) {
            eq.coeffs[idx(r)] += c;
          } else {
            eq.rhs -= c * at(r, col);
          }
        };
        add(i + j - 1, m, Rational(4 * (i + j - 1)));
        if (i + j <= m) add(i + j, m, Rational(i + j));
        // 4m sum_{a+b=m+1} B^i_a B^j_b, at most one factor at level o
        for (int a = i; a <= m + 1 - j; ++a) {
          const int b = m + 1 - a;
          const Rational c(-4 * m);
          if (a - i == o) {
            eq.coeffs[idx(i)] += c * at(j, b);
          } else if (b - j == o) {
            eq.coeffs[idx(j)] += c * at(i, a);
          } else {
            eq.rhs -= c * at(i, a) * at(j, b);
          }
        }
        std::erase_if(eq.coeffs, [](const auto& kv) { return kv.second == 0; });
        eqs.push_back(std::move(eq));
      }
    }
    const LinearSolveResult sol = solve_linear(static_cast<std::size_t>(count), eqs);
    if (sol.kind != SolveKind::Unique) {
      throw SeriesRecursionMismatch("recursion level " + std::to_string(o) + " is not uniquely solvable");
    }
    for (int i = 1; i <= count; ++i) at(i, i + o) = sol.solution[idx(i)];
  }
  return s;
}

BSeries b_series(int n) {
  if (n < 0) throw InvalidSpec("negative B table size");
  // In t = x^2 with x = sqrt(t)/2: cosh x = sum t^a / (4^a (2a)!),
  // 2 sinh(x)/sqrt(t) = sum t^a / (4^a (2a+1)!).
  const auto sz = static_cast<std::size_t>(n + 1);
  std::vector<Rational> ch(sz), sh(sz);
  mpz_class fact = 1;
  mpz_class four = 1;
  for (int a = 0; a <= n; ++a) {
    if (a > 0) four *= 4;
    if (a > 0) fact *= (2 * a - 1) * (2 * a);
    ch[static_cast<std::size_t>(a)] = Rational(mpz_class(1), four * fact);
    ch[static_cast<std::size_t>(a)].canonicalize();
    sh[static_cast<std::size_t>(a)] = Rational(mpz_class(1), four * fact * (2 * a + 1));
    sh[static_cast<std::size_t>(a)].canonicalize();
  }
  auto mul = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
    std::vector<Rational> r(sz);
    for (std::size_t a = 0; a < sz; ++a) {
      for (std::size_t b = 0; a + b < sz; ++b) r[a + b] += x[a] * y[b];
    }
    return r;
  };
  BSeries s;
  s.n = n;
  s.b.assign(sz, std::vector<Rational>(sz));
  std::vector<Rational> f = mul(ch, sh);  // i = 1
  const std::vector<Rational> sh2 = mul(sh, sh);
  for (int i = 1; i <= n; ++i) {
    for (int m = i; m <= n; ++m) s.b[idx(i + 1)][static_cast<std::size_t>(m)] = f[static_cast<std::size_t>(m - i)];
    f = mul(f, sh2);
  }
  return s;
}

BSeries b_coefficients(int n) {
  BSeries rec = b_recursion(n);
  const BSeries ser = b_series(n);
  for (int i = 1; i <= n; ++i) {
    for (int m = i; m <= n; ++m) {
      if (rec(i, m) != ser(i, m)) {
        throw SeriesRecursionMismatch("B^" + std::to_string(i) + "_" + std::to_string(m) + ": recursion " +
                                      rec(i, m).get_str() + ", series " + ser(i, m).get_str());
      }
    }
  }
  return rec;
}

std::vector<Poly> solve_p_block(const FlatPencil& pencil, bool* parametric) {
  require_c(pencil.spec, "the p-block");
  const int k = pencil.spec.vertex;
  const ChartPtr& y = pencil.chart;
  const RootData rd = build_root_data(pencil.spec);
  const std::size_t e = y->var_index("E");
  std::vector<Poly> p;
  bool any_parametric = false;
  for (int j = 1; j <= k; ++j) {
    std::vector<std::size_t> vars;
    for (int i = 1; i < j; ++i) vars.push_back(idx(i));
    vars.push_back(e);
    const std::vector<Monomial> basis = monomials_of_degree(*y, vars, rd.degrees.d[idx(j)]);
    const Poly head = Poly::variable(y, idx(j));
    const LinearForm t = ansatz(head, Poly::constant(y, 1), basis);
    bool par = false;
    const Poly flat = solve_ansatz(t, basis.size(), contravariant_flatness(pencil.eta, pencil.gamma_eta, t),
                                   "no flat coordinate y^" + std::to_string(j) + " + p_" + std::to_string(j), par);
    any_parametric = any_parametric || par;
    p.push_back(flat - head);
  }
  if (parametric) *parametric = any_parametric;
  return p;
}

ZChart build_z_chart(const FlatPencil& pencil) {
  require_c(pencil.spec, "the z-chart");
  const int l = pencil.spec.rank;
  const int k = pencil.spec.vertex;
  const int n = l - k;
  const ChartPtr& y = pencil.chart;
  const ChartPtr z = make_z_chart(pencil.spec);
  ZChart out;
  out.p = solve_p_block(pencil, &out.parametric);
  out.b = b_coefficients(n);

  // c = inverse of the unipotent upper triangular B (rows/cols 1..n)
  const auto sz = static_cast<std::size_t>(n + 1);
  out.c.assign(sz, std::vector<Rational>(sz));
  for (int i = n; i >= 1; --i) {
    out.c[idx(i + 1)][idx(i + 1)] = 1;
    for (int m = i + 1; m <= n; ++m) {
      Rational s;
      for (int a = i + 1; a <= m; ++a) s -= out.b(i, a) * out.c[static_cast<std::size_t>(a)][static_cast<std::size_t>(m)];
      out.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)] = s;
    }
  }

  const std::size_t nv = y->num_vars();
  std::vector<Poly> y_in_z(nv), z_in_y(nv);
  for (std::size_t v = static_cast<std::size_t>(l); v < nv; ++v) {
    y_in_z[v] = Poly::variable(z, v);
    z_in_y[v] = Poly::variable(y, v);
  }
  for (int j = 1; j <= k; ++j) {
    z_in_y[idx(j)] = Poly::variable(y, idx(j)) + out.p[idx(j)];
    y_in_z[idx(j)] = Poly::variable(z, idx(j));
  }
  // y^j = z^j - p_j(y^1(z), ..., E): the p_j only involve lower y.
  for (int j = 1; j <= k; ++j) {
    std::vector<Poly> images = y_in_z;
    for (auto& im : images) {
      if (!im.chart()) im = Poly(z);
    }
    y_in_z[idx(j)] = Poly::variable(z, idx(j)) - substitute(out.p[idx(j)], z, images);
  }
  for (int i = 1; i <= n; ++i) {
    Poly yi(z), zi(y);
    for (int m = i; m <= n; ++m) {
      yi += out.b(i, m) * Poly::variable(z, idx(k + m));
      zi += out.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)] * Poly::variable(y, idx(k + m));
    }
    y_in_z[idx(k + i)] = yi;
    z_in_y[idx(k + i)] = zi;
  }
  out.y_to_z = make_coord_map(y, z, y_in_z, z_in_y);
  out.eta = transform_form(pencil.eta, make_transport(out.y_to_z));
  const std::string diff = first_difference(out.eta, z_block_form(pencil.spec, z));
  if (!diff.empty()) throw BlockFormMismatch("eta(z) " + diff);
  return out;
}

ChartPtr make_w_chart(const RootSystemSpec& spec) {
  require_c(spec, "the w-chart");
  const int l = spec.rank;
  const int k = spec.vertex;
  const int n = l - k;
  const RootData rd = build_root_data(spec);
  std::vector<Rational> w = rd.degrees.d;
  if (n >= 1) {
    w[idx(l)] = make_rational(k, 2 * n);
    if (n >= 2) w[idx(k + 1)] = make_rational(k * (2 * n - 1), 2 * n);
    for (int j = k + 2; j <= l - 1; ++j) w[idx(j)] = make_rational(k * (l - j), n);
  }
  return named_chart("w", w, n >= 1, Rational(1));
}

PolyMatrix w_block_form(const RootSystemSpec& spec, const ChartPtr& w) {
  const int l = spec.rank;
  const int k = spec.vertex;
  const int n = l - k;
  if (n == 0) return z_block_form(spec, w);
  PolyMatrix eta = a_block(l, k, w);
  if (n == 1) {
    set_sym(eta, l, l, Poly::constant(w, 1));
    return eta;
  }
  set_sym(eta, k + 1, l, Poly::constant(w, 2));
  const Monomial inv_s2 = Monomial::unit(idx(l), -2);
  for (int a = k + 2; a <= l - 1; ++a) {
    for (int b = k + 2; b <= l - 1; ++b) {
      const int j = a + b - 2 * k - 1;  // S_{k+j}
      if (j > n) continue;
      Poly s = j == n ? Poly::term(w, inv_s2, Rational(4 * n))
                      : Poly::term(w, inv_s2 * Monomial::unit(idx(k + j)), Rational(4 * j));
      eta(idx(a), idx(b)) = std::move(s);
    }
  }
  return eta;
}

WChart build_w_chart(const RootSystemSpec& spec, const ZChart& z) {
  const int l = spec.rank;
  const int k = spec.vertex;
  const int n = l - k;
  const ChartPtr& zc = z.y_to_z.target;
  WChart out;
  out.chart = make_w_chart(spec);
  const ChartPtr& w = out.chart;
  std::vector<Poly> z_in_w;
  for (std::size_t v = 0; v < zc->num_vars(); ++v) z_in_w.push_back(Poly::variable(w, v));
  if (n >= 1) {
    const std::size_t s = idx(l);
    z_in_w[idx(l)] = Poly::term(w, Monomial::unit(s, static_cast<Exponent>(2 * n)), Rational(1));
    if (n >= 2) z_in_w[idx(k + 1)] = Poly::term(w, Monomial::unit(idx(k + 1)) * Monomial::unit(s), Rational(1));
    for (int j = k + 2; j <= l - 1; ++j) {
      z_in_w[idx(j)] =
          Poly::term(w, Monomial::unit(idx(j)) * Monomial::unit(s, static_cast<Exponent>(2 * (j - k))), Rational(1));
    }
  }
  out.z_to_w = make_coord_map(zc, w, z_in_w);
  out.eta = transform_form(z.eta, make_transport(out.z_to_w));
  const std::string diff = first_difference(out.eta, w_block_form(spec, w));
  if (!diff.empty()) throw BlockFormMismatch("eta(w) " + diff);

  out.eta_cov = inverse_unit_det(out.eta);
  const std::size_t nc = w->num_coords();
  std::vector<PolyMatrix> d_cov;
  for (std::size_t c = 0; c < nc; ++c) d_cov.push_back(diff_coord(out.eta_cov, c));
  out.gamma = ChristoffelContra(w, nc);
  for (std::size_t i = 0; i < nc; ++i) {
    for (std::size_t j = i; j < nc; ++j) {
      for (std::size_t m = 0; m < nc; ++m) {
        Poly acc(w);
        for (std::size_t s = 0; s < nc; ++s) {
          if (out.eta(m, s).is_zero()) continue;
          const Poly bracket = d_cov[i](s, j) + d_cov[j](s, i) - d_cov[s](i, j);
          if (!bracket.is_zero()) acc += out.eta(m, s) * bracket;
        }
        acc *= make_rational(1, 2);
        out.gamma(i, j, m) = acc;
        out.gamma(j, i, m) = acc;
      }
    }
  }
  return out;
}

void check_gamma_w(const RootSystemSpec& spec, const WChart& w) {
  const int l = spec.rank;
  const int k = spec.vertex;
  const ChartPtr& c = w.chart;
  const std::size_t nc = c->num_coords();
  auto label = [](const std::string& what, std::size_t i, std::size_t j, std::size_t m) {
    return what + " fails at gamma^" + std::to_string(m + 1) + "_{" + std::to_string(i + 1) + "," +
           std::to_string(j + 1) + "}";
  };
  // polynomial in w^{k+3}..w^l
  auto restricted = [&](const Poly& p) {
    for (const auto& [mono, coeff] : p.terms()) {
      for (std::size_t v = 0; v < c->num_vars(); ++v) {
        if (mono[v] == 0) continue;
        const int one = static_cast<int>(v) + 1;
        if (mono[v] < 0 || one < k + 3 || one > l) return false;
      }
    }
    return true;
  };
  for (std::size_t i = 0; i < nc; ++i) {
    for (std::size_t j = 0; j < nc; ++j) {
      for (std::size_t m = 0; m < nc; ++m) {
        const int m1 = static_cast<int>(m) + 1;
        const Poly& g = w.gamma(i, j, m);
        if ((m1 <= k || m1 == l || m1 == l + 1) && !g.is_zero()) throw PropertyViolation(label("vanishing", i, j, m));
        if (m1 == k + 1 && k + 1 < l) {
          if (!(g == -diff_coord(w.eta_cov(i, j), idx(l))) || !restricted(g)) {
            throw PropertyViolation(label("gamma^{k+1} = -d eta_ij / dw^l", i, j, m));
          }
        }
        if (m1 >= k + 2 && m1 <= l - 1) {
          const int i1 = static_cast<int>(i) + 1;
          const int j1 = static_cast<int>(j) + 1;
          if (i1 != l && j1 != l && !restricted(g)) throw PropertyViolation(label("polynomiality", i, j, m));
          if (i1 == l) {
            const Poly want = m == j ? Poly::term(c, Monomial::unit(idx(l), -1), Rational(1)) : Poly(c);
            if (!(g == want)) throw PropertyViolation(label("gamma^m_{lj} = delta^m_j / w^l", i, j, m));
          }
        }
      }
    }
  }
  // deg gamma^m_{ij} = w_m - w_i - w_j
  std::vector<Rational> neg;
  for (std::size_t v = 0; v < nc; ++v) {
    const Coordinate& co = c->coord(v);
    neg.push_back(co.is_exponential() ? Rational(0) : Rational(-c->var(static_cast<std::size_t>(co.var)).weight));
  }
  if (!degrees_match(w.gamma, neg)) throw PropertyViolation("gamma(w) is not weighted homogeneous");
}

ChartPtr make_t_chart(const RootSystemSpec& spec) {
  require_c(spec, "the t-chart");
  const RootData rd = build_root_data(spec);
  std::vector<Rational> w(rd.degrees.d_tilde.begin(), rd.degrees.d_tilde.end() - 1);
  return named_chart("t", w, spec.rank > spec.vertex, make_rational(1, spec.vertex));
}

PolyMatrix eta_flat_pattern(const RootSystemSpec& spec, const ChartPtr& t) {
  const int l = spec.rank;
  const int k = spec.vertex;
  const int n = l - k;
  PolyMatrix eta = a_block(l, k, t);
  if (n == 0) return eta;
  if (n == 1) {
    set_sym(eta, l, l, Poly::constant(t, 1));
    return eta;
  }
  set_sym(eta, k + 1, l, Poly::constant(t, 2));
  for (int i = k + 2; i <= l - 1; ++i) eta(idx(i), idx(k + l + 1 - i)) = Poly::constant(t, 4 * n);
  return eta;
}

FlatChart solve_flat_chart(const RootSystemSpec& spec, const WChart& w) {
  const int l = spec.rank;
  const int k = spec.vertex;
  const int n = l - k;
  const ChartPtr& wc = w.chart;
  FlatChart out;
  out.chart = make_t_chart(spec);
  const ChartPtr& tc = out.chart;
  const std::size_t nv = wc->num_vars();
  const Poly s = Poly::variable(wc, idx(l));

  for (std::size_t v = 0; v < nv; ++v) out.t_of_w.push_back(Poly::variable(wc, v));
  for (int j = k + 1; j <= l - 1; ++j) {
    std::vector<std::size_t> vars;
    for (int i = j + 1; i <= l - 1; ++i) vars.push_back(idx(i));
    const Rational deg = make_rational(k * (l - j), n);
    const std::vector<Monomial> basis = j == l - 1 ? std::vector<Monomial>{} : monomials_of_degree(*wc, vars, deg);
    const Poly head = j == k + 1 ? Poly::variable(wc, idx(j)) : s * Poly::variable(wc, idx(j));
    const LinearForm t = ansatz(head, s, basis);
    bool par = false;
    const Poly flat = solve_ansatz(t, basis.size(), covariant_flatness(w.gamma, t),
                                   "no flat coordinate for t^" + std::to_string(j), par);
    out.parametric = out.parametric || par;
    out.h.push_back(exact_div(flat - head, s));
    out.t_of_w[idx(j)] = flat;
  }

  // w in t, from the top down
  std::vector<Poly> w_in_t(nv, Poly(tc));
  for (std::size_t v = 0; v < nv; ++v) {
    if (static_cast<int>(v) + 1 <= k || static_cast<int>(v) >= l) w_in_t[v] = Poly::variable(tc, v);
  }
  if (n >= 1) w_in_t[idx(l)] = Poly::variable(tc, idx(l));
  const Poly inv_tl = Poly::term(tc, Monomial::unit(idx(l), -1), Rational(1));
  for (int j = l - 1; j >= k + 1; --j) {
    const Poly hj = substitute(out.h[idx(j - k)], tc, w_in_t);
    if (j == k + 1) {
      w_in_t[idx(j)] = Poly::variable(tc, idx(j)) - Poly::variable(tc, idx(l)) * hj;
    } else {
      w_in_t[idx(j)] = Poly::variable(tc, idx(j)) * inv_tl - hj;
    }
  }
  std::vector<Poly> t_in_w = out.t_of_w;
  out.w_to_t = make_coord_map(wc, tc, w_in_t, t_in_w);
  out.eta = transform_form(w.eta, make_transport(out.w_to_t));
  const std::string diff = first_difference(out.eta, eta_flat_pattern(spec, tc));
  if (!diff.empty()) throw EtaPatternMismatch("eta(t) " + diff);
  return out;
}

FlatCoordinates build_flat_coordinates(const RootSystemSpec& spec) {
  require_c(spec, "flat coordinates");
  FlatCoordinates fc;
  fc.spec = spec;
  fc.pencil = build_flat_pencil(spec);
  fc.z = build_z_chart(fc.pencil);
  fc.w = build_w_chart(spec, fc.z);
  check_gamma_w(spec, fc.w);
  fc.t = solve_flat_chart(spec, fc.w);
  fc.y_to_t = compose(compose(fc.z.y_to_z, fc.w.z_to_w), fc.t.w_to_t);
  return fc;
}

}  // namespace orbitfm
