#include "orbitfm/document.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

#include "orbitfm/errors.hpp"

namespace orbitfm {

using nlohmann::json;

namespace {

std::string rat_out(const Rational& r) { return r.get_str(); }

Rational rat_in(const json& j) {
  if (!j.is_string()) throw DocumentError("rational must be a string");
  const std::string s = j.get<std::string>();
  Rational r;
  try {
    r = Rational(s);
  } catch (const std::invalid_argument&) {
    throw DocumentError("bad rational '" + s + "'");
  }
  if (r.get_den() == 0) throw DocumentError("zero denominator in '" + s + "'");
  r.canonicalize();
  if (r.get_str() != s) throw DocumentError("rational '" + s + "' is not in lowest terms");
  return r;
}

json chart_out(const Chart& c) {
  json vars = json::array();
  for (const auto& v : c.vars()) vars.push_back({{"name", v.name}, {"weight", rat_out(v.weight)}, {"laurent", v.laurent}});
  json coords = json::array();
  for (const auto& co : c.coords()) {
    coords.push_back({{"name", co.name},
                      {"var", co.var},
                      {"log_var", co.log_var},
                      {"exp_var", co.exp_var},
                      {"exp_scale", rat_out(co.exp_scale)}});
  }
  return {{"name", c.name()}, {"variables", vars}, {"coordinates", coords}};
}

ChartPtr chart_in(const json& j) {
  std::vector<VarSpec> vars;
  for (const auto& v : j.at("variables")) {
    vars.push_back({v.at("name").get<std::string>(), rat_in(v.at("weight")), v.at("laurent").get<bool>()});
  }
  if (vars.size() > Chart::kMaxVars) throw DocumentError("too many variables");
  std::vector<Coordinate> coords;
  const int nv = static_cast<int>(vars.size());
  for (const auto& c : j.at("coordinates")) {
    Coordinate co{c.at("name").get<std::string>(), c.at("var").get<int>(), c.at("log_var").get<int>(),
                  c.at("exp_var").get<int>(), rat_in(c.at("exp_scale"))};
    for (int v : {co.var, co.log_var, co.exp_var}) {
      if (v < -1 || v >= nv) throw DocumentError("coordinate " + co.name + " refers to a missing variable");
    }
    if ((co.var < 0) == (co.exp_var < 0)) throw DocumentError("coordinate " + co.name + " is malformed");
    coords.push_back(std::move(co));
  }
  return std::make_shared<Chart>(j.at("name").get<std::string>(), std::move(vars), std::move(coords));
}

json poly_out(const Poly& p) {
  json terms = json::array();
  const Chart& c = *p.chart();
  for (const auto& [m, coeff] : p.terms()) {
    json mono = json::object();
    for (std::size_t v = 0; v < c.num_vars(); ++v) {
      if (m[v] != 0) mono[c.var(v).name] = m[v];
    }
    terms.push_back({{"coefficient", rat_out(coeff)}, {"monomial", mono}});
  }
  return terms;
}

Poly poly_in(const json& j, const ChartPtr& chart) {
  if (!j.is_array()) throw DocumentError("polynomial must be an array of terms");
  Poly p(chart);
  for (const auto& t : j) {
    Monomial m;
    for (const auto& [name, e] : t.at("monomial").items()) {
      const int v = chart->find_var(name);
      if (v < 0) throw DocumentError("unknown variable '" + name + "' in chart " + chart->name());
      if (!e.is_number_integer()) throw DocumentError("exponent of " + name + " is not an integer");
      const auto x = e.get<long>();
      if (x == 0 || x > 32767 || x < -32768) throw DocumentError("bad exponent for " + name);
      if (x < 0 && !chart->var(static_cast<std::size_t>(v)).laurent) {
        throw DocumentError("negative exponent on non-Laurent variable " + name);
      }
      m[static_cast<std::size_t>(v)] = static_cast<Exponent>(x);
    }
    const Rational c = rat_in(t.at("coefficient"));
    if (c == 0) throw DocumentError("zero coefficient stored");
    if (p.coefficient(m) != 0) throw DocumentError("repeated monomial");
    p.add_term(m, c);
  }
  if (!(poly_out(p) == j)) throw DocumentError("terms are not in canonical order");
  return p;
}

json matrix_out(const PolyMatrix& m, const std::string& key) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(poly_out(m(i, k)));
    rows.push_back(row);
  }
  return {{"chart", key}, {"entries", rows}};
}

PolyMatrix matrix_in(const json& j, const StructureDocument& doc) {
  const ChartPtr& c = doc.chart(j.at("chart").get<std::string>());
  const json& rows = j.at("entries");
  const std::size_t n = rows.size();
  PolyMatrix m(c, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw DocumentError("matrix is not square");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = poly_in(rows[i][k], c);
  }
  return m;
}

std::string latex_var(const std::string& name) {
  std::size_t cut = name.size();
  while (cut > 0 && std::isdigit(static_cast<unsigned char>(name[cut - 1]))) --cut;
  if (cut == name.size() || cut == 0) return name;
  return name.substr(0, cut) + "_{" + name.substr(cut) + "}";
}

std::string latex_rational(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return "\\frac{" + r.get_num().get_str() + "}{" + r.get_den().get_str() + "}";
}

// Checks shared by both families, on the C_l pencil.
void pencil_checks(const FlatPencil& p, CheckReport& r) {
  const std::size_t n = p.g.rows();
  for (const auto* pair : {&p.g, &p.eta}) {
    const ChristoffelContra& gm = pair == &p.g ? p.gamma_g : p.gamma_eta;
    const PolyMatrix& g = *pair;
    const std::string which = pair == &p.g ? "g" : "eta";
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          if (!(diff_coord(g(a, b), c) == gm(a, b, c) + gm(b, a, c))) {
            r.fail(which + ": metric compatibility fails at (" + std::to_string(a + 1) + "," + std::to_string(b + 1) +
                   "," + std::to_string(c + 1) + ")");
          }
        }
  }
  if (!linearity_check(p.g, p.gamma_g, static_cast<std::size_t>(p.spec.vertex - 1))) {
    r.fail("g or Gamma is not linear in y^k");
  }
  std::vector<Rational> w = build_root_data(p.spec).degrees.d;
  w.emplace_back(0);
  if (!degrees_match(p.g, w) || !degrees_match(p.gamma_g, w)) r.fail("degrees of g or Gamma are off");
}

}  // namespace

const ChartPtr& StructureDocument::chart(const std::string& key) const {
  for (const auto& [k, c] : charts) {
    if (k == key) return c;
  }
  throw DocumentError("unknown chart key '" + key + "'");
}

const std::string& StructureDocument::key_of(const ChartPtr& chart) const {
  for (const auto& [k, c] : charts) {
    if (c == chart) return k;
  }
  throw DocumentError("chart " + chart->name() + " is not part of the document");
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"pencil", "eta-form", "det",     "wdvv",
                                                 "euler",  "intersection", "duality", "oracle"};
  return names;
}

std::vector<CheckReport> run_checks(const RootSystemSpec& spec, const std::vector<std::string>& names,
                                    int oracle_max_rank) {
  spec.validate();
  for (const auto& n : names) {
    if (std::find(check_names().begin(), check_names().end(), n) == check_names().end()) {
      throw InvalidSpec("unknown check '" + n + "'");
    }
  }
  const RootSystemSpec c{Family::C, spec.rank, spec.vertex};
  std::optional<FlatPencil> pencil;
  std::optional<FrobeniusStructure> structure;
  auto need_pencil = [&]() -> const FlatPencil& {
    if (!pencil) pencil = build_flat_pencil(c);
    return *pencil;
  };
  auto need_structure = [&]() -> const FrobeniusStructure& {
    if (!structure) structure = build_frobenius(c);
    return *structure;
  };

  std::vector<CheckReport> out;
  for (const auto& name : names) {
    CheckReport r{name, true, {}};
    if (name == "pencil") {
      pencil_checks(need_pencil(), r);
    } else if (name == "eta-form") {
      try {
        check_eta_closed_form(need_pencil());
      } catch (const ClosedFormMismatch& e) {
        r.fail(e.what());
      }
    } else if (name == "det") {
      try {
        const DetEtaReport d = det_eta_check(need_pencil());
        r.details.push_back("det eta = " + to_string(d.det));
        if (!d.matches_stated) r.fail("closed form (-1)^l ... gives " + to_string(d.stated));
        if (!d.matches_permutation) r.fail("permutation-sign form gives " + to_string(d.permutation));
      } catch (const DetMismatch& e) {
        r.fail(e.what());
      }
    } else if (name == "wdvv") {
      r = verify_wdvv(need_structure());
    } else if (name == "euler") {
      r = verify_euler_unity(need_structure());
    } else if (name == "intersection") {
      r = verify_intersection(need_structure());
    } else if (name == "duality") {
      const FrobeniusStructure& s = need_structure();
      std::vector<Rational> dt = s.euler.weights;
      dt.emplace_back(0);
      const int l = spec.rank;
      for (int i = 1; i <= l + 1; ++i) {
        const int d = dual_index(spec, i);
        if (dt[static_cast<std::size_t>(i - 1)] + dt[static_cast<std::size_t>(d - 1)] != 1) {
          r.fail("d~_" + std::to_string(i) + " + d~_" + std::to_string(d) + " != 1");
        }
        for (int j = 1; j <= l + 1; ++j) {
          if (!s.eta(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)).is_zero() && j != d) {
            r.fail("eta^{" + std::to_string(i) + "," + std::to_string(j) + "} pairs a non-dual index");
          }
        }
      }
    } else if (name == "oracle") {
      if (spec.rank > oracle_max_rank) {
        r.fail("rank " + std::to_string(spec.rank) + " exceeds --oracle-max-rank " + std::to_string(oracle_max_rank));
      } else if (spec.family == Family::C) {
        const PolyMatrix direct = compute_g_direct(spec, oracle_max_rank);
        if (!(direct == need_pencil().g)) r.fail("generating-function g differs from the x-space oracle");
      } else {
        try {
          check_b_pullback(spec, oracle_max_rank);
        } catch (const OracleMismatch& e) {
          r.fail(e.what());
        }
      }
    }
    r.name = name;
    out.push_back(std::move(r));
  }
  return out;
}

StructureDocument make_document(const RootSystemSpec& spec, std::vector<CheckReport> checks, int oracle_max_rank) {
  spec.validate();
  StructureDocument doc;
  doc.spec = spec;
  FrobeniusStructure s;
  std::optional<CoordMap> pull;
  if (spec.family == Family::B) {
    BIdentification b = b_to_c(spec, oracle_max_rank);
    s = std::move(b.structure);
    pull = std::move(b.c_to_b);
  } else {
    s = build_frobenius(spec);
  }
  const FlatCoordinates& fc = s.flat;
  doc.charts = {{"y", fc.z.y_to_z.source}, {"z", fc.z.y_to_z.target}, {"w", fc.w.chart}, {"t", fc.t.chart}};
  if (pull) doc.charts.emplace_back("yB", pull->target);
  doc.maps = {{"y_to_z", "y", "z", fc.z.y_to_z}, {"z_to_w", "z", "w", fc.w.z_to_w}, {"w_to_t", "w", "t", fc.t.w_to_t}};
  if (pull) doc.maps.push_back({"y_to_yB", "y", "yB", *pull});
  doc.eta = s.eta;
  doc.g = s.g;
  doc.potential = s.potential;
  doc.euler = s.euler;
  doc.charge = s.charge;
  doc.checks = std::move(checks);
  return doc;
}

std::string export_json(const StructureDocument& doc) {
  json j;
  j["spec"] = {{"family", to_string(doc.spec.family)}, {"rank", doc.spec.rank}, {"vertex", doc.spec.vertex}};
  json charts = json::object();
  for (const auto& [key, c] : doc.charts) charts[key] = chart_out(*c);
  j["charts"] = charts;
  json maps = json::array();
  for (const auto& m : doc.maps) {
    json sit = json::array();
    for (const auto& p : m.map.source_in_target) sit.push_back(poly_out(p));
    json tis = nullptr;
    if (m.map.target_in_source) {
      tis = json::array();
      for (const auto& p : *m.map.target_in_source) tis.push_back(poly_out(p));
    }
    maps.push_back(
        {{"name", m.name}, {"source", m.source}, {"target", m.target}, {"source_in_target", sit}, {"target_in_source", tis}});
  }
  j["maps"] = maps;
  j["eta"] = matrix_out(doc.eta, doc.key_of(doc.eta.chart()));
  j["g"] = matrix_out(doc.g, doc.key_of(doc.g.chart()));
  j["potential"] = {{"chart", doc.key_of(doc.potential.chart())}, {"terms", poly_out(doc.potential)}};
  json weights = json::array();
  for (const auto& w : doc.euler.weights) weights.push_back(rat_out(w));
  j["euler"] = {{"weights", weights}, {"last", rat_out(doc.euler.last)}};
  j["charge"] = doc.charge;
  json checks = json::array();
  for (const auto& c : doc.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"details", c.details}});
  j["verification"] = checks;
  return j.dump(2) + "\n";
}

StructureDocument import_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DocumentError(std::string("not valid JSON: ") + e.what());
  }
  try {
    StructureDocument doc;
    const json& sp = j.at("spec");
    doc.spec = {parse_family(sp.at("family").get<std::string>()), sp.at("rank").get<int>(), sp.at("vertex").get<int>()};
    doc.spec.validate();
    for (const auto& [key, c] : j.at("charts").items()) doc.charts.emplace_back(key, chart_in(c));
    for (const auto& m : j.at("maps")) {
      NamedMap nm{m.at("name").get<std::string>(), m.at("source").get<std::string>(), m.at("target").get<std::string>(), {}};
      const ChartPtr& src = doc.chart(nm.source);
      const ChartPtr& tgt = doc.chart(nm.target);
      std::vector<Poly> sit;
      for (const auto& p : m.at("source_in_target")) sit.push_back(poly_in(p, tgt));
      std::optional<std::vector<Poly>> tis;
      if (!m.at("target_in_source").is_null()) {
        tis.emplace();
        for (const auto& p : m.at("target_in_source")) tis->push_back(poly_in(p, src));
      }
      nm.map = CoordMap{src, tgt, std::move(sit), std::move(tis)};
      nm.map.verify();
      doc.maps.push_back(std::move(nm));
    }
    doc.eta = matrix_in(j.at("eta"), doc);
    doc.g = matrix_in(j.at("g"), doc);
    const json& pot = j.at("potential");
    doc.potential = poly_in(pot.at("terms"), doc.chart(pot.at("chart").get<std::string>()));
    for (const auto& w : j.at("euler").at("weights")) doc.euler.weights.push_back(rat_in(w));
    doc.euler.last = rat_in(j.at("euler").at("last"));
    doc.charge = j.at("charge").get<int>();
    for (const auto& c : j.at("verification")) {
      doc.checks.push_back({c.at("name").get<std::string>(), c.at("pass").get<bool>(),
                            c.at("details").get<std::vector<std::string>>()});
    }
    return doc;
  } catch (const json::exception& e) {
    throw DocumentError(std::string("malformed document: ") + e.what());
  } catch (const DocumentError&) {
    throw;
  } catch (const Error& e) {
    throw DocumentError(std::string("inconsistent document: ") + e.what());
  }
}

std::string poly_to_latex(const Poly& p) {
  if (p.is_zero()) return "0";
  const Chart& c = *p.chart();
  std::string exp_of;  // the coordinate carried by an exponential variable
  int exp_var = -1;
  for (const auto& co : c.coords()) {
    if (co.is_exponential()) {
      exp_var = co.exp_var;
      exp_of = latex_var(co.name);
    }
  }
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, coeff] : p.terms()) {
    Rational a = abs(coeff);
    out << (coeff < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    first = false;
    std::string vars;
    for (std::size_t v = 0; v < c.num_vars(); ++v) {
      if (m[v] == 0) continue;
      if (static_cast<int>(v) == exp_var) {
        vars += " e^{" + (m[v] == 1 ? std::string() : std::to_string(m[v])) + exp_of + "}";
      } else {
        vars += " " + latex_var(c.var(v).name) + (m[v] == 1 ? "" : "^{" + std::to_string(m[v]) + "}");
      }
    }
    if (vars.empty() || a != 1) {
      out << latex_rational(a) << vars;
    } else {
      out << vars.substr(1);
    }
  }
  return out.str();
}

std::string export_latex(const StructureDocument& doc) {
  std::ostringstream out;
  const ChartPtr& t = doc.potential.chart();
  out << "% " << doc.spec.label() << "\n";
  out << "\\begin{align*}\n";
  out << "F &= " << poly_to_latex(doc.potential) << "\\\\\n";
  out << "E &= ";
  for (std::size_t a = 0; a < doc.euler.weights.size(); ++a) {
    const std::string v = latex_var(t->coord(a).name);
    const Rational& c = doc.euler.weights[a];
    out << (a ? " + " : "") << (c == 1 ? "" : latex_rational(c)) << v << "\\partial_{" << v << "}";
  }
  const std::string last = latex_var(t->coord(t->num_coords() - 1).name);
  out << " + " << (doc.euler.last == 1 ? "" : latex_rational(doc.euler.last)) << "\\partial_{" << last << "}\n";
  out << "\\end{align*}\n";
  out << "\\[\\eta = \\begin{pmatrix}\n";
  for (std::size_t i = 0; i < doc.eta.rows(); ++i) {
    for (std::size_t j = 0; j < doc.eta.cols(); ++j) out << (j ? " & " : "") << poly_to_latex(doc.eta(i, j));
    out << (i + 1 < doc.eta.rows() ? " \\\\\n" : "\n");
  }
  out << "\\end{pmatrix}\\]\n";
  return out.str();
}

}  // namespace orbitfm
