#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitfm/frobenius.hpp"

namespace orbitfm {

struct NamedMap {
  std::string name;
  std::string source;  // chart keys
  std::string target;
  CoordMap map;
};

/// Everything `construct` emits. Charts are referenced by key ("y", "z", "w",
/// "t", plus "yB" for a B_l request).
struct StructureDocument {
  RootSystemSpec spec;
  std::vector<std::pair<std::string, ChartPtr>> charts;
  std::vector<NamedMap> maps;
  PolyMatrix eta;
  PolyMatrix g;
  Poly potential;
  EulerField euler;
  int charge = 1;
  std::vector<CheckReport> checks;

  const ChartPtr& chart(const std::string& key) const;
  const std::string& key_of(const ChartPtr& chart) const;
};

/// The verification suites by name: pencil, eta-form, det, wdvv, euler,
/// intersection, duality, oracle.
const std::vector<std::string>& check_names();

/// Runs the named suites. Structures for B_l are the C_l ones reached through
/// the pullback. Throws InvalidSpec on an unknown check name.
std::vector<CheckReport> run_checks(const RootSystemSpec& spec, const std::vector<std::string>& names,
                                    int oracle_max_rank = 3);

StructureDocument make_document(const RootSystemSpec& spec, std::vector<CheckReport> checks = {},
                                int oracle_max_rank = 3);

/// Rationals as "p/q" strings (integers without the denominator), monomials
/// as {variable: exponent}, terms in the canonical order, keys sorted.
std::string export_json(const StructureDocument& doc);

/// Throws DocumentError on any malformed or inconsistent input.
StructureDocument import_json(const std::string& text);

/// Potential (graded-lex order), Euler field and eta.
std::string export_latex(const StructureDocument& doc);

std::string poly_to_latex(const Poly& p);

}  // namespace orbitfm
