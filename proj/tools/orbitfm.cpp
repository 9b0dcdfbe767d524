#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "orbitfm/document.hpp"
#include "orbitfm/errors.hpp"

using namespace orbitfm;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInvalid = 2;

struct Options {
  std::string family = "C";
  int rank = 0;
  int vertex = 0;
  std::string out;
  std::string format = "json";
  std::vector<std::string> checks;
  int oracle_max_rank = 3;
  std::string fixture;
  std::string in;
};

RootSystemSpec spec_of(const Options& o) {
  RootSystemSpec s{parse_family(o.family), o.rank, o.vertex};
  s.validate();
  return s;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InvalidSpec("cannot write " + o.out);
  f << text;
}

std::string render(const Options& o, const StructureDocument& doc) {
  return o.format == "latex" ? export_latex(doc) : export_json(doc);
}

bool all_pass(const std::vector<CheckReport>& r) {
  for (const auto& c : r) {
    if (!c.pass) return false;
  }
  return true;
}

int cmd_construct(const Options& o) {
  const RootSystemSpec s = spec_of(o);
  std::vector<CheckReport> checks;
  if (!o.checks.empty()) checks = run_checks(s, o.checks, o.oracle_max_rank);
  emit(o, render(o, make_document(s, checks, o.oracle_max_rank)));
  return all_pass(checks) ? kOk : kFailed;
}

int cmd_verify(const Options& o) {
  const RootSystemSpec s = spec_of(o);
  const std::vector<std::string> names = o.checks.empty() ? check_names() : o.checks;
  const auto reports = run_checks(s, names, o.oracle_max_rank);
  nlohmann::json j;
  j["spec"] = s.label();
  j["checks"] = nlohmann::json::array();
  for (const auto& r : reports) j["checks"].push_back({{"name", r.name}, {"pass", r.pass}, {"details", r.details}});
  j["pass"] = all_pass(reports);
  emit(o, j.dump(2) + "\n");
  return all_pass(reports) ? kOk : kFailed;
}

int cmd_compare(const Options& o) {
  const Fixture& f = fixture(o.fixture);
  const FixtureComparison cmp = compare_fixture(build_frobenius(f.spec), f);
  std::ostringstream out;
  out << f.id << ": " << (cmp.match ? "match" : "MISMATCH");
  if (cmp.sign_flipped) out << " (after s -> -s)";
  out << "\n";
  for (const auto& d : cmp.differences) out << "  " << d << "\n";
  emit(o, out.str());
  return cmp.match ? kOk : kFailed;
}

int cmd_import(const Options& o) {
  std::ifstream f(o.in, std::ios::binary);
  if (!f) throw DocumentError("cannot read " + o.in);
  std::stringstream buf;
  buf << f.rdbuf();
  emit(o, render(o, import_json(buf.str())));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frobenius structures on orbit spaces of extended affine Weyl groups"};
  app.require_subcommand(1);
  Options o;

  auto spec_flags = [&](CLI::App* sub) {
    sub->add_option("--family", o.family, "B or C")->check(CLI::IsMember({"B", "C"}));
    sub->add_option("--rank", o.rank, "rank l")->required();
    sub->add_option("--vertex", o.vertex, "marked vertex k")->required();
    sub->add_option("--oracle-max-rank", o.oracle_max_rank, "largest rank for the x-space oracle")
        ->capture_default_str();
    sub->add_option("--out", o.out, "output file (default stdout)");
  };

  auto* construct = app.add_subcommand("construct", "build a structure and export it");
  spec_flags(construct);
  construct->add_option("--format", o.format)->check(CLI::IsMember({"json", "latex"}))->capture_default_str();
  construct->add_option("--checks", o.checks, "suites to run and record")->delimiter(',');

  auto* verify = app.add_subcommand("verify", "run verification suites");
  spec_flags(verify);
  verify->add_option("--checks", o.checks, "comma-separated subset of suites (default all)")->delimiter(',');

  auto* compare = app.add_subcommand("compare", "compare against a worked example");
  compare->add_option("--fixture", o.fixture, "c3k1, c4k1 or c4k2")->required();
  compare->add_option("--out", o.out, "output file (default stdout)");

  auto* import = app.add_subcommand("import", "validate a JSON document and re-export it");
  import->add_option("--in", o.in, "JSON document")->required();
  import->add_option("--out", o.out, "output file (default stdout)");
  import->add_option("--format", o.format)->check(CLI::IsMember({"json", "latex"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    if (*construct) return cmd_construct(o);
    if (*verify) return cmd_verify(o);
    if (*compare) return cmd_compare(o);
    return cmd_import(o);
  } catch (const InvalidSpec& e) {
    std::cerr << e.what() << "\n";
    return kInvalid;
  } catch (const DocumentError& e) {
    std::cerr << e.what() << "\n";
    return kInvalid;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kFailed;
  }
}
