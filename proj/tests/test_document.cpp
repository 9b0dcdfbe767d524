#include <json.hpp>

#include "orbitfm/document.hpp"
#include "orbitfm/errors.hpp"
#include "test_support.hpp"

using namespace orbitfm;

namespace {

std::string mutate(const std::string& text, const std::function<void(nlohmann::json&)>& f) {
  nlohmann::json j = nlohmann::json::parse(text);
  f(j);
  return j.dump(2) + "\n";
}

}  // namespace

TEST_CASE("JSON export is a fixed point of import") {
  for (const RootSystemSpec& s : {RootSystemSpec{Family::C, 1, 1}, RootSystemSpec{Family::C, 3, 1},
                                  RootSystemSpec{Family::B, 2, 2}}) {
    CAPTURE(s.label());
    const std::string once = export_json(make_document(s, run_checks(s, {"duality"})));
    const StructureDocument back = import_json(once);
    CHECK(export_json(back) == once);
    CHECK(back.spec == s);
    CHECK(back.potential == make_document(s).potential);
  }
}

TEST_CASE("the c3k1 document carries the printed 1/48 term") {
  const auto j = nlohmann::json::parse(export_json(make_document({Family::C, 3, 1})));
  bool found = false;
  for (const auto& t : j["potential"]["terms"]) {
    if (t["monomial"] == nlohmann::json{{"t2", 3}, {"t3", -1}}) found = t["coefficient"] == "1/48";
  }
  CHECK(found);
}

TEST_CASE("B documents have the same potential as C") {
  const auto b = nlohmann::json::parse(export_json(make_document({Family::B, 3, 2})));
  const auto c = nlohmann::json::parse(export_json(make_document({Family::C, 3, 2})));
  CHECK(b["potential"] == c["potential"]);
  CHECK(b["charts"].contains("yB"));
}

TEST_CASE("import rejects damaged documents") {
  const std::string good = export_json(make_document({Family::C, 2, 1}));
  CHECK_THROWS_AS(import_json("{"), DocumentError);
  CHECK_THROWS_AS(import_json(mutate(good, [](auto& j) { j.erase("eta"); })), DocumentError);
  CHECK_THROWS_AS(import_json(mutate(good, [](auto& j) { j["potential"]["terms"][0]["coefficient"] = "2/4"; })),
                  DocumentError);
  CHECK_THROWS_AS(import_json(mutate(good, [](auto& j) { j["potential"]["terms"][0]["coefficient"] = "x"; })),
                  DocumentError);
  CHECK_THROWS_AS(import_json(mutate(good, [](auto& j) { j["potential"]["terms"][0]["monomial"]["q9"] = 1; })),
                  DocumentError);
  CHECK_THROWS_AS(import_json(mutate(good, [](auto& j) { j["spec"]["vertex"] = 7; })), DocumentError);
  CHECK_THROWS_AS(import_json(mutate(good, [](auto& j) {
                    auto& t = j["potential"]["terms"];
                    std::swap(t[0], t[1]);
                  })),
                  DocumentError);
  // a map whose two directions no longer compose to the identity
  CHECK_THROWS_AS(import_json(mutate(good, [](auto& j) { j["maps"][0]["source_in_target"][0][0]["coefficient"] = "3"; })),
                  DocumentError);
}

TEST_CASE("check runner") {
  const auto r = run_checks({Family::C, 3, 2}, check_names());
  REQUIRE(r.size() == check_names().size());
  for (const auto& c : r) {
    CAPTURE(c.name);
    // C3,k=2 happens to have the stated det sign
    CHECK(c.pass);
  }
  const auto det = run_checks({Family::C, 3, 1}, {"det"});
  CHECK_FALSE(det.front().pass);
  CHECK_FALSE(run_checks({Family::C, 4, 1}, {"oracle"}, 3).front().pass);
  CHECK_THROWS_AS(run_checks({Family::C, 2, 1}, {"curvature"}), InvalidSpec);
}

TEST_CASE("LaTeX rendering") {
  const StructureDocument d = make_document({Family::C, 1, 1});
  CHECK(poly_to_latex(d.potential) == "\\frac{1}{2} t_{1}^{2} t_{2} + \\frac{1}{2} e^{2t_{2}}");
  const std::string tex = export_latex(d);
  CHECK(tex.find("\\partial_{t_{2}}") != std::string::npos);
}
