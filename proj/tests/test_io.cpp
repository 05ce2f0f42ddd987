#include <catch2/catch_amalgamated.hpp>

#include "ncdiff/io.hpp"
#include "ncdiff/report.hpp"
#include "test_helpers.hpp"

using namespace ncdiff;
using K = Rational;
using nlohmann::json;

namespace {

json module_json(const std::string& name, const Bimodule<K>& m) {
  json jm;
  jm["name"] = name;
  jm["dim"] = m.dim;
  auto matrices = [&](const std::vector<Matrix<K>>& mats) {
    json out = json::array();
    for (const auto& mat : mats) {
      json rows = json::array();
      for (int r = 0; r < mat.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < mat.cols(); ++c) row.push_back(to_string(mat(r, c)));
        rows.push_back(row);
      }
      out.push_back(rows);
    }
    return out;
  };
  jm["left"] = matrices(m.left);
  jm["right"] = matrices(m.right);
  return jm;
}

}  // namespace

TEST_CASE("zoo export round-trips bit-exactly") {
  for (const auto& name : zoo_names()) {
    const Algebra<K> a = zoo<K>(name);
    const json doc = export_algebra(a, "Q");
    const auto spec = parse_spec<K>(doc);
    const json again = export_algebra(spec->algebra, "Q");
    CHECK(doc.dump(2) == again.dump(2));
  }
}

TEST_CASE("invalid rational entries are reported with their path") {
  json doc = export_algebra(zoo<K>("dual"), "Q");
  doc["algebra"]["mul"][0][1][1] = "1/0";
  try {
    parse_spec<K>(doc);
    FAIL("expected SpecError");
  } catch (const SpecError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("algebra.mul[0][1]") != std::string::npos);
    CHECK(msg.find("1/0") != std::string::npos);
  }
}

TEST_CASE("broken associativity is reported with the triple") {
  json doc = export_algebra(zoo<K>("m2"), "Q");
  doc["algebra"]["mul"][1][2][1] = "1";  // E12 E21 := E11 + E12
  try {
    parse_spec<K>(doc);
    FAIL("expected SpecError");
  } catch (const SpecError& e) {
    CHECK(std::string(e.what()).find("associativity") != std::string::npos);
  }
}

TEST_CASE("unknown members are rejected") {
  json doc = export_algebra(zoo<K>("dual"), "Q");
  doc["extra"] = 1;
  CHECK_THROWS_AS(parse_spec<K>(doc), SpecError);
  json doc2 = export_algebra(zoo<K>("dual"), "Q");
  doc2["algebra"]["surprise"] = "yes";
  CHECK_THROWS_AS(parse_spec<K>(doc2), SpecError);
}

TEST_CASE("operators referencing the regular module") {
  json doc = export_algebra(zoo<K>("dual"), "Q");
  doc["operators"] = json::array();
  doc["operators"].push_back({{"name", "E"},
                              {"source", "regular"},
                              {"target", "regular"},
                              {"matrix", json::array({json::array({"0", "1"}),
                                                      json::array({"0", "0"})})}});
  const auto spec = parse_spec<K>(doc);
  const auto* op = spec->find_operator("E");
  REQUIRE(op != nullptr);
  CHECK(op->matrix(0, 1) == K(1));
  const HomSpace<K> hs(spec->regular_module, spec->regular_module);
  CHECK(order_commutative(hs, op->matrix, 4) == 2);
}

TEST_CASE("operator shape and module references are validated") {
  json doc = export_algebra(zoo<K>("dual"), "Q");
  doc["operators"] = json::array();
  doc["operators"].push_back({{"name", "bad"},
                              {"source", "regular"},
                              {"target", "nowhere"},
                              {"matrix", json::array()}});
  CHECK_THROWS_AS(parse_spec<K>(doc), SpecError);
  json doc2 = export_algebra(zoo<K>("dual"), "Q");
  doc2["operators"] = json::array();
  doc2["operators"].push_back({{"name", "bad"},
                               {"source", "regular"},
                               {"target", "regular"},
                               {"matrix", json::array({json::array({"0"})})}});
  CHECK_THROWS_AS(parse_spec<K>(doc2), SpecError);
}

TEST_CASE("declared modules parse and validate") {
  const Algebra<K> ut2 = zoo<K>("ut2");
  const Bimodule<K> sum = direct_sum(regular(ut2), regular(ut2));
  json doc = export_algebra(ut2, "Q");
  doc["modules"] = json::array({module_json("double", sum)});
  const auto spec = parse_spec<K>(doc);
  const Bimodule<K>* m = spec->find_module("double");
  REQUIRE(m != nullptr);
  CHECK(m->dim == 6);
  CHECK(m->validate().ok);
}

TEST_CASE("invalid modules are rejected with the axiom named") {
  const Algebra<K> m2 = zoo<K>("m2");
  Bimodule<K> broken = regular(m2);
  broken.right = broken.left;
  json doc = export_algebra(m2, "Q");
  doc["modules"] = json::array({module_json("broken", broken)});
  try {
    parse_spec<K>(doc);
    FAIL("expected SpecError");
  } catch (const SpecError& e) {
    CHECK(std::string(e.what()).find("anti-homomorphism") != std::string::npos);
  }
}

TEST_CASE("reserved and duplicate module names") {
  const Algebra<K> dual = zoo<K>("dual");
  json doc = export_algebra(dual, "Q");
  doc["modules"] = json::array({module_json("regular", regular(dual))});
  CHECK_THROWS_AS(parse_spec<K>(doc), SpecError);
}

TEST_CASE("prime-field specs") {
  json doc = export_algebra(zoo<K>("dual"), "Q");
  doc["algebra"]["field"] = "Fp:7";
  CHECK(spec_field_name(doc) == "Fp:7");
  CHECK(spec_field_prime("Fp:7") == 7);
  FpContext ctx(7);
  const auto spec = parse_spec<Fp>(doc);
  CHECK(spec->algebra.center().dim() == 2);
  json bad = doc;
  bad["algebra"]["field"] = "Fp:x";
  CHECK_THROWS_AS(spec_field_name(bad), SpecError);
  json worse = doc;
  worse["algebra"]["field"] = "R";
  CHECK_THROWS_AS(spec_field_name(worse), SpecError);
}

TEST_CASE("report exit codes and JSON shape") {
  Report r;
  r.command = "test";
  r.add(Check::passed("b.second"));
  r.add(Check::recorded("c.third", {{"found", false}}));
  r.add(Check::passed("a.first"));
  r.sort_checks();
  CHECK(r.checks.front().id == "a.first");
  CHECK(r.exit_status() == 0);
  r.add(Check::failed("d.fail"));
  CHECK(r.exit_status() == 1);
  const json j = r.to_json();
  CHECK(j["command"] == "test");
  CHECK(j["exit_status"] == 1);
  CHECK(j["checks"].size() == 4);
}
