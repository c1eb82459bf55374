#include <regex>

#include "doctest.h"
#include "json.hpp"
#include "spherebound/report.hpp"

using namespace spherebound;
using nlohmann::json;

namespace {

RunReport sample() {
  RunReport r("cert bound lp.cert");
  r.add_input("file bytes");
  r.add_step("certificate verified", true, Rigor::Rigorous, "all exact");
  r.add_step("hat h", true, Rigor::Numeric);
  r.add_result("max N", "240", Provenance::ComputedExact);
  r.add_result("f0", "9/40", Provenance::CertificateField);
  return r;
}

}  // namespace

TEST_CASE("provenance names") {
  CHECK(to_string(Provenance::CertificateField) == "certificate field");
  CHECK(to_string(Provenance::ComputedExact) == "computed-exact");
  CHECK(to_string(Provenance::ComputedNumeric) == "computed-numeric");
  CHECK(to_string(Provenance::Reference) == "reference");
  CHECK(to_string(Provenance::Input) == "input");
}

TEST_CASE("inputs digest") {
  RunReport empty;
  CHECK(std::regex_match(empty.inputs_digest(), std::regex("fnv1a64:[0-9a-f]{16}")));
  RunReport a, b, c;
  a.add_input("ab");
  a.add_input("c");
  b.add_input("a");
  b.add_input("bc");
  c.add_input("ab");
  c.add_input("c");
  CHECK(a.inputs_digest() != b.inputs_digest());
  CHECK(a.inputs_digest() == c.inputs_digest());
  CHECK(a.inputs_digest() != empty.inputs_digest());
}

TEST_CASE("rigor and verdict roll up") {
  auto r = sample();
  CHECK(r.rigor() == Rigor::Numeric);
  CHECK(r.passed());
  r.note_rigor(Rigor::Heuristic);
  CHECK(r.rigor() == Rigor::Heuristic);
  r.add_step("broken", false, Rigor::Rigorous);
  CHECK_FALSE(r.passed());
  CHECK(RunReport().rigor() == Rigor::Rigorous);
}

TEST_CASE("text form") {
  auto text = sample().text();
  CHECK(text.find("command: cert bound lp.cert\n") == 0);
  CHECK(text.find("rigor:   numeric\n") != std::string::npos);
  CHECK(text.find("  [pass] certificate verified (rigorous): all exact\n") != std::string::npos);
  CHECK(text.find("  max N = 240  [computed-exact]\n") != std::string::npos);
  CHECK(text.find("  f0 = 9/40  [certificate field]\n") != std::string::npos);
}

TEST_CASE("json form") {
  auto doc = json::parse(sample().json());
  CHECK(doc["schema_version"] == RunReport::kSchemaVersion);
  CHECK(doc["command"] == "cert bound lp.cert");
  CHECK(doc["rigor"] == "numeric");
  CHECK(doc["passed"] == true);
  CHECK(std::regex_match(doc["generated_at"].get<std::string>(),
                         std::regex("[0-9]{4}-[0-9]{2}-[0-9]{2}T[0-9]{2}:[0-9]{2}:[0-9]{2}Z")));
  REQUIRE(doc["steps"].size() == 2);
  CHECK(doc["steps"][1]["rigor"] == "numeric");
  CHECK(doc["steps"][0]["verdict"] == "pass");
  REQUIRE(doc["results"].size() == 2);
  CHECK(doc["results"][0]["value"] == "240");
  CHECK(doc["results"][1]["provenance"] == "certificate field");
}

TEST_CASE("reports are deterministic without the timestamp") {
  auto a = sample().json(false);
  auto b = sample().json(false);
  CHECK(a == b);
  CHECK_FALSE(json::parse(a).contains("generated_at"));
  CHECK(sample().text() == sample().text());
}
