#include "spherebound/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "json.hpp"

namespace spherebound {

std::string_view to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::CertificateField: return "certificate field";
    case Provenance::ComputedExact: return "computed-exact";
    case Provenance::ComputedNumeric: return "computed-numeric";
    case Provenance::Reference: return "reference";
    case Provenance::Input: return "input";
  }
  return "input";
}

void RunReport::add_input(std::string_view bytes) {
  for (unsigned char c : bytes) {
    digest_ ^= c;
    digest_ *= 0x100000001b3ull;
  }
  // Separator so that ("ab", "c") and ("a", "bc") differ.
  digest_ ^= 0xff;
  digest_ *= 0x100000001b3ull;
}

void RunReport::add_step(std::string name, bool passed, Rigor rigor, std::string detail) {
  steps_.push_back({std::move(name), passed, rigor, std::move(detail)});
}

void RunReport::add_result(std::string name, std::string value, Provenance provenance) {
  results_.push_back({std::move(name), std::move(value), provenance});
}

std::string RunReport::inputs_digest() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(digest_));
  return buf;
}

Rigor RunReport::rigor() const {
  Rigor r = extra_rigor_;
  for (const auto& s : steps_) r = min_rigor(r, s.rigor);
  return r;
}

bool RunReport::passed() const {
  for (const auto& s : steps_) {
    if (!s.passed) return false;
  }
  return true;
}

std::string RunReport::text() const {
  std::ostringstream out;
  out << "command: " << command_ << '\n';
  out << "inputs:  " << inputs_digest() << '\n';
  out << "rigor:   " << to_string(rigor()) << '\n';
  if (!steps_.empty()) {
    out << "steps:\n";
    for (const auto& s : steps_) {
      out << "  [" << (s.passed ? "pass" : "FAIL") << "] " << s.name << " (" << to_string(s.rigor) << ")";
      if (!s.detail.empty()) out << ": " << s.detail;
      out << '\n';
    }
  }
  if (!results_.empty()) {
    out << "results:\n";
    for (const auto& r : results_) {
      out << "  " << r.name << " = " << r.value << "  [" << to_string(r.provenance) << "]\n";
    }
  }
  return out.str();
}

std::string RunReport::json(bool with_timestamp) const {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command_;
  doc["inputs_digest"] = inputs_digest();
  if (with_timestamp) {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    doc["generated_at"] = buf;
  }
  doc["rigor"] = std::string(to_string(rigor()));
  doc["passed"] = passed();
  auto steps = nlohmann::ordered_json::array();
  for (const auto& s : steps_) {
    steps.push_back({{"name", s.name},
                     {"verdict", s.passed ? "pass" : "fail"},
                     {"rigor", std::string(to_string(s.rigor))},
                     {"detail", s.detail}});
  }
  doc["steps"] = steps;
  auto results = nlohmann::ordered_json::array();
  for (const auto& r : results_) {
    results.push_back({{"name", r.name}, {"value", r.value}, {"provenance", std::string(to_string(r.provenance))}});
  }
  doc["results"] = results;
  return doc.dump(2) + "\n";
}

}  // namespace spherebound
