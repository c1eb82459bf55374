#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "spherebound/common.hpp"

namespace spherebound {

/// Where a reported number comes from.
enum class Provenance { CertificateField, ComputedExact, ComputedNumeric, Reference, Input };

std::string_view to_string(Provenance provenance);

struct ReportStep {
  std::string name;
  bool passed = true;
  Rigor rigor = Rigor::Rigorous;
  std::string detail;
};

struct ReportResult {
  std::string name;
  std::string value;
  Provenance provenance = Provenance::ComputedExact;
};

/// Output of one CLI run. The structured form carries schema_version and an
/// optional generated_at timestamp; everything else is deterministic.
class RunReport {
 public:
  static constexpr int kSchemaVersion = 1;

  explicit RunReport(std::string command = {}) : command_(std::move(command)) {}

  /// Folds input bytes (file contents, arguments) into the inputs digest.
  void add_input(std::string_view bytes);
  void add_step(std::string name, bool passed, Rigor rigor, std::string detail = {});
  void add_result(std::string name, std::string value, Provenance provenance);
  /// Lowers the overall rigor without adding a step.
  void note_rigor(Rigor rigor) { extra_rigor_ = min_rigor(extra_rigor_, rigor); }

  const std::string& command() const { return command_; }
  const std::vector<ReportStep>& steps() const { return steps_; }
  const std::vector<ReportResult>& results() const { return results_; }
  /// "fnv1a64:" followed by 16 hex digits.
  std::string inputs_digest() const;
  /// Minimum over all step rigors.
  Rigor rigor() const;
  bool passed() const;

  std::string text() const;
  std::string json(bool with_timestamp = true) const;

 private:
  std::string command_;
  std::uint64_t digest_ = 0xcbf29ce484222325ull;
  std::vector<ReportStep> steps_;
  std::vector<ReportResult> results_;
  Rigor extra_rigor_ = Rigor::Rigorous;
};

}  // namespace spherebound
