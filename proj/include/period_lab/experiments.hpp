#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "period_lab/tolerance.hpp"

namespace period_lab::experiments {

using Json = nlohmann::ordered_json;

struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 1;
  std::optional<int> trials;  // experiment default when unset
  std::optional<int> torsion_order;
  ToleranceProfile tolerances;
  std::string output;

  /// InvalidConfig on trials < 1, non-positive tolerances or torsion order.
  void validate() const;
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct Trial {
  std::string name;
  bool passed = false;
  Json data;
  friend bool operator==(const Trial&, const Trial&) = default;
};

struct Report {
  std::string experiment;
  ExperimentConfig config;
  std::vector<Trial> trials;
  double wall_seconds = 0.0;  // never serialized

  bool passed() const;
  friend bool operator==(const Report& a, const Report& b) {
    return a.experiment == b.experiment && a.config == b.config && a.trials == b.trials;
  }
};

enum class Format { json, text };

const std::vector<std::string>& experiment_names();

/// Runs one experiment, or every one of them for "all". UnknownExperiment,
/// InvalidConfig.
Report run(ExperimentConfig config);

Json to_json(const Report& r);
Json to_json(const ExperimentConfig& c);
Report report_from_json(const Json& j);
ExperimentConfig config_from_json(const Json& j);

std::string emit(const Report& r, Format format);
/// IoFailure when the file cannot be written.
void write_report(const Report& r, const std::string& path, Format format);

/// Applies a JSON object of tolerance fields; InvalidConfig on unknown keys.
ToleranceProfile apply_tolerances(ToleranceProfile base, const Json& overrides);
/// Reads the file named by PERIOD_LAB_TOLERANCES, when set. IoFailure when it
/// cannot be read.
ToleranceProfile tolerances_from_environment(ToleranceProfile base = {});

}  // namespace period_lab::experiments
