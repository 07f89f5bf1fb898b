#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace edgelaw {

struct ExperimentConfig {
  std::uint64_t seed = 0;
  // Multiplies every sample and path count; 1 reproduces the acceptance runs.
  double sample_scale = 1.0;
};

// One comparison. Passes when value <= band + allowance.
struct Check {
  std::string label;
  double value = 0.0;
  double band = 0.0;
  double allowance = 0.0;
  bool pass() const { return value <= band + allowance; }
};

struct ExperimentRow {
  double x;
  double computed;
  double reference;
};

struct ExperimentResult {
  std::string name;
  std::vector<Check> checks;
  std::vector<ExperimentRow> rows;
  double seconds = 0.0;

  bool pass() const;
  // Check with the largest value / (band + allowance).
  const Check& worst() const;
};

struct ExperimentInfo {
  std::string name;
  int criterion;          // acceptance criterion number, 0 if not one
  double budget_seconds;  // runtime budget at sample_scale 1
  std::string summary;
  ExperimentResult (*run)(const ExperimentConfig&);
};

const std::vector<ExperimentInfo>& experiments();
// nullptr when unknown.
const ExperimentInfo* find_experiment(const std::string& name);
ExperimentResult run_experiment(const ExperimentInfo& info, const ExperimentConfig& cfg);

}  // namespace edgelaw
