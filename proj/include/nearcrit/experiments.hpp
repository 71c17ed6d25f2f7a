#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nearcrit/table.hpp"

namespace nearcrit {

struct KeySpec {
  std::string key;
  std::string default_value;  // ignored when required
  bool required = false;
  std::string help;
};

struct ExperimentSpec {
  std::string name;
  std::string help;
  std::vector<KeySpec> keys;
};

/// Every experiment the runner knows, with its documented keys.
const std::vector<ExperimentSpec>& experiment_specs();
/// Throws std::invalid_argument for an unknown experiment.
const ExperimentSpec& experiment_spec(const std::string& name);

struct ExperimentConfig {
  std::string experiment;
  std::map<std::string, std::string> params;  // normalized keys
  std::uint64_t seed = 1;
  int workers = 1;
  std::string output;  // CSV path; empty for none
};

/// Rejects unknown keys and missing required keys, fills defaults and checks
/// that every value parses. Throws std::invalid_argument.
void validate_config(ExperimentConfig& config);

struct ExperimentResult {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> parameters;
  Table table;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
  std::string summary;    // one line with the headline statistic
  std::string svg;        // rendered document when requested
  std::string path_dump;  // path dump when requested
};

/// Runs a validated configuration; pure computation, no files written.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes the CSV (and SVG / path dump when their keys are set). Every file
/// is written atomically.
void write_outputs(const ExperimentConfig& config, const ExperimentResult& result);

}  // namespace nearcrit
