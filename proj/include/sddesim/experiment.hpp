// SPDX-License-Identifier: Apache-2.0
//
// Experiment orchestration: a config describes one batch run (which
// experiment kind, model, grid, replica count, seed); run_experiment
// executes it, returns the tabular results, and, when an output directory
// is configured, writes one CSV per table plus a JSON manifest sufficient
// to reproduce the run. Everything numeric is a pure function of
// (config, seed).
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sddesim/csv.hpp"

namespace sddesim {

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr const char* kVersion = "0.1.0";

struct ExperimentConfig {
  std::string kind;  // simulate | feller | convergence | verify-bounds | analysis
  std::string model = "brownian";
  std::map<std::string, double> model_params;

  double delay = 1.0;
  double horizon = 2.0;
  double dt = 1e-2;
  std::size_t replicas = 10000;
  std::uint64_t seed = kDefaultSeed;
  int workers = 0;
  std::string out_dir;  // empty: keep results in memory only

  std::optional<double> initial_head;     // constant initial segment; model default otherwise
  std::vector<double> eval_times;         // marginal / weight evaluation times
  double eval_time = 2.0;                 // gap evaluation time
  std::vector<double> perturbations;      // feller & stability delta grid
  std::string backend = "auto";           // girsanov | direct | auto
  std::string expectation = "none";       // feller pass-criterion: none | decay | persist
  std::string battery = "standard";       // standard | indicators | probes
  double gamma = 1.0;                     // stability exponent

  std::vector<double> alphas = {0.1, 0.25, 0.4};  // moment-bound grid
  std::vector<double> heads = {0.0, 1.0};         // moment-bound initial heads

  std::size_t oracle_budget = 100000;  // randomized convergence oracle

  double analysis_extent = 4.0;   // maximal-function domain half width
  double analysis_spacing = 0.01;
  std::size_t analysis_pairs = 10000;
  double gronwall_p = 0.5;
  std::optional<double> gronwall_c1;  // defaults calibrated in analysis module
  std::optional<double> gronwall_c2;

  // Parses the nested key-value config text (JSON). Unknown keys are errors.
  static ExperimentConfig from_json_text(const std::string& text);
  std::string to_json_text() const;
};

struct ExperimentOutcome {
  bool passed = true;
  std::string failure;  // name of the first failing pass-criterion
  std::vector<std::pair<std::string, CsvTable>> reports;
  std::vector<std::string> files_written;
};

// Executes the configured experiment; throws ConfigError for unknown models
// or invalid grids. Pass-criteria failures are reported in the outcome, not
// thrown.
ExperimentOutcome run_experiment(const ExperimentConfig& config);

// Every catalog model with its condition profile.
std::string list_catalog();

}  // namespace sddesim
