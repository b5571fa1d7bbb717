// SPDX-License-Identifier: Apache-2.0
//
// sddesim command line: batch experiment runner over the simulation library.
// Subcommands map one-to-one onto experiment kinds plus `catalog`; every run
// with the same config and seed reproduces byte-identical CSV reports.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sddesim/errors.hpp"
#include "sddesim/experiment.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw sddesim::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

struct CommonFlags {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t replicas = 0;
  double dt = 0.0;
  std::string out_dir;
  int workers = 0;
  std::string model;
};

void attach_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file; flags override its values");
  cmd->add_option("--seed", flags.seed, "master seed (also settable via SDDESIM_SEED)")
      ->each([&flags](const std::string&) { flags.seed_set = true; });
  cmd->add_option("--replicas", flags.replicas, "Monte Carlo replica count");
  cmd->add_option("--dt", flags.dt, "time step");
  cmd->add_option("--out", flags.out_dir, "output directory for CSV reports and the manifest");
  cmd->add_option("--workers", flags.workers, "worker threads (0 = hardware)");
  cmd->add_option("--model", flags.model, "catalog model name");
}

sddesim::ExperimentConfig assemble(const std::string& kind, const CommonFlags& flags) {
  sddesim::ExperimentConfig config;
  if (!flags.config_path.empty()) {
    config = sddesim::ExperimentConfig::from_json_text(read_file(flags.config_path));
  }
  config.kind = kind;
  if (const char* env = std::getenv("SDDESIM_SEED");
      env != nullptr && !flags.seed_set && config.seed == sddesim::kDefaultSeed) {
    config.seed = std::strtoull(env, nullptr, 10);
  }
  if (flags.seed_set) config.seed = flags.seed;
  if (flags.replicas > 0) config.replicas = flags.replicas;
  if (flags.dt > 0.0) config.dt = flags.dt;
  if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
  if (flags.workers > 0) config.workers = flags.workers;
  if (!flags.model.empty()) config.model = flags.model;
  return config;
}

int execute(const std::string& kind, const CommonFlags& flags) {
  const sddesim::ExperimentConfig config = assemble(kind, flags);
  const sddesim::ExperimentOutcome outcome = sddesim::run_experiment(config);
  for (const auto& [name, table] : outcome.reports) {
    if (config.out_dir.empty()) {
      std::cout << "== " << name << " ==\n" << table.to_string();
    }
  }
  for (const auto& file : outcome.files_written) std::cout << "wrote " << file << "\n";
  if (!outcome.passed) {
    std::cerr << "FAIL: " << outcome.failure << "\n";
    return 1;
  }
  std::cout << "OK\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delay-equation simulation lab: weak solutions by reweighted drift-free paths, "
               "continuity diagnostics, convergence-mode oracles"};
  app.require_subcommand(1);

  static const std::vector<std::string> kinds = {"simulate", "feller", "convergence",
                                                 "verify-bounds", "analysis"};
  std::vector<std::pair<std::string, CommonFlags>> pending;
  pending.reserve(kinds.size());
  for (const auto& kind : kinds) {
    pending.emplace_back(kind, CommonFlags{});
  }
  for (auto& [kind, flags] : pending) {
    CLI::App* cmd = app.add_subcommand(kind, "run the " + kind + " experiment");
    attach_common(cmd, flags);
  }
  CLI::App* catalog_cmd =
      app.add_subcommand("catalog", "list catalog models and their condition profiles");

  try {
    app.parse(argc, argv);
    if (catalog_cmd->parsed()) {
      std::cout << sddesim::list_catalog();
      return 0;
    }
    for (auto& [kind, flags] : pending) {
      if (app.get_subcommand(kind)->parsed()) return execute(kind, flags);
    }
    return 0;
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  } catch (const sddesim::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    std::cerr << "catalog models:\n" << sddesim::list_catalog();
    return 2;
  } catch (const sddesim::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
}
