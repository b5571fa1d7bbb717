// SPDX-License-Identifier: Apache-2.0
#include "sddesim/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "sddesim/analysis.hpp"
#include "sddesim/convergence.hpp"
#include "sddesim/direct.hpp"
#include "sddesim/driftfree.hpp"
#include "sddesim/feller.hpp"
#include "sddesim/girsanov.hpp"
#include "sddesim/model.hpp"
#include "sddesim/parallel.hpp"
#include "sddesim/stats.hpp"

namespace sddesim {

namespace {

using nlohmann::json;

double default_head(const std::string& model) {
  // The power-law drift blows up at the origin; start beside it.
  return model == "power-singularity" ? 0.5 : 0.0;
}

std::vector<double> default_perturbations() {
  return {0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
}

ModelSpec build_model(const ExperimentConfig& config) {
  return catalog::make(config.model, [&](const std::string& key, double fallback) {
    const auto found = config.model_params.find(key);
    return found == config.model_params.end() ? fallback : found->second;
  });
}

Segment initial_segment(const ExperimentConfig& config, const ModelSpec& model) {
  const double head = config.initial_head.value_or(default_head(config.model));
  Vec v = Vec::Constant(model.dim, head);
  return embed_constant(v, config.delay, config.dt);
}

GapBackend resolve_backend(const ExperimentConfig& config, const ModelSpec& model) {
  if (config.backend == "girsanov") return GapBackend::kGirsanov;
  if (config.backend == "direct") return GapBackend::kDirect;
  if (config.backend != "auto") throw ConfigError("backend must be girsanov, direct or auto");
  return model.strong_solvable() ? GapBackend::kDirect : GapBackend::kGirsanov;
}

std::vector<double> times_within(const std::vector<double>& requested, double horizon,
                                 std::vector<double> fallback) {
  std::vector<double> out;
  for (double t : requested.empty() ? fallback : requested) {
    if (t > 0.0 && t <= horizon * (1.0 + 1e-12)) out.push_back(t);
  }
  if (out.empty()) throw ConfigError("no evaluation time lies inside (0, horizon]");
  return out;
}

// ---------------------------------------------------------------------------
// simulate: plain path statistics.

void run_simulate(const ExperimentConfig& config, ExperimentOutcome& outcome) {
  const ModelSpec model = build_model(config);
  const Segment x = initial_segment(config, model);
  const auto times = times_within(config.eval_times, config.horizon,
                                  {config.horizon / 2.0, config.horizon});

  const std::size_t n = config.replicas;
  std::vector<double> heads(times.size() * n);
  const int workers = config.workers > 0 ? config.workers : default_workers();
  std::vector<PathRealization> paths(static_cast<std::size_t>(workers));
  std::vector<CoefficientWorkspace> scratch(static_cast<std::size_t>(workers),
                                            CoefficientWorkspace(model.dim));
  for_each_replica(n, workers, [&](int worker, std::size_t r) {
    auto& path = paths[static_cast<std::size_t>(worker)];
    simulate_strong_into(path, model, x, config.horizon, NoiseStream(config.seed, r),
                         scratch[static_cast<std::size_t>(worker)]);
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
      heads[ti * n + r] = path.value_at_time(times[ti])[0];
    }
  });

  CsvTable marginals({"model", "t", "mean", "variance", "se", "N", "seed"});
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    const MomentSummary s = summarize(std::span<const double>(heads.data() + ti * n, n));
    marginals.add_row({config.model, times[ti], s.mean, s.variance, s.std_error,
                       static_cast<std::uint64_t>(n), config.seed});
  }
  outcome.reports.emplace_back("marginals", std::move(marginals));

  CsvTable samples({"replica", "head"});
  const std::size_t cap = std::min<std::size_t>(n, 10000);
  for (std::size_t r = 0; r < cap; ++r) {
    samples.add_row({static_cast<std::uint64_t>(r), heads[(times.size() - 1) * n + r]});
  }
  outcome.reports.emplace_back("samples", std::move(samples));
}

// ---------------------------------------------------------------------------
// feller: strong-Feller gaps, coupled gaps, stability exponent.

void run_feller(const ExperimentConfig& config, ExperimentOutcome& outcome) {
  const ModelSpec model = build_model(config);
  const Segment x = initial_segment(config, model);
  const TestBattery battery = select_battery(config.battery);
  const std::vector<double> deltas =
      config.perturbations.empty() ? default_perturbations() : config.perturbations;

  std::vector<Segment> ys;
  for (double delta : deltas) {
    Vec v = Vec::Constant(model.dim, x.head()[0] - delta);  // approach from below
    ys.push_back(embed_constant(v, config.delay, config.dt));
  }

  const GapBackend backend = resolve_backend(config, model);
  const GapReport gaps = strong_feller_gap(model, x, ys, battery, config.eval_time,
                                           config.replicas, config.seed, backend, config.workers);

  CsvTable table({"model", "t", "f_name", "delta", "gap", "se", "backend", "N", "seed"});
  for (const auto& row : gaps.rows) {
    table.add_row({gaps.model, gaps.t, row.function, row.delta, row.gap, row.std_error,
                   gaps.backend, static_cast<std::uint64_t>(gaps.replicas), gaps.seed});
  }
  outcome.reports.emplace_back("gap_report", std::move(table));

  if (model.strong_solvable()) {
    const GapReport coupled = improved_feller_gap(model, x, ys, battery, config.eval_time,
                                                  config.replicas, config.seed, config.workers);
    CsvTable coupled_table({"model", "t", "f_name", "delta", "gap", "se", "backend", "N", "seed"});
    for (const auto& row : coupled.rows) {
      coupled_table.add_row({coupled.model, coupled.t, row.function, row.delta, row.gap,
                             row.std_error, coupled.backend,
                             static_cast<std::uint64_t>(coupled.replicas), coupled.seed});
    }
    outcome.reports.emplace_back("coupled_report", std::move(coupled_table));
  }

  if (model.profile.delay_lipschitz) {
    const StabilityFit fit = stability_exponent(model, x, deltas, config.gamma, config.eval_time,
                                                config.replicas, config.seed, config.workers);
    CsvTable stability({"model", "t", "gamma", "delta", "moment", "se", "slope", "intercept"});
    for (const auto& point : fit.points) {
      stability.add_row({config.model, config.eval_time, config.gamma, point.delta, point.moment,
                         point.std_error, fit.slope, fit.intercept});
    }
    outcome.reports.emplace_back("stability", std::move(stability));
  }

  // Configured pass-criteria.
  if (config.expectation == "decay") {
    double smallest = deltas[0];
    for (double d : deltas) smallest = std::min(smallest, d);
    for (const auto& f : battery) {
      std::vector<const GapRow*> rows;
      for (const auto& row : gaps.rows) {
        if (row.function == f.name) rows.push_back(&row);
      }
      for (const auto* row : rows) {
        if (row->delta == smallest && row->gap > 3.0 * row->std_error) {
          outcome.passed = false;
          outcome.failure = "strong-feller-decay: " + f.name + " gap above 3 SE at smallest delta";
          return;
        }
      }
      for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        const double slack = 3.0 * (rows[i]->std_error + rows[i + 1]->std_error);
        if (rows[i + 1]->delta < rows[i]->delta && rows[i + 1]->gap > rows[i]->gap + slack) {
          outcome.passed = false;
          outcome.failure = "strong-feller-decay: " + f.name + " gap not nonincreasing in delta";
          return;
        }
      }
    }
  } else if (config.expectation == "persist") {
    for (const auto& row : gaps.rows) {
      if (row.function == "ind_lag_ge_0" && row.gap <= 0.6) {
        outcome.passed = false;
        outcome.failure =
            "counterexample-persistence: ind_lag_ge_0 gap fell to " + std::to_string(row.gap);
        return;
      }
    }
  } else if (config.expectation != "none") {
    throw ConfigError("expectation must be none, decay or persist");
  }
}

// ---------------------------------------------------------------------------
// convergence: finite-instance oracles.

void run_convergence(const ExperimentConfig& config, ExperimentOutcome& outcome) {
  const OracleReport exhaustive =
      equivalence_oracle_exhaustive(3, 3, {0.0, 0.25, 0.5, 0.75, 1.0}, 2);
  const OracleReport randomized = equivalence_oracle_randomized(config.oracle_budget, config.seed);

  CsvTable oracle({"mode", "instances", "violations"});
  oracle.add_row({std::string("exhaustive"),
                  static_cast<std::uint64_t>(exhaustive.instances_checked),
                  static_cast<std::uint64_t>(exhaustive.violations)});
  oracle.add_row({std::string("randomized"),
                  static_cast<std::uint64_t>(randomized.instances_checked),
                  static_cast<std::uint64_t>(randomized.violations)});
  outcome.reports.emplace_back("oracle", std::move(oracle));

  CsvTable violations({"mode", "instance_hash", "description", "cond_1a", "cond_1b", "cond_2"});
  const auto add_violations = [&](const char* mode, const OracleReport& report) {
    for (const auto& v : report.details) {
      violations.add_row({std::string(mode), v.instance_hash, v.description,
                          static_cast<long long>(v.verdict.outer_probability),
                          static_cast<long long>(v.verdict.laws_on_opens),
                          static_cast<long long>(v.verdict.l1_bounded)});
    }
  };
  add_violations("exhaustive", exhaustive);
  add_violations("randomized", randomized);
  outcome.reports.emplace_back("oracle_violations", std::move(violations));

  CsvTable examples(
      {"example", "instance_hash", "cond_1a", "cond_1b", "cond_2", "witness", "witness_value"});
  const auto add_example = [&](const char* name, const FiniteInstance& instance) {
    const ModeVerdict verdict = check_modes(instance);
    std::string witness = verdict.witness_2.empty() ? verdict.witness_1b : verdict.witness_2;
    if (!verdict.witness_1a.empty()) witness = verdict.witness_1a + "; " + witness;
    examples.add_row({std::string(name), instance.content_hash(),
                      static_cast<long long>(verdict.outer_probability),
                      static_cast<long long>(verdict.laws_on_opens),
                      static_cast<long long>(verdict.l1_bounded), witness, verdict.witness_value});
    return verdict;
  };
  const ModeVerdict first = add_example("deterministic-sequence", example_deterministic_sequence());
  const ModeVerdict second = add_example("mirrored-sign", example_mirrored_sign());
  outcome.reports.emplace_back("examples", std::move(examples));

  if (exhaustive.violations != 0 || randomized.violations != 0) {
    outcome.passed = false;
    outcome.failure = "convergence-equivalence: oracle reported violations";
    return;
  }
  const bool first_ok = first.outer_probability && !first.laws_on_opens && !first.l1_bounded &&
                        first.witness_value == 1.0;
  const bool second_ok = !second.outer_probability && second.laws_on_opens &&
                         !second.l1_bounded && second.witness_value == 1.0;
  if (!first_ok || !second_ok) {
    outcome.passed = false;
    outcome.failure = "convergence-examples: verdict triple mismatch";
  }
}

// ---------------------------------------------------------------------------
// verify-bounds: martingale identity, exponential sup-moment bound, and the
// occupation-integral slope.

void run_verify_bounds(const ExperimentConfig& config, ExperimentOutcome& outcome) {
  const ModelSpec model = build_model(config);
  if (model.has_delay_diffusion()) {
    throw ConfigError("verify-bounds needs a state-dependent diffusion model (reweighting)");
  }
  const Segment x = initial_segment(config, model);
  const auto times = times_within(config.eval_times, config.horizon, {0.5, 1.0, 2.0});

  const std::size_t n = config.replicas;
  const int workers = config.workers > 0 ? config.workers : default_workers();
  std::vector<double> weights(times.size() * n);
  std::vector<double> novikov(times.size() * n);
  std::vector<PathRealization> paths(static_cast<std::size_t>(workers));
  std::vector<LogWeightSeries> series(static_cast<std::size_t>(workers));
  std::vector<CoefficientWorkspace> scratch(static_cast<std::size_t>(workers),
                                            CoefficientWorkspace(model.dim));
  for_each_replica(n, workers, [&](int worker, std::size_t r) {
    auto& path = paths[static_cast<std::size_t>(worker)];
    auto& ws = scratch[static_cast<std::size_t>(worker)];
    simulate_driftfree_into(path, model, x, config.horizon, NoiseStream(config.seed, r), ws);
    accumulate_log_weight_into(series[static_cast<std::size_t>(worker)], model, path, ws);
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
      weights[ti * n + r] = series[static_cast<std::size_t>(worker)].weight_at(times[ti]);
      novikov[ti * n + r] =
          std::exp(0.5 * series[static_cast<std::size_t>(worker)].quad_variation_at(times[ti]));
    }
  });

  CsvTable martingale({"model", "t", "mean_weight", "se", "ess", "novikov", "N", "seed"});
  bool martingale_ok = true;
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    const MomentSummary w = summarize(std::span<const double>(weights.data() + ti * n, n));
    const MomentSummary nv = summarize(std::span<const double>(novikov.data() + ti * n, n));
    const double ess = effective_sample_size(std::span<const double>(weights.data() + ti * n, n));
    martingale.add_row({config.model, times[ti], w.mean, w.std_error, ess, nv.mean,
                        static_cast<std::uint64_t>(n), config.seed});
    if (std::abs(w.mean - 1.0) > 3.0 * w.std_error) martingale_ok = false;
  }
  outcome.reports.emplace_back("martingale", std::move(martingale));

  // Exponential sup-moment bound on the drift-free path over [0, 1].
  CsvTable moment({"alpha", "head", "estimate", "se", "bound", "passed"});
  bool moment_ok = true;
  for (double alpha : config.alphas) {
    for (double head : config.heads) {
      const Segment start = embed_constant(Vec::Constant(model.dim, head), config.delay, config.dt);
      const MomentBoundCheck check =
          estimate_exp_sup_moment(model, start, 1.0, alpha, n, config.seed + 1, config.workers);
      moment.add_row({check.alpha, head, check.estimate, check.std_error, check.bound,
                      static_cast<long long>(check.passed)});
      moment_ok = moment_ok && check.passed;
    }
  }
  outcome.reports.emplace_back("moment_bound", std::move(moment));

  // Occupation-integral linearity: slope of estimate against the scale of f,
  // compared across initial heads (the bound must not depend on the start).
  CsvTable krylov({"head", "slope", "max_estimate"});
  std::vector<double> slopes;
  for (double head : config.heads) {
    const Segment start = embed_constant(Vec::Constant(model.dim, head), config.delay, config.dt);
    const auto occupation = [](double, const Eigen::Ref<const Vec>& y) {
      return std::abs(y[0]) <= 0.5 ? 1.0 : 0.0;
    };
    const OccupationSlope slope =
        time_integral_slope(model, start, std::min(config.horizon, 1.0), occupation, 1.0,
                            {0.5, 1.0, 2.0, 4.0}, n / 10 + 1, config.seed + 2, config.workers);
    krylov.add_row({head, slope.slope, slope.max_estimate});
    slopes.push_back(slope.slope);
  }
  outcome.reports.emplace_back("krylov", std::move(krylov));

  // The uniform occupation bound: the slope may not exceed T * ||f||_sup for
  // any initial head (it varies below that ceiling as the start moves).
  double slope_hi = slopes[0];
  for (double s : slopes) slope_hi = std::max(slope_hi, s);
  const bool krylov_ok = slope_hi <= std::min(config.horizon, 1.0) * (1.0 + 1e-9);

  if (!martingale_ok) {
    outcome.passed = false;
    outcome.failure = "martingale-identity: mean weight more than 3 SE from 1";
  } else if (!moment_ok) {
    outcome.passed = false;
    outcome.failure = "moment-bound: estimate exceeded the closed-form bound";
  } else if (!krylov_ok) {
    outcome.passed = false;
    outcome.failure = "occupation-slope: slope not uniform over initial heads";
  }
}

// ---------------------------------------------------------------------------
// analysis: maximal function and stochastic Gronwall checks.

void run_analysis(const ExperimentConfig& config, ExperimentOutcome& outcome) {
  CsvTable maximal({"function", "spacing", "fitted_cd", "norm_ratio_p2", "violations", "pairs"});
  bool stability_ok = true;
  bool violations_ok = true;
  for (const std::string& name : analysis_catalog_names()) {
    const auto fn = analysis_catalog(name);
    double fitted_coarse = 0.0;
    for (int level = 0; level < 2; ++level) {
      const double spacing = config.analysis_spacing / (level == 0 ? 1.0 : 2.0);
      const GriddedFunction phi = GriddedFunction::sample(1, config.analysis_extent, spacing, fn);
      MaximalInequalityCheck check =
          maximal_inequality_check(phi, config.analysis_pairs, 2.0, config.seed);
      // Re-run against a slightly inflated fitted constant; no pair may
      // violate it.
      check = maximal_inequality_check(phi, config.analysis_pairs, 2.0, config.seed,
                                       1.05 * check.fitted_constant);
      maximal.add_row({name, spacing, check.fitted_constant, check.norm_ratio,
                       static_cast<long long>(check.violations),
                       static_cast<std::uint64_t>(check.pairs)});
      if (check.violations != 0) violations_ok = false;
      if (level == 0) {
        fitted_coarse = check.fitted_constant;
      } else if (fitted_coarse > 0.0 &&
                 std::abs(check.fitted_constant - fitted_coarse) > 0.10 * fitted_coarse) {
        stability_ok = false;
      }
    }
  }
  outcome.reports.emplace_back("maximal", std::move(maximal));

  const double p = config.gronwall_p;
  const double c1 = config.gronwall_c1.value_or(gronwall_default_c1(p));
  const double c2 = config.gronwall_c2.value_or(gronwall_default_c2(p));

  CsvTable probe({"c1", "c2", "KT", "lhs", "rhs", "passed"});
  bool pattern_ok = true;
  for (double c1_factor : {0.5, 1.0, 2.0}) {
    for (double c2_candidate : {0.5, 1.0, 2.0}) {
      const double c1_candidate = c1_factor * p;
      bool all_pass = true;
      for (double kt : {0.0, 1.0, 10.0, 50.0}) {
        const GronwallCheck check =
            stochastic_gronwall_deterministic(1.0, 1.0, p, kt, c1_candidate, c2_candidate);
        probe.add_row({c1_candidate, c2_candidate, kt, check.lhs, check.rhs,
                       static_cast<long long>(check.passed)});
        all_pass = all_pass && check.passed;
      }
      const bool expected = c1_candidate >= p && c2_candidate >= 1.0;
      if (all_pass != expected) pattern_ok = false;
    }
  }
  outcome.reports.emplace_back("gronwall_probe", std::move(probe));

  const GronwallCheck mc = stochastic_gronwall_monte_carlo(
      1.0, 1.0, p, 1.0, 0.5, 1e-3, config.replicas, config.seed, c1, c2, config.workers);
  CsvTable gronwall_mc({"p", "c1", "c2", "lhs", "se", "rhs", "passed"});
  gronwall_mc.add_row(
      {p, c1, c2, mc.lhs, mc.lhs_std_error, mc.rhs, static_cast<long long>(mc.passed)});
  outcome.reports.emplace_back("gronwall_mc", std::move(gronwall_mc));

  if (!stability_ok) {
    outcome.passed = false;
    outcome.failure = "maximal-stability: fitted constant moved more than 10% under refinement";
  } else if (!violations_ok) {
    outcome.passed = false;
    outcome.failure = "maximal-violations: pairs violated the inflated fitted constant";
  } else if (!pattern_ok) {
    outcome.passed = false;
    outcome.failure = "gronwall-probe-pattern: pass set differs from {c1 >= p and c2 >= 1}";
  } else if (!mc.passed) {
    outcome.passed = false;
    outcome.failure = "gronwall-mc: estimate exceeded the bound";
  }
}

void write_outputs(const ExperimentConfig& config, ExperimentOutcome& outcome, double wall_ms) {
  if (config.out_dir.empty()) return;
  const std::filesystem::path dir(config.out_dir);
  std::filesystem::create_directories(dir);
  for (const auto& [name, table] : outcome.reports) {
    const auto path = dir / (name + ".csv");
    table.write(path);
    outcome.files_written.push_back(path.string());
  }
  json manifest;
  manifest["version"] = kVersion;
  manifest["config"] = json::parse(config.to_json_text());
  manifest["seed"] = config.seed;
  manifest["wall_time_ms"] = wall_ms;
  manifest["passed"] = outcome.passed;
  manifest["failure"] = outcome.failure;
  manifest["reports"] = json::array();
  for (const auto& f : outcome.files_written) manifest["reports"].push_back(f);
  const auto manifest_path = dir / "manifest.json";
  std::ofstream file(manifest_path, std::ios::binary);
  file << manifest.dump(2) << "\n";
  outcome.files_written.push_back(manifest_path.string());
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json parsed;
  try {
    parsed = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("config is not valid JSON: ") + err.what());
  }
  ExperimentConfig config;
  const auto take = [&parsed](const char* key) -> const json* {
    const auto found = parsed.find(key);
    return found == parsed.end() ? nullptr : &*found;
  };
  static const std::vector<std::string> known = {
      "kind",           "model",
      "model_params",   "delay",
      "horizon",        "dt",
      "replicas",       "seed",
      "workers",        "out_dir",
      "initial_head",   "eval_times",
      "eval_time",      "perturbations",
      "backend",        "expectation",
      "battery",
      "gamma",          "alphas",
      "heads",          "oracle_budget",
      "analysis_extent", "analysis_spacing",
      "analysis_pairs", "gronwall_p",
      "gronwall_c1",    "gronwall_c2"};
  for (const auto& [key, value] : parsed.items()) {
    (void)value;
    bool ok = false;
    for (const auto& k : known) ok = ok || k == key;
    if (!ok) throw ConfigError("unknown config key '" + key + "'");
  }
  try {
    if (const auto* v = take("kind")) config.kind = v->get<std::string>();
    if (const auto* v = take("model")) config.model = v->get<std::string>();
    if (const auto* v = take("model_params")) {
      for (const auto& [key, value] : v->items()) config.model_params[key] = value.get<double>();
    }
    if (const auto* v = take("delay")) config.delay = v->get<double>();
    if (const auto* v = take("horizon")) config.horizon = v->get<double>();
    if (const auto* v = take("dt")) config.dt = v->get<double>();
    if (const auto* v = take("replicas")) config.replicas = v->get<std::size_t>();
    if (const auto* v = take("seed")) config.seed = v->get<std::uint64_t>();
    if (const auto* v = take("workers")) config.workers = v->get<int>();
    if (const auto* v = take("out_dir")) config.out_dir = v->get<std::string>();
    if (const auto* v = take("initial_head")) config.initial_head = v->get<double>();
    if (const auto* v = take("eval_times")) config.eval_times = v->get<std::vector<double>>();
    if (const auto* v = take("eval_time")) config.eval_time = v->get<double>();
    if (const auto* v = take("perturbations")) {
      config.perturbations = v->get<std::vector<double>>();
    }
    if (const auto* v = take("backend")) config.backend = v->get<std::string>();
    if (const auto* v = take("expectation")) config.expectation = v->get<std::string>();
    if (const auto* v = take("battery")) config.battery = v->get<std::string>();
    if (const auto* v = take("gamma")) config.gamma = v->get<double>();
    if (const auto* v = take("alphas")) config.alphas = v->get<std::vector<double>>();
    if (const auto* v = take("heads")) config.heads = v->get<std::vector<double>>();
    if (const auto* v = take("oracle_budget")) config.oracle_budget = v->get<std::size_t>();
    if (const auto* v = take("analysis_extent")) config.analysis_extent = v->get<double>();
    if (const auto* v = take("analysis_spacing")) config.analysis_spacing = v->get<double>();
    if (const auto* v = take("analysis_pairs")) config.analysis_pairs = v->get<std::size_t>();
    if (const auto* v = take("gronwall_p")) config.gronwall_p = v->get<double>();
    if (const auto* v = take("gronwall_c1")) config.gronwall_c1 = v->get<double>();
    if (const auto* v = take("gronwall_c2")) config.gronwall_c2 = v->get<double>();
  } catch (const json::exception& err) {
    throw ConfigError(std::string("config value has the wrong type: ") + err.what());
  }
  return config;
}

std::string ExperimentConfig::to_json_text() const {
  json out;
  out["kind"] = kind;
  out["model"] = model;
  out["model_params"] = json::object();
  for (const auto& [key, value] : model_params) out["model_params"][key] = value;
  out["delay"] = delay;
  out["horizon"] = horizon;
  out["dt"] = dt;
  out["replicas"] = replicas;
  out["seed"] = seed;
  out["workers"] = workers;
  out["out_dir"] = out_dir;
  if (initial_head) out["initial_head"] = *initial_head;
  out["eval_times"] = eval_times;
  out["eval_time"] = eval_time;
  out["perturbations"] = perturbations;
  out["backend"] = backend;
  out["expectation"] = expectation;
  out["battery"] = battery;
  out["gamma"] = gamma;
  out["alphas"] = alphas;
  out["heads"] = heads;
  out["oracle_budget"] = oracle_budget;
  out["analysis_extent"] = analysis_extent;
  out["analysis_spacing"] = analysis_spacing;
  out["analysis_pairs"] = analysis_pairs;
  out["gronwall_p"] = gronwall_p;
  if (gronwall_c1) out["gronwall_c1"] = *gronwall_c1;
  if (gronwall_c2) out["gronwall_c2"] = *gronwall_c2;
  return out.dump(2);
}

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
  if (config.replicas < 1) throw ConfigError("replicas must be >= 1");
  TimeGrid(config.delay, config.horizon, config.dt);  // validates the grid

  const auto start = std::chrono::steady_clock::now();
  ExperimentOutcome outcome;
  if (config.kind == "simulate") {
    run_simulate(config, outcome);
  } else if (config.kind == "feller") {
    run_feller(config, outcome);
  } else if (config.kind == "convergence") {
    run_convergence(config, outcome);
  } else if (config.kind == "verify-bounds") {
    run_verify_bounds(config, outcome);
  } else if (config.kind == "analysis") {
    run_analysis(config, outcome);
  } else {
    throw ConfigError("unknown experiment kind '" + config.kind +
                      "'; expected simulate, feller, convergence, verify-bounds or analysis");
  }
  const auto end = std::chrono::steady_clock::now();
  const double wall_ms =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(end - start).count();
  write_outputs(config, outcome, wall_ms);
  return outcome;
}

std::string list_catalog() {
  std::ostringstream out;
  for (const std::string& name : catalog::names()) {
    const ModelSpec model = catalog::make(name);
    const auto& profile = model.profile;
    out << name << " (dim " << model.dim << ")";
    if (model.pure_delay) out << " [pure-delay]";
    out << "\n";
    out << "  exponent gate d/p+2/q<1 : "
        << (model.exponent_p ? (profile.exponent_gate ? "declared, claimed" : "declared") : "n/a")
        << "\n";
    out << "  sigma ellipticity       : " << (profile.sigma_bounds ? "claimed" : "VIOLATED")
        << "\n";
    out << "  sigma Lipschitz         : " << (profile.sigma_lipschitz ? "claimed" : "VIOLATED")
        << "\n";
    out << "  delay-drift growth      : " << (profile.delay_growth ? "claimed" : "VIOLATED")
        << "\n";
    out << "  delay-drift sublinear   : " << (profile.delay_sublinear ? "claimed" : "VIOLATED")
        << "\n";
    out << "  delay-drift continuity  : " << (profile.delay_continuity ? "claimed" : "VIOLATED")
        << "\n";
    out << "  delay-drift Lipschitz   : " << (profile.delay_lipschitz ? "claimed" : "not claimed")
        << "\n";
  }
  return out.str();
}

}  // namespace sddesim
