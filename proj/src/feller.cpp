// SPDX-License-Identifier: Apache-2.0
#include "sddesim/feller.hpp"

#include <cmath>

#include "sddesim/direct.hpp"
#include "sddesim/driftfree.hpp"
#include "sddesim/girsanov.hpp"
#include "sddesim/parallel.hpp"
#include "sddesim/stats.hpp"

namespace sddesim {

TestBattery standard_battery() {
  TestBattery battery;
  battery.push_back({"ind_head_ge_0", [](const SegmentView& s) {
                       return s.head()[0] >= 0.0 ? 1.0 : 0.0;
                     }});
  battery.push_back({"ind_head_ge_1", [](const SegmentView& s) {
                       return s.head()[0] >= 1.0 ? 1.0 : 0.0;
                     }});
  battery.push_back({"ind_lag_ge_0", [](const SegmentView& s) {
                       return s.node_value(0)[0] >= 0.0 ? 1.0 : 0.0;
                     }});
  battery.push_back({"ind_lag_ge_1", [](const SegmentView& s) {
                       return s.node_value(0)[0] >= 1.0 ? 1.0 : 0.0;
                     }});
  battery.push_back({"tanh_head", [](const SegmentView& s) { return std::tanh(s.head()[0]); }});
  battery.push_back({"tanh_mid", [](const SegmentView& s) {
                       return std::tanh(s.node_value(s.steps / 2)[0] - 1.0);
                     }});
  battery.push_back({"ind_sup_ge_1", [](const SegmentView& s) {
                       return sup_norm(s) >= 1.0 ? 1.0 : 0.0;
                     }});
  return battery;
}

TestBattery select_battery(const std::string& name) {
  const TestBattery all = standard_battery();
  if (name == "standard" || name.empty()) return all;
  TestBattery out;
  for (const auto& f : all) {
    if (name == "indicators" && f.name.rfind("ind_", 0) == 0) out.push_back(f);
    if (name == "probes" && f.name.rfind("tanh_", 0) == 0) out.push_back(f);
  }
  if (out.empty()) throw ConfigError("unknown battery selection '" + name + "'");
  return out;
}

std::vector<BatteryEstimate> battery_estimates(const ModelSpec& model, const Segment& x,
                                               const TestBattery& battery, double t,
                                               std::size_t replicas, std::uint64_t seed,
                                               GapBackend backend, int workers) {
  if (battery.empty()) throw InputError("battery is empty");
  const std::size_t n_fns = battery.size();
  // values[f * replicas + r]: per-replica contribution for test function f.
  std::vector<double> values(n_fns * replicas);
  const int n_workers = workers > 0 ? workers : default_workers();
  std::vector<PathRealization> paths(static_cast<std::size_t>(n_workers));
  std::vector<LogWeightSeries> series(static_cast<std::size_t>(n_workers));
  std::vector<CoefficientWorkspace> scratch(static_cast<std::size_t>(n_workers),
                                            CoefficientWorkspace(model.dim));

  for_each_replica(replicas, n_workers, [&](int worker, std::size_t r) {
    auto& path = paths[static_cast<std::size_t>(worker)];
    auto& ws = scratch[static_cast<std::size_t>(worker)];
    double weight = 1.0;
    if (backend == GapBackend::kGirsanov) {
      simulate_driftfree_into(path, model, x, t, NoiseStream(seed, r), ws);
      accumulate_log_weight_into(series[static_cast<std::size_t>(worker)], model, path, ws);
      weight = series[static_cast<std::size_t>(worker)].weight_at(t);
    } else {
      simulate_strong_into(path, model, x, t, NoiseStream(seed, r), ws);
    }
    const SegmentView seg = segment_at(path, t);
    for (std::size_t f = 0; f < n_fns; ++f) {
      values[f * replicas + r] = weight * battery[f].fn(seg);
    }
  });

  std::vector<BatteryEstimate> out(n_fns);
  for (std::size_t f = 0; f < n_fns; ++f) {
    const MomentSummary s =
        summarize(std::span<const double>(values.data() + f * replicas, replicas));
    out[f] = BatteryEstimate{battery[f].name, s.mean, s.std_error};
  }
  return out;
}

GapReport strong_feller_gap(const ModelSpec& model, const Segment& x,
                            std::span<const Segment> ys, const TestBattery& battery, double t,
                            std::size_t replicas, std::uint64_t seed, GapBackend backend,
                            int workers) {
  GapReport report;
  report.model = model.name;
  report.t = t;
  report.backend = backend == GapBackend::kGirsanov ? "girsanov" : "direct";
  report.replicas = replicas;
  report.seed = seed;
  report.below_delay_warning = t <= x.delay();

  // Common random numbers: the same seed drives the base and every
  // perturbed estimate.
  const auto base = battery_estimates(model, x, battery, t, replicas, seed, backend, workers);
  for (const Segment& y : ys) {
    const double delta = sup_distance(x, y);
    const auto perturbed = battery_estimates(model, y, battery, t, replicas, seed, backend, workers);
    for (std::size_t f = 0; f < battery.size(); ++f) {
      GapRow row;
      row.function = battery[f].name;
      row.delta = delta;
      row.base = base[f].estimate;
      row.perturbed = perturbed[f].estimate;
      row.gap = std::abs(perturbed[f].estimate - base[f].estimate);
      row.std_error = std::hypot(base[f].std_error, perturbed[f].std_error);
      report.rows.push_back(row);
    }
  }
  return report;
}

GapReport improved_feller_gap(const ModelSpec& model, const Segment& x,
                              std::span<const Segment> ys, const TestBattery& battery, double t,
                              std::size_t replicas, std::uint64_t seed, int workers) {
  if (!model.strong_solvable()) {
    throw CapabilityError("model '" + model.name +
                          "' is weak-only; the coupled gap needs a strong solution");
  }
  GapReport report;
  report.model = model.name;
  report.t = t;
  report.backend = "coupled";
  report.replicas = replicas;
  report.seed = seed;
  report.below_delay_warning = t <= x.delay();

  const std::size_t n_fns = battery.size();
  const int n_workers = workers > 0 ? workers : default_workers();
  std::vector<PathRealization> base_paths(static_cast<std::size_t>(n_workers));
  std::vector<PathRealization> pert_paths(static_cast<std::size_t>(n_workers));
  std::vector<CoefficientWorkspace> scratch(static_cast<std::size_t>(n_workers),
                                            CoefficientWorkspace(model.dim));

  for (const Segment& y : ys) {
    const double delta = sup_distance(x, y);
    std::vector<double> values(n_fns * replicas);
    for_each_replica(replicas, n_workers, [&](int worker, std::size_t r) {
      auto& ws = scratch[static_cast<std::size_t>(worker)];
      auto& base_path = base_paths[static_cast<std::size_t>(worker)];
      auto& pert_path = pert_paths[static_cast<std::size_t>(worker)];
      const NoiseStream stream(seed, r);
      simulate_strong_into(base_path, model, x, t, stream, ws);
      simulate_strong_into(pert_path, model, y, t, stream, ws);
      const SegmentView base_seg = segment_at(base_path, t);
      const SegmentView pert_seg = segment_at(pert_path, t);
      for (std::size_t f = 0; f < n_fns; ++f) {
        values[f * replicas + r] = std::abs(battery[f].fn(pert_seg) - battery[f].fn(base_seg));
      }
    });
    for (std::size_t f = 0; f < n_fns; ++f) {
      const MomentSummary s =
          summarize(std::span<const double>(values.data() + f * replicas, replicas));
      GapRow row;
      row.function = battery[f].name;
      row.delta = delta;
      row.gap = s.mean;
      row.std_error = s.std_error;
      report.rows.push_back(row);
    }
  }
  return report;
}

StabilityFit stability_exponent(const ModelSpec& model, const Segment& x,
                                std::span<const double> deltas, double gamma, double t,
                                std::size_t replicas, std::uint64_t seed, int workers) {
  if (gamma < 1.0) throw DomainError("stability exponent needs gamma >= 1");
  if (!model.strong_solvable()) {
    throw CapabilityError("model '" + model.name + "' has no strong-solution scheme");
  }
  const int n_workers = workers > 0 ? workers : default_workers();
  std::vector<PathRealization> base_paths(static_cast<std::size_t>(n_workers));
  std::vector<PathRealization> pert_paths(static_cast<std::size_t>(n_workers));
  std::vector<CoefficientWorkspace> scratch(static_cast<std::size_t>(n_workers),
                                            CoefficientWorkspace(model.dim));

  StabilityFit fit;
  std::vector<double> log_abscissa;
  std::vector<double> log_moment;
  for (double delta : deltas) {
    if (delta == 0.0) continue;  // distance is exactly zero; no log-log point
    Segment y = [&] {
      std::vector<double> values = x.values();
      for (std::size_t node = 0; node < values.size(); node += static_cast<std::size_t>(x.dim())) {
        values[node] += delta;
      }
      return Segment(x.delay(), x.dt(), x.dim(), std::move(values));
    }();
    std::vector<double> sample(replicas);
    for_each_replica(replicas, n_workers, [&](int worker, std::size_t r) {
      auto& ws = scratch[static_cast<std::size_t>(worker)];
      auto& base_path = base_paths[static_cast<std::size_t>(worker)];
      auto& pert_path = pert_paths[static_cast<std::size_t>(worker)];
      const NoiseStream stream(seed, r);
      simulate_strong_into(base_path, model, x, t, stream, ws);
      simulate_strong_into(pert_path, model, y, t, stream, ws);
      sample[r] = std::pow(sup_distance(segment_at(base_path, t), segment_at(pert_path, t)), gamma);
    });
    const MomentSummary s = summarize(sample);
    fit.points.push_back(StabilityPoint{delta, s.mean, s.std_error});
    if (s.mean > 0.0) {
      log_abscissa.push_back(gamma * std::log(delta));
      log_moment.push_back(std::log(s.mean));
    }
  }
  if (log_abscissa.size() >= 2) {
    const LineFit line = fit_line(log_abscissa, log_moment);
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.slope_std_error = line.slope_std_error;
  }
  return fit;
}

double law_distance(std::span<const double> a, std::span<const double> b, LawDistanceMode mode) {
  switch (mode) {
    case LawDistanceMode::kKolmogorovSmirnov:
      return ks_distance(a, b);
    case LawDistanceMode::kBinnedTotalVariation:
      return binned_tv_distance(a, b);
  }
  throw InputError("unknown law distance mode");
}

}  // namespace sddesim
