// SPDX-License-Identifier: Apache-2.0
#include "sddesim/girsanov.hpp"

#include <cmath>

#include "sddesim/parallel.hpp"
#include "sddesim/stats.hpp"

namespace sddesim {

namespace {

int node_for(double t, double dt, std::size_t count, const char* what) {
  const double position = t / dt;
  const double rounded = std::round(position);
  if (std::abs(position - rounded) > 1e-9 * std::max(1.0, std::abs(position))) {
    throw RangeError(std::string(what) + ": time is off-grid");
  }
  const auto node = static_cast<std::ptrdiff_t>(rounded);
  if (node < 0 || node >= static_cast<std::ptrdiff_t>(count)) {
    throw RangeError(std::string(what) + ": time outside the accumulated range");
  }
  return static_cast<int>(node);
}

// a = sigma^{-1} (B + b) with a conditioning guard; dim 1 is the hot case.
void solve_adjustment(const ModelSpec& model, CoefficientWorkspace& ws, Eigen::Ref<Vec> out) {
  if (model.dim == 1) {
    const double sigma = ws.diffusion(0, 0);
    const double rhs = ws.delay_drift[0] + ws.point_drift[0];
    if (std::abs(sigma) < 1e-12 * std::max(1.0, std::abs(rhs))) {
      throw DegeneracyError("diffusion of model '" + model.name +
                            "' is numerically singular; ellipticity bound violated");
    }
    out[0] = rhs / sigma;
    return;
  }
  Eigen::PartialPivLU<Mat> lu(ws.diffusion);
  const Vec diag = lu.matrixLU().diagonal().cwiseAbs();
  const double hi = diag.maxCoeff();
  const double lo = diag.minCoeff();
  if (!(lo > hi * 1e-12)) {
    throw DegeneracyError("diffusion of model '" + model.name +
                          "' is numerically singular; ellipticity bound violated");
  }
  out = lu.solve(ws.delay_drift + ws.point_drift);
}

}  // namespace

double LogWeightSeries::log_weight_at(double t) const {
  return log_weight[static_cast<std::size_t>(node_for(t, dt, log_weight.size(), "log weight"))];
}

double LogWeightSeries::quad_variation_at(double t) const {
  return quad_variation[static_cast<std::size_t>(
      node_for(t, dt, quad_variation.size(), "quadratic variation"))];
}

Vec drift_adjustment(const ModelSpec& model, const PathRealization& path, double t) {
  if (t < 0.0) throw RangeError("drift adjustment needs t in [0, horizon]");
  CoefficientWorkspace ws(model.dim);
  eval_coefficients(model, t, segment_at(path, t), ws);
  Vec a(model.dim);
  solve_adjustment(model, ws, a);
  return a;
}

void accumulate_log_weight_into(LogWeightSeries& series, const ModelSpec& model,
                                const PathRealization& path, CoefficientWorkspace& ws) {
  if (path.noise.empty() && path.grid.horizon_steps() > 0) {
    throw InputError("path carries no increment record; cannot reweight");
  }
  const int steps = path.grid.horizon_steps();
  const int d = path.dim;
  const double dt = path.grid.dt();
  series.dt = dt;
  series.log_weight.assign(static_cast<std::size_t>(steps) + 1, 0.0);
  series.quad_variation.assign(static_cast<std::size_t>(steps) + 1, 0.0);

  Vec a(d);
  for (int k = 0; k < steps; ++k) {
    const double t = k * dt;
    eval_coefficients(model, t, segment_at(path, t), ws);
    solve_adjustment(model, ws, a);
    const double quad = a.squaredNorm();
    const double gain = a.dot(path.increment(k)) - 0.5 * quad * dt;
    series.log_weight[static_cast<std::size_t>(k) + 1] =
        series.log_weight[static_cast<std::size_t>(k)] + gain;
    series.quad_variation[static_cast<std::size_t>(k) + 1] =
        series.quad_variation[static_cast<std::size_t>(k)] + quad * dt;
  }
}

LogWeightSeries accumulate_log_weight(const ModelSpec& model, const PathRealization& path) {
  LogWeightSeries series;
  CoefficientWorkspace ws(model.dim);
  accumulate_log_weight_into(series, model, path, ws);
  return series;
}

WeightedEstimate weak_expectation(const ModelSpec& model, const Segment& x,
                                  const std::function<double(const SegmentView&)>& f, double t,
                                  std::size_t replicas, std::uint64_t seed,
                                  const WeakExpectationOptions& options) {
  if (!(t > 0.0)) throw RangeError("weak expectation needs t > 0");
  if (replicas < 1) throw InputError("weak expectation needs at least one replica");

  std::vector<double> weights(replicas);
  std::vector<double> weighted_values(replicas);
  const int n_workers = options.workers > 0 ? options.workers : default_workers();
  std::vector<PathRealization> paths(static_cast<std::size_t>(n_workers));
  std::vector<LogWeightSeries> series(static_cast<std::size_t>(n_workers));
  std::vector<CoefficientWorkspace> scratch(static_cast<std::size_t>(n_workers),
                                            CoefficientWorkspace(model.dim));
  for_each_replica(replicas, n_workers, [&](int worker, std::size_t r) {
    auto& path = paths[static_cast<std::size_t>(worker)];
    auto& ws = scratch[static_cast<std::size_t>(worker)];
    simulate_driftfree_into(path, model, x, t, NoiseStream(seed, r), ws);
    accumulate_log_weight_into(series[static_cast<std::size_t>(worker)], model, path, ws);
    const double weight = series[static_cast<std::size_t>(worker)].weight_at(t);
    weights[r] = weight;
    weighted_values[r] = weight * f(segment_at(path, t));
  });

  const MomentSummary weight_summary = summarize(weights);
  WeightedEstimate out;
  out.replicas = replicas;
  out.mean_weight = weight_summary.mean;
  out.mean_weight_std_error = weight_summary.std_error;
  out.ess = effective_sample_size(weights);
  out.low_ess_warning = out.ess < options.ess_floor_fraction * static_cast<double>(replicas);

  if (options.self_normalized) {
    const double total_weight = pairwise_sum(weights);
    if (total_weight == 0.0) throw InputError("all weights vanished; cannot self-normalize");
    const double estimate = pairwise_sum(weighted_values) / total_weight;
    std::vector<double> centered(replicas);
    for (std::size_t i = 0; i < replicas; ++i) {
      centered[i] = weighted_values[i] - estimate * weights[i];
    }
    const MomentSummary c = summarize(centered);
    out.estimate = estimate;
    out.std_error = c.std_error * static_cast<double>(replicas) / total_weight;
  } else {
    const MomentSummary s = summarize(weighted_values);
    out.estimate = s.mean;
    out.std_error = s.std_error;
  }
  return out;
}

WeightDiagnostics weight_diagnostics(std::span<const LogWeightSeries> series, double t) {
  if (series.empty()) throw InputError("weight diagnostics need at least one series");
  std::vector<double> weights(series.size());
  std::vector<double> novikov(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    weights[i] = series[i].weight_at(t);
    novikov[i] = std::exp(0.5 * series[i].quad_variation_at(t));
  }
  const MomentSummary w = summarize(weights);
  const MomentSummary n = summarize(novikov);
  WeightDiagnostics out;
  out.mean_weight = w.mean;
  out.mean_weight_std_error = w.std_error;
  out.ess = effective_sample_size(weights);
  out.novikov_estimate = n.mean;
  out.novikov_std_error = n.std_error;
  return out;
}

}  // namespace sddesim
