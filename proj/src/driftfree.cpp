// SPDX-License-Identifier: Apache-2.0
#include "sddesim/driftfree.hpp"

#include <cmath>
#include <vector>

#include "sddesim/parallel.hpp"
#include "sddesim/stats.hpp"

namespace sddesim {

namespace {

void check_driftfree_capable(const ModelSpec& model) {
  if (model.has_delay_diffusion()) {
    throw CapabilityError("model '" + model.name +
                          "' uses a lag-dependent diffusion; the drift-free solver needs "
                          "sigma evaluated at the current state");
  }
}

}  // namespace

void simulate_driftfree_into(PathRealization& path, const ModelSpec& model, const Segment& x,
                             double horizon, const NoiseStream& stream, CoefficientWorkspace& ws) {
  const TimeGrid grid(x.delay(), horizon, x.dt());
  simulate_driftfree_from(path, model, x, horizon,
                          brownian_increments(stream, grid.horizon_steps(), grid.dt(), model.dim),
                          ws);
  path.seed = stream.seed();
  path.replica = stream.replica();
}

void simulate_driftfree_from(PathRealization& path, const ModelSpec& model, const Segment& x,
                             double horizon, std::vector<double> increments,
                             CoefficientWorkspace& ws) {
  check_driftfree_capable(model);
  if (x.dim() != model.dim) throw RangeError("initial segment dimension does not match model");

  path.grid = TimeGrid(x.delay(), horizon, x.dt());
  path.dim = model.dim;
  path.seed = 0;
  path.replica = 0;

  const int d = model.dim;
  const int history = path.grid.delay_steps();
  const int steps = path.grid.horizon_steps();
  if (increments.size() != static_cast<std::size_t>(steps) * d) {
    throw RangeError("increment record does not match the grid");
  }
  path.values.resize(static_cast<std::size_t>(path.grid.total_nodes()) * d);
  std::copy(x.values().begin(), x.values().end(), path.values.begin());
  path.noise = std::move(increments);

  Eigen::Map<Eigen::VectorXd> all(path.values.data(), static_cast<Eigen::Index>(path.values.size()));
  for (int k = 0; k < steps; ++k) {
    const int node = history + k;
    const double t = k * path.grid.dt();
    const auto current = ConstVecMap(path.values.data() + static_cast<std::ptrdiff_t>(node) * d, d);
    if (model.diffusion) {
      model.diffusion(t, current, ws.diffusion);
      if (!ws.diffusion.allFinite()) {
        throw ModelEvalError("diffusion sigma of model '" + model.name + "' is non-finite");
      }
      all.segment(static_cast<Eigen::Index>(node + 1) * d, d) =
          current + ws.diffusion * ConstVecMap(path.noise.data() + static_cast<std::ptrdiff_t>(k) * d, d);
    } else {
      all.segment(static_cast<Eigen::Index>(node + 1) * d, d) =
          current + ConstVecMap(path.noise.data() + static_cast<std::ptrdiff_t>(k) * d, d);
    }
  }
}

PathRealization simulate_driftfree(const ModelSpec& model, const Segment& x, double horizon,
                                   const NoiseStream& stream) {
  PathRealization path;
  CoefficientWorkspace ws(model.dim);
  simulate_driftfree_into(path, model, x, horizon, stream, ws);
  return path;
}

double exp_sup_moment_bound(double alpha, int dim, double sigma_bound, double horizon,
                            double head_norm) {
  const double denom = 1.0 - 2.0 * alpha * dim * sigma_bound * horizon;
  return 4.0 / std::sqrt(denom) * std::exp(alpha / denom * head_norm * head_norm);
}

MomentBoundCheck estimate_exp_sup_moment(const ModelSpec& model, const Segment& x, double horizon,
                                         double alpha, std::size_t replicas, std::uint64_t seed,
                                         int workers) {
  const double threshold = 1.0 / (2.0 * model.dim * model.sigma_bound * horizon);
  if (alpha < 0.0 || alpha >= threshold) {
    throw DomainError("alpha must satisfy 0 <= alpha < 1/(2 d C_sigma T) = " +
                      std::to_string(threshold));
  }

  std::vector<double> sample(replicas);
  const int n_workers = workers > 0 ? workers : default_workers();
  std::vector<PathRealization> paths(static_cast<std::size_t>(n_workers));
  std::vector<CoefficientWorkspace> scratch(static_cast<std::size_t>(n_workers),
                                            CoefficientWorkspace(model.dim));
  for_each_replica(replicas, n_workers, [&](int worker, std::size_t r) {
    auto& path = paths[static_cast<std::size_t>(worker)];
    simulate_driftfree_into(path, model, x, horizon, NoiseStream(seed, r),
                            scratch[static_cast<std::size_t>(worker)]);
    double sup_sq = 0.0;
    const int first = path.grid.delay_steps();
    for (int node = first; node < path.grid.total_nodes(); ++node) {
      sup_sq = std::max(sup_sq, path.value_at_node(node).squaredNorm());
    }
    sample[r] = std::exp(alpha * sup_sq);
  });

  const MomentSummary s = summarize(sample);
  MomentBoundCheck out;
  out.alpha = alpha;
  out.estimate = s.mean;
  out.std_error = s.std_error;
  out.bound = exp_sup_moment_bound(alpha, model.dim, model.sigma_bound, horizon, x.head().norm());
  out.passed = out.estimate - 3.0 * out.std_error <= out.bound;
  return out;
}

TimeIntegralEstimate estimate_time_integral(
    const ModelSpec& model, const Segment& x, double horizon,
    const std::function<double(double, const Eigen::Ref<const Vec>&)>& f, std::size_t replicas,
    std::uint64_t seed, int workers) {
  std::vector<double> sample(replicas);
  const int n_workers = workers > 0 ? workers : default_workers();
  std::vector<PathRealization> paths(static_cast<std::size_t>(n_workers));
  std::vector<CoefficientWorkspace> scratch(static_cast<std::size_t>(n_workers),
                                            CoefficientWorkspace(model.dim));
  for_each_replica(replicas, n_workers, [&](int worker, std::size_t r) {
    auto& path = paths[static_cast<std::size_t>(worker)];
    simulate_driftfree_into(path, model, x, horizon, NoiseStream(seed, r),
                            scratch[static_cast<std::size_t>(worker)]);
    const int first = path.grid.delay_steps();
    double integral = 0.0;
    for (int k = 0; k < path.grid.horizon_steps(); ++k) {
      integral += f(k * path.grid.dt(), path.value_at_node(first + k)) * path.grid.dt();
    }
    sample[r] = integral;
  });
  const MomentSummary s = summarize(sample);
  return TimeIntegralEstimate{s.mean, s.std_error};
}

OccupationSlope time_integral_slope(const ModelSpec& model, const Segment& x, double horizon,
                                    const std::function<double(double, const Eigen::Ref<const Vec>&)>& f,
                                    double f_norm, const std::vector<double>& lambdas,
                                    std::size_t replicas, std::uint64_t seed, int workers) {
  if (lambdas.size() < 2) throw InputError("slope fit needs at least two scale factors");
  std::vector<double> norms;
  std::vector<double> estimates;
  for (double lambda : lambdas) {
    const auto scaled = [&f, lambda](double t, const Eigen::Ref<const Vec>& y) {
      return lambda * f(t, y);
    };
    const auto est = estimate_time_integral(model, x, horizon, scaled, replicas, seed, workers);
    norms.push_back(lambda * f_norm);
    estimates.push_back(est.estimate);
  }
  const LineFit fit = fit_line(norms, estimates);
  OccupationSlope out;
  out.slope = fit.slope;
  for (double e : estimates) out.max_estimate = std::max(out.max_estimate, e);
  return out;
}

}  // namespace sddesim
