// SPDX-License-Identifier: Apache-2.0
#include "sddesim/direct.hpp"

#include <algorithm>

namespace sddesim {

namespace {

void prepare(PathRealization& path, const ModelSpec& model, const Segment& x, double horizon,
             std::vector<double> increments) {
  if (x.dim() != model.dim) throw RangeError("initial segment dimension does not match model");
  path.grid = TimeGrid(x.delay(), horizon, x.dt());
  path.dim = model.dim;
  path.seed = 0;
  path.replica = 0;
  if (increments.size() != static_cast<std::size_t>(path.grid.horizon_steps()) * model.dim) {
    throw RangeError("increment record does not match the grid");
  }
  path.values.resize(static_cast<std::size_t>(path.grid.total_nodes()) * model.dim);
  std::copy(x.values().begin(), x.values().end(), path.values.begin());
  path.noise = std::move(increments);
}

std::vector<double> stream_increments(const Segment& x, double horizon, const NoiseStream& stream,
                                      int dim) {
  const TimeGrid grid(x.delay(), horizon, x.dt());
  return brownian_increments(stream, grid.horizon_steps(), grid.dt(), dim);
}

// One Euler step from grid step k; shared by the plain and block solvers so
// both produce identical arithmetic.
inline void euler_step(PathRealization& path, const ModelSpec& model, int k,
                       CoefficientWorkspace& ws) {
  const int d = path.dim;
  const double dt = path.grid.dt();
  const double t = k * dt;
  const int node = path.grid.delay_steps() + k;
  const SegmentView trailing{path.values.data() + static_cast<std::ptrdiff_t>(node - path.grid.delay_steps()) * d,
                             path.grid.delay_steps(), d, dt};
  eval_coefficients(model, t, trailing, ws);
  const auto current = ConstVecMap(path.values.data() + static_cast<std::ptrdiff_t>(node) * d, d);
  Eigen::Map<Vec> next(path.values.data() + static_cast<std::ptrdiff_t>(node + 1) * d, d);
  next = current + (ws.delay_drift + ws.point_drift) * dt +
         ws.diffusion * ConstVecMap(path.noise.data() + static_cast<std::ptrdiff_t>(k) * d, d);
}

}  // namespace

void simulate_strong_from(PathRealization& path, const ModelSpec& model, const Segment& x,
                          double horizon, std::vector<double> increments,
                          CoefficientWorkspace& ws) {
  if (!model.strong_solvable()) {
    throw CapabilityError("model '" + model.name +
                          "' declares neither a Lipschitz delay drift nor pure-delay form; "
                          "no strong-solution scheme applies");
  }
  prepare(path, model, x, horizon, std::move(increments));
  const int steps = path.grid.horizon_steps();
  for (int k = 0; k < steps; ++k) euler_step(path, model, k, ws);
}

void simulate_strong_into(PathRealization& path, const ModelSpec& model, const Segment& x,
                          double horizon, const NoiseStream& stream, CoefficientWorkspace& ws) {
  simulate_strong_from(path, model, x, horizon, stream_increments(x, horizon, stream, model.dim),
                       ws);
  path.seed = stream.seed();
  path.replica = stream.replica();
}

PathRealization simulate_strong(const ModelSpec& model, const Segment& x, double horizon,
                                const NoiseStream& stream) {
  PathRealization path;
  CoefficientWorkspace ws(model.dim);
  simulate_strong_into(path, model, x, horizon, stream, ws);
  return path;
}

void simulate_step_method_into(PathRealization& path, const ModelSpec& model, const Segment& x,
                               double horizon, const NoiseStream& stream,
                               CoefficientWorkspace& ws) {
  if (!model.pure_delay) {
    throw CapabilityError("model '" + model.name +
                          "' is not of pure-delay form; the step method does not apply");
  }
  prepare(path, model, x, horizon, stream_increments(x, horizon, stream, model.dim));
  path.seed = stream.seed();
  path.replica = stream.replica();
  const int steps = path.grid.horizon_steps();
  const int block = path.grid.delay_steps();
  // Each block [k r, (k+1) r] only reads values from the previous block, so
  // advancing block by block constructs the solution recursively.
  for (int start = 0; start < steps; start += block) {
    const int end = std::min(steps, start + block);
    for (int k = start; k < end; ++k) euler_step(path, model, k, ws);
  }
}

PathRealization simulate_step_method(const ModelSpec& model, const Segment& x, double horizon,
                                     const NoiseStream& stream) {
  PathRealization path;
  CoefficientWorkspace ws(model.dim);
  simulate_step_method_into(path, model, x, horizon, stream, ws);
  return path;
}

CoupledPair simulate_coupled(const ModelSpec& model, const Segment& x, const Segment& y,
                             double horizon, const NoiseStream& stream) {
  if (x.dim() != y.dim() || x.steps() != y.steps() || x.dt() != y.dt()) {
    throw RangeError("coupled simulation needs both segments on one grid");
  }
  CoupledPair pair;
  CoefficientWorkspace ws(model.dim);
  simulate_strong_into(pair.first, model, x, horizon, stream, ws);
  simulate_strong_into(pair.second, model, y, horizon, stream, ws);
  return pair;
}

}  // namespace sddesim
