// SPDX-License-Identifier: Apache-2.0
#include "sddesim/grid.hpp"

#include <cmath>
#include <string>

namespace sddesim {

namespace {

// Rounds ratio/step to the nearest integer; fails unless the ratio is an
// integer up to floating rounding.
int exact_steps(double whole, double step, const char* what) {
  const double ratio = whole / step;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, std::abs(ratio))) {
    throw RangeError(std::string(what) + " is not an integer multiple of dt");
  }
  return static_cast<int>(rounded);
}

}  // namespace

TimeGrid::TimeGrid(double delay, double horizon, double dt)
    : delay_(delay), horizon_(horizon), dt_(dt) {
  if (!(dt > 0.0)) throw RangeError("dt must be positive");
  if (!(delay > 0.0)) throw RangeError("delay must be positive");
  if (horizon < 0.0) throw RangeError("horizon must be nonnegative");
  delay_steps_ = exact_steps(delay, dt, "delay");
  horizon_steps_ = exact_steps(horizon, dt, "horizon");
  if (delay_steps_ < 1) throw RangeError("delay must span at least one step");
}

int TimeGrid::node_of_time(double t) const {
  const double position = (t + delay_) / dt_;
  const double rounded = std::round(position);
  if (std::abs(position - rounded) > 1e-9 * std::max(1.0, std::abs(position))) {
    throw RangeError("time " + std::to_string(t) + " is off-grid");
  }
  const int node = static_cast<int>(rounded);
  if (node < 0 || node >= total_nodes()) {
    throw RangeError("time " + std::to_string(t) + " outside [-delay, horizon]");
  }
  return node;
}

ConstVecMap SegmentView::at_offset(double s) const {
  const double position = (s + delay()) / dt;
  const double rounded = std::round(position);
  if (std::abs(position - rounded) > 1e-9 * std::max(1.0, std::abs(position))) {
    throw RangeError("segment offset " + std::to_string(s) + " is off-grid");
  }
  const int node = static_cast<int>(rounded);
  if (node < 0 || node > steps) {
    throw RangeError("segment offset " + std::to_string(s) + " outside [-delay, 0]");
  }
  return node_value(node);
}

Segment::Segment(double delay, double dt, int dim, std::vector<double> values)
    : delay_(delay), dt_(dt), dim_(dim), values_(std::move(values)) {
  if (dim < 1) throw RangeError("segment dimension must be >= 1");
  steps_ = [&] {
    const double ratio = delay / dt;
    const double rounded = std::round(ratio);
    if (!(dt > 0.0) || !(delay > 0.0) ||
        std::abs(ratio - rounded) > 1e-9 * std::max(1.0, std::abs(ratio))) {
      throw RangeError("segment delay must be a positive multiple of dt");
    }
    return static_cast<int>(rounded);
  }();
  if (static_cast<int>(values_.size()) != (steps_ + 1) * dim_) {
    throw RangeError("segment value count does not match grid");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw RangeError("segment values must be finite");
  }
}

Segment::Segment(const SegmentView& view)
    : Segment(view.delay(), view.dt, view.dim,
              std::vector<double>(view.data,
                                  view.data + static_cast<std::size_t>(view.nodes()) * view.dim)) {}

double sup_norm(const SegmentView& seg) {
  double best = 0.0;
  for (int node = 0; node <= seg.steps; ++node) {
    best = std::max(best, seg.node_value(node).norm());
  }
  return best;
}

double sup_distance(const SegmentView& a, const SegmentView& b) {
  if (a.steps != b.steps || a.dim != b.dim) {
    throw RangeError("segments live on different grids");
  }
  double best = 0.0;
  for (int node = 0; node <= a.steps; ++node) {
    best = std::max(best, (a.node_value(node) - b.node_value(node)).norm());
  }
  return best;
}

SegmentView segment_at(const PathRealization& path, double t) {
  if (t < -1e-12 || t > path.grid.horizon() * (1.0 + 1e-12) + 1e-12) {
    throw RangeError("segment time must lie in [0, horizon]");
  }
  const int node = path.grid.node_of_time(t);
  const int start = node - path.grid.delay_steps();
  if (start < 0) throw RangeError("segment window reaches before -delay");
  return SegmentView{path.values.data() + static_cast<std::ptrdiff_t>(start) * path.dim,
                     path.grid.delay_steps(), path.dim, path.grid.dt()};
}

Segment extract_segment(const PathRealization& path, double t) {
  return Segment(segment_at(path, t));
}

Segment embed_constant(const Vec& v, double delay, double dt) {
  for (int i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) throw RangeError("embedded constant must be finite");
  }
  const int dim = static_cast<int>(v.size());
  const int steps = TimeGrid(delay, 0.0, dt).delay_steps();
  std::vector<double> values(static_cast<std::size_t>(steps + 1) * dim);
  for (int node = 0; node <= steps; ++node) {
    for (int c = 0; c < dim; ++c) values[static_cast<std::size_t>(node) * dim + c] = v[c];
  }
  return Segment(delay, dt, dim, std::move(values));
}

Segment embed_constant(double v, double delay, double dt) {
  Vec vec(1);
  vec[0] = v;
  return embed_constant(vec, delay, dt);
}

}  // namespace sddesim
