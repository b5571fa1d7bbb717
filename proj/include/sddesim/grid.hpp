// SPDX-License-Identifier: Apache-2.0
//
// Path-segment state for delay equations: uniform time grids, segments over
// the delay window [-r, 0], and full path realizations on [-r, T].
#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "sddesim/errors.hpp"

namespace sddesim {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using ConstVecMap = Eigen::Map<const Eigen::VectorXd>;

// Uniform grid with step dt covering [-r, T]. dt must divide both r and T
// exactly (up to floating rounding); off-grid queries are errors, never
// interpolations.
class TimeGrid {
 public:
  TimeGrid(double delay, double horizon, double dt);

  double delay() const { return delay_; }
  double horizon() const { return horizon_; }
  double dt() const { return dt_; }
  int delay_steps() const { return delay_steps_; }
  int horizon_steps() const { return horizon_steps_; }
  int total_nodes() const { return delay_steps_ + horizon_steps_ + 1; }

  // Node index 0 is time -r; node delay_steps() is time 0.
  double time_of_node(int node) const { return (node - delay_steps_) * dt_; }

  // Inverse of time_of_node; throws RangeError if t is off-grid or outside
  // [-r, T].
  int node_of_time(double t) const;

  bool operator==(const TimeGrid&) const = default;

 private:
  double delay_;
  double horizon_;
  double dt_;
  int delay_steps_;
  int horizon_steps_;
};

// Non-owning window of (steps+1) grid nodes relabeled to [-delay, 0].
// Node values are dim-dimensional, stored node-major and contiguous.
struct SegmentView {
  const double* data = nullptr;
  int steps = 0;  // delay / dt
  int dim = 0;
  double dt = 0.0;

  int nodes() const { return steps + 1; }
  double delay() const { return steps * dt; }

  ConstVecMap node_value(int node) const {
    return ConstVecMap(data + static_cast<std::ptrdiff_t>(node) * dim, dim);
  }
  ConstVecMap head() const { return node_value(steps); }

  // Value at grid offset s in [-delay, 0]; throws RangeError off-grid.
  ConstVecMap at_offset(double s) const;
};

// Owning segment: the state of a delay equation, x in C([-r,0], R^d)
// sampled on grid nodes.
class Segment {
 public:
  Segment() = default;
  Segment(double delay, double dt, int dim, std::vector<double> values);

  // Copies the window out of a view.
  explicit Segment(const SegmentView& view);

  double delay() const { return delay_; }
  double dt() const { return dt_; }
  int dim() const { return dim_; }
  int steps() const { return steps_; }
  int nodes() const { return steps_ + 1; }

  ConstVecMap node_value(int node) const {
    return ConstVecMap(values_.data() + static_cast<std::ptrdiff_t>(node) * dim_, dim_);
  }
  ConstVecMap head() const { return node_value(steps_); }

  SegmentView view() const { return SegmentView{values_.data(), steps_, dim_, dt_}; }
  operator SegmentView() const { return view(); }

  const std::vector<double>& values() const { return values_; }

 private:
  double delay_ = 0.0;
  double dt_ = 0.0;
  int dim_ = 0;
  int steps_ = 0;
  std::vector<double> values_;
};

// One simulated trajectory on [-r, T] together with the Brownian increments
// that drove it. Immutable after construction by a solver.
struct PathRealization {
  TimeGrid grid{1.0, 0.0, 1.0};
  int dim = 0;
  std::vector<double> values;  // grid.total_nodes() * dim, node-major
  std::vector<double> noise;   // grid.horizon_steps() * dim, per-step increments
  std::uint64_t seed = 0;
  std::uint64_t replica = 0;

  ConstVecMap value_at_node(int node) const {
    return ConstVecMap(values.data() + static_cast<std::ptrdiff_t>(node) * dim, dim);
  }
  ConstVecMap value_at_time(double t) const { return value_at_node(grid.node_of_time(t)); }
  ConstVecMap increment(int step) const {
    return ConstVecMap(noise.data() + static_cast<std::ptrdiff_t>(step) * dim, dim);
  }
};

// Supremum over grid nodes of the Euclidean norm of the segment values.
double sup_norm(const SegmentView& seg);

// Sup-norm distance between two segments on the same grid shape.
double sup_distance(const SegmentView& a, const SegmentView& b);

// Trailing window [t - r, t] of a path, relabeled to [-r, 0]. Zero-copy.
SegmentView segment_at(const PathRealization& path, double t);

// Owning copy of segment_at.
Segment extract_segment(const PathRealization& path, double t);

// Segment constantly equal to v on the given delay window.
Segment embed_constant(const Vec& v, double delay, double dt);
Segment embed_constant(double v, double delay, double dt);

}  // namespace sddesim
