// SPDX-License-Identifier: Apache-2.0
//
// Weak solutions of the drifted delay equation realized by reweighting
// drift-free paths with the explicit exponential density
//
//   D(t) = exp( int_0^t a(s)^T dW(s) - 1/2 int_0^t |a(s)|^2 ds ),
//   a(t) = sigma(t, M(t))^{-1} [ B(t, M_t) + b(t, M(t)) ].
//
// All weight arithmetic stays in the log domain; a(t_k) is evaluated at the
// left endpoint against the recorded increment dW_k, matching the Ito
// integral in the density.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sddesim/driftfree.hpp"
#include "sddesim/grid.hpp"
#include "sddesim/model.hpp"

namespace sddesim {

// Running log density and quadratic variation along one path; node k holds
// the state at time k * dt on [0, T], so log_weight[0] == 0.
struct LogWeightSeries {
  double dt = 0.0;
  std::vector<double> log_weight;
  std::vector<double> quad_variation;  // int_0^t |a|^2 ds, nondecreasing

  double log_weight_at(double t) const;
  double weight_at(double t) const { return std::exp(log_weight_at(t)); }
  double quad_variation_at(double t) const;
};

// Solves sigma(t, M(t)) a = B(t, M_t) + b(t, M(t)) on the trailing segment
// of the path at grid time t. Throws DegeneracyError when sigma is
// numerically singular (ellipticity violated beyond conditioning 1e12).
Vec drift_adjustment(const ModelSpec& model, const PathRealization& path, double t);

LogWeightSeries accumulate_log_weight(const ModelSpec& model, const PathRealization& path);

// Buffer-reusing form for Monte Carlo loops.
void accumulate_log_weight_into(LogWeightSeries& series, const ModelSpec& model,
                                const PathRealization& path, CoefficientWorkspace& ws);

struct WeightedEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  double mean_weight = 0.0;
  double mean_weight_std_error = 0.0;
  double ess = 0.0;
  bool low_ess_warning = false;
  std::size_t replicas = 0;
};

struct WeakExpectationOptions {
  bool self_normalized = false;   // raw weights by default: E D = 1 is the invariant
  double ess_floor_fraction = 0.01;  // warn below replicas / 100
  int workers = 0;
};

// Importance-weighted estimate of E f(X_t) over N fresh drift-free replicas:
// (1/N) sum_i D_i(t) f(M_i segment at t).
WeightedEstimate weak_expectation(const ModelSpec& model, const Segment& x,
                                  const std::function<double(const SegmentView&)>& f, double t,
                                  std::size_t replicas, std::uint64_t seed,
                                  const WeakExpectationOptions& options = {});

struct WeightDiagnostics {
  double mean_weight = 0.0;
  double mean_weight_std_error = 0.0;
  double ess = 0.0;
  double novikov_estimate = 0.0;  // E exp(1/2 int |a|^2 ds)
  double novikov_std_error = 0.0;
};

WeightDiagnostics weight_diagnostics(std::span<const LogWeightSeries> series, double t);

}  // namespace sddesim
