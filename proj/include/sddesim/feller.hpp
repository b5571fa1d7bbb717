// SPDX-License-Identifier: Apache-2.0
//
// Empirical probes of the two continuity conclusions for the segment-valued
// solution map: the strong Feller gap |E f(X^y_t) - E f(X^x_t)| and the
// coupled gap E|f(X^y_t) - f(X^x_t)|, over a battery of bounded measurable
// test functionals, plus the pathwise stability exponent and distribution
// distances.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sddesim/grid.hpp"
#include "sddesim/model.hpp"

namespace sddesim {

struct TestFunction {
  std::string name;
  std::function<double(const SegmentView&)> fn;  // must map into [-1, 1]
};

using TestBattery = std::vector<TestFunction>;

// Coordinate indicators at the head and at lag -r, tanh probes, and a
// sup-norm indicator; chosen to include the sign events that separate the
// catalog counterexamples. Every member is bounded by 1.
TestBattery standard_battery();

// Named selections: "standard" (all), "indicators", "probes".
TestBattery select_battery(const std::string& name);

enum class GapBackend { kGirsanov, kDirect };

struct BatteryEstimate {
  std::string function;
  double estimate = 0.0;
  double std_error = 0.0;
};

// Per test function estimates of E f(X_t) from one initial segment.
std::vector<BatteryEstimate> battery_estimates(const ModelSpec& model, const Segment& x,
                                               const TestBattery& battery, double t,
                                               std::size_t replicas, std::uint64_t seed,
                                               GapBackend backend, int workers = 0);

struct GapRow {
  std::string function;
  double delta = 0.0;          // ||y - x||_inf
  double base = 0.0;           // estimate at x
  double perturbed = 0.0;      // estimate at y
  double gap = 0.0;            // strong-Feller: |perturbed - base|; coupled: E|f - f|
  double std_error = 0.0;      // combined as if independent; common random
                               // numbers usually make the realized noise smaller
};

struct GapReport {
  std::string model;
  double t = 0.0;
  std::string backend;
  std::size_t replicas = 0;
  std::uint64_t seed = 0;
  bool below_delay_warning = false;  // t <= r: smoothing has not yet covered the segment
  std::vector<GapRow> rows;          // battery x perturbation grid, f-major
};

// Gap between weighted (or direct Monte Carlo) estimates at each y and at x,
// with common random numbers across the perturbation grid.
GapReport strong_feller_gap(const ModelSpec& model, const Segment& x,
                            std::span<const Segment> ys, const TestBattery& battery, double t,
                            std::size_t replicas, std::uint64_t seed, GapBackend backend,
                            int workers = 0);

// Coupled gap E|f(X^y_t) - f(X^x_t)| under shared noise; needs a
// strong-solvable model.
GapReport improved_feller_gap(const ModelSpec& model, const Segment& x,
                              std::span<const Segment> ys, const TestBattery& battery, double t,
                              std::size_t replicas, std::uint64_t seed, int workers = 0);

struct StabilityPoint {
  double delta = 0.0;
  double moment = 0.0;  // E ||X^x_t - X^{x+delta}_t||_inf^gamma
  double std_error = 0.0;
};

struct StabilityFit {
  double slope = 0.0;  // log-log regression of moment against delta^gamma
  double intercept = 0.0;
  double slope_std_error = 0.0;
  std::vector<StabilityPoint> points;
};

// Coupled perturbation study: fits log E||X^x_t - X^{x+delta}_t||^gamma
// against log delta^gamma; slope 1 matches the Lipschitz-in-initial-data
// moment bound. Zero deltas are excluded from the regression.
StabilityFit stability_exponent(const ModelSpec& model, const Segment& x,
                                std::span<const double> deltas, double gamma, double t,
                                std::size_t replicas, std::uint64_t seed, int workers = 0);

enum class LawDistanceMode { kKolmogorovSmirnov, kBinnedTotalVariation };

double law_distance(std::span<const double> a, std::span<const double> b, LawDistanceMode mode);

}  // namespace sddesim
