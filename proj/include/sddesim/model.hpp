// SPDX-License-Identifier: Apache-2.0
//
// Coefficient catalog for the delay equation
//
//   dX(t) = B(t, X_t) dt + b(t, X(t)) dt + sigma(t, X(t)) dW(t)
//
// together with sampled validation of the structural hypotheses: uniform
// ellipticity and spatial Lipschitz continuity of sigma, growth control of
// the delay drift B, and the mixed-integrability exponent gate
// d/p + 2/q < 1 for the singular drift b.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sddesim/grid.hpp"
#include "sddesim/rng.hpp"

namespace sddesim {

// Coefficients write into caller-owned outputs; solvers keep one workspace
// per worker so stepping allocates nothing.
using DelayDriftFn = std::function<void(double t, const SegmentView& seg, Eigen::Ref<Vec> out)>;
using PointDriftFn =
    std::function<void(double t, const Eigen::Ref<const Vec>& y, Eigen::Ref<Vec> out)>;
using DiffusionFn =
    std::function<void(double t, const Eigen::Ref<const Vec>& y, Eigen::Ref<Mat> out)>;
using DelayDiffusionFn =
    std::function<void(double t, const SegmentView& seg, Eigen::Ref<Mat> out)>;
using GrowthFn = std::function<double(double)>;

// Which structural hypotheses a model claims to satisfy. Violated clauses
// are part of a model's identity (the catalog deliberately ships
// counterexamples), so validation only checks the claimed ones.
struct ConditionProfile {
  bool exponent_gate = false;     // d/p + 2/q < 1 declared for b
  bool sigma_bounds = true;       // C^-1 I <= sigma sigma^T <= C I
  bool sigma_lipschitz = true;    // ||sigma(x)-sigma(y)||_HS <= C |x-y|
  bool delay_growth = true;       // |B(t,x)| <= g(||x||_inf)
  bool delay_sublinear = true;    // g(R)/R -> 0
  bool delay_continuity = true;   // x -> B(t,x) continuous on [0, r]
  bool delay_lipschitz = false;   // |B(t,x)-B(t,y)| <= C_B ||x-y||_inf
};

struct ModelSpec {
  std::string name;
  int dim = 1;

  DelayDriftFn delay_drift;          // B; empty means 0
  PointDriftFn point_drift;          // b; empty means 0
  DiffusionFn diffusion;             // sigma(t, X(t)); empty means identity
  DelayDiffusionFn delay_diffusion;  // lag-dependent sigma; step-method only

  double sigma_bound = 1.0;                 // C_sigma, >= 1 by convention
  std::optional<double> delay_lipschitz;    // C_B when claimed
  GrowthFn growth;                          // g_T bounding |B|
  std::optional<double> exponent_p;
  std::optional<double> exponent_q;
  double drift_cap = 1e6;  // componentwise clamp applied to b

  bool pure_delay = false;  // past enters only through lag exactly r
  ConditionProfile profile;

  bool has_delay_drift() const { return static_cast<bool>(delay_drift); }
  bool has_point_drift() const { return static_cast<bool>(point_drift); }
  bool has_delay_diffusion() const { return static_cast<bool>(delay_diffusion); }
  // Strong-solution capability: Lipschitz delay drift or pure-delay recursion.
  bool strong_solvable() const { return profile.delay_lipschitz || !has_delay_drift() || pure_delay; }
};

// Per-worker evaluation scratch. clamp_count tallies how often the drift cap
// was active; merge tallies at reduction time.
struct CoefficientWorkspace {
  Vec delay_drift;
  Vec point_drift;
  Mat diffusion;
  long clamp_count = 0;

  explicit CoefficientWorkspace(int dim = 1)
      : delay_drift(Vec::Zero(dim)), point_drift(Vec::Zero(dim)), diffusion(Mat::Identity(dim, dim)) {}
};

// Evaluates (B, b, sigma) at time t on the trailing segment seg. B sees the
// whole segment; b and sigma see the head seg(0) (or the segment, for
// delay-diffusion models). b is clamped componentwise at drift_cap. Throws
// ModelEvalError naming the coefficient if an output is non-finite.
void eval_coefficients(const ModelSpec& model, double t, const SegmentView& seg,
                       CoefficientWorkspace& ws);

struct ConditionCheck {
  std::string condition;
  bool claimed = false;
  bool checked = false;
  bool passed = true;
  double witnessed_constant = 0.0;
  std::string witness;  // a concrete sample point when the check failed
};

struct ConditionReport {
  std::string model;
  std::size_t samples = 0;
  std::vector<ConditionCheck> checks;

  bool all_claimed_pass() const {
    for (const auto& c : checks) {
      if (c.claimed && c.checked && !c.passed) return false;
    }
    return true;
  }
};

// Samples n (t, x, y) triples and verifies every claimed condition:
// eigenvalue bounds of sigma sigma^T and the Hilbert-Schmidt Lipschitz
// ratio against sigma_bound, |B| against growth(||x||_inf), decay of
// growth(R)/R on a geometric R grid, and the exponent arithmetic.
ConditionReport validate_conditions(const ModelSpec& model, double delay, double dt,
                                    std::size_t samples, std::uint64_t seed);

// Smallest grid-witnessed K with growth(R) <= alpha * R + K over a geometric
// R grid up to r_max; monotone nonincreasing in alpha.
double sublinear_decomposition(const ModelSpec& model, double alpha, double r_max = 1e6);

namespace catalog {

// Named models shipped with the library. The parameter set is per model:
//   brownian            B=0, b=0, sigma=I           (dim)
//   constant-drift      b = c, sigma=I              (c)
//   linear-delay        B(t,x) = a * x(-r), sigma=I (a)
//   ou                  b = -theta * y, sigma=I     (theta)
//   sgn-delay-drift     B = sgn(x(-r)), sigma=I, sgn(0)=+1
//   sgn-delay-diffusion sigma = sgn(x(-r)), B=b=0
//   power-singularity   b(y) = |y|^-beta 1{|y|<=1}, sigma=I (beta, p, q);
//                       integrability needs beta * p < dim
ModelSpec make(const std::string& name);
ModelSpec make(const std::string& name, const std::function<double(const std::string&, double)>& param);

std::vector<std::string> names();

}  // namespace catalog

}  // namespace sddesim
