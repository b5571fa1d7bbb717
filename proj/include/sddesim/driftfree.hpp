// SPDX-License-Identifier: Apache-2.0
//
// The drift-free diffusion dM(t) = sigma(t, M(t)) dW(t), M_0 = x, simulated
// by Euler-Maruyama, plus Monte Carlo checks of its a-priori moment bounds.
#pragma once

#include <cstdint>
#include <functional>

#include "sddesim/grid.hpp"
#include "sddesim/model.hpp"
#include "sddesim/rng.hpp"

namespace sddesim {

// Euler-Maruyama path of the drift-free equation on [0, T], history copied
// from x on [-r, 0]. The increment record is retained for reweighting.
// Deterministic in (model, x, T, stream).
PathRealization simulate_driftfree(const ModelSpec& model, const Segment& x, double horizon,
                                   const NoiseStream& stream);

// Same, but reuses the buffers of an existing path object; the hot loop of
// every Monte Carlo driver.
void simulate_driftfree_into(PathRealization& path, const ModelSpec& model, const Segment& x,
                             double horizon, const NoiseStream& stream, CoefficientWorkspace& ws);

// Drives the scheme with caller-supplied increments (horizon_steps * dim,
// step-major). Refinement studies sum fine increments into coarse blocks so
// every grid level shares one Brownian path.
void simulate_driftfree_from(PathRealization& path, const ModelSpec& model, const Segment& x,
                             double horizon, std::vector<double> increments,
                             CoefficientWorkspace& ws);

struct MomentBoundCheck {
  double alpha = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  double bound = 0.0;  // closed-form upper bound for E exp(alpha sup |M|^2)
  bool passed = false;  // estimate - 3 SE <= bound
};

// Closed-form bound 4 / sqrt(1 - 2 alpha d C T) * exp(alpha / (1 - 2 alpha d C T) |x0|^2),
// valid for 0 <= alpha < 1 / (2 d C T).
double exp_sup_moment_bound(double alpha, int dim, double sigma_bound, double horizon,
                            double head_norm);

// Monte Carlo estimate of E exp(alpha sup_{[0,T]} |M|^2) over fresh replicas,
// compared against the closed-form bound. The grid sup is a lower bound for
// the continuous sup, the conservative direction for an upper-bound check.
// Throws DomainError when alpha is at or above the admissible threshold.
MomentBoundCheck estimate_exp_sup_moment(const ModelSpec& model, const Segment& x, double horizon,
                                         double alpha, std::size_t replicas, std::uint64_t seed,
                                         int workers = 0);

struct TimeIntegralEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Monte Carlo mean of sum_k f(t_k, M(t_k)) dt over [0, T).
TimeIntegralEstimate estimate_time_integral(
    const ModelSpec& model, const Segment& x, double horizon,
    const std::function<double(double, const Eigen::Ref<const Vec>&)>& f, std::size_t replicas,
    std::uint64_t seed, int workers = 0);

struct OccupationSlope {
  double slope = 0.0;       // fitted estimate-vs-norm slope over the scaled family
  double max_estimate = 0.0;
};

// Scales f by each value in lambdas and fits estimate against lambda * f_norm;
// the slope must stay bounded uniformly over initial segments.
OccupationSlope time_integral_slope(const ModelSpec& model, const Segment& x, double horizon,
                                    const std::function<double(double, const Eigen::Ref<const Vec>&)>& f,
                                    double f_norm, const std::vector<double>& lambdas,
                                    std::size_t replicas, std::uint64_t seed, int workers = 0);

}  // namespace sddesim
