// SPDX-License-Identifier: Apache-2.0
//
// Strong-solution simulation of the full delay equation: an Euler scheme for
// Lipschitz delay drifts, and the recursive block construction for
// pure-delay models whose coefficients read the past only at lag exactly r.
// Also the coupled two-path simulator used for gap and stability studies.
#pragma once

#include <cstdint>

#include "sddesim/grid.hpp"
#include "sddesim/model.hpp"
#include "sddesim/rng.hpp"

namespace sddesim {

// Euler path X(t+dt) = X(t) + [B(t, X_t) + b(t, X(t))] dt + sigma dW, with B
// evaluated on the trailing segment. Requires a Lipschitz delay drift or a
// pure-delay model; throws CapabilityError otherwise. For singular (non
// Lipschitz) point drifts the scheme carries no convergence guarantee and
// results should be treated as heuristic cross-checks.
PathRealization simulate_strong(const ModelSpec& model, const Segment& x, double horizon,
                                const NoiseStream& stream);

void simulate_strong_into(PathRealization& path, const ModelSpec& model, const Segment& x,
                          double horizon, const NoiseStream& stream, CoefficientWorkspace& ws);

// Euler scheme driven by caller-supplied increments (horizon_steps * dim,
// step-major); the counterpart of simulate_driftfree_from for refinement
// studies under a common Brownian path.
void simulate_strong_from(PathRealization& path, const ModelSpec& model, const Segment& x,
                          double horizon, std::vector<double> increments,
                          CoefficientWorkspace& ws);

// Recursive block construction: on each window [k r, (k+1) r] the
// coefficients are functions of the already-built past, so the window is a
// plain SDE integrated by Euler. Exact at grid resolution for models whose
// coefficients are piecewise constant in the lagged state (the sgn family).
// Requires pure-delay form.
PathRealization simulate_step_method(const ModelSpec& model, const Segment& x, double horizon,
                                     const NoiseStream& stream);

void simulate_step_method_into(PathRealization& path, const ModelSpec& model, const Segment& x,
                               double horizon, const NoiseStream& stream, CoefficientWorkspace& ws);

// Two paths driven by the identical increment record.
struct CoupledPair {
  PathRealization first;
  PathRealization second;

  // Sup distance of the trailing segments at grid time t.
  double segment_distance(double t) const {
    return sup_distance(segment_at(first, t), segment_at(second, t));
  }
};

CoupledPair simulate_coupled(const ModelSpec& model, const Segment& x, const Segment& y,
                             double horizon, const NoiseStream& stream);

}  // namespace sddesim
