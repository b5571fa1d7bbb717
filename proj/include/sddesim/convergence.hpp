// SPDX-License-Identifier: Apache-2.0
//
// Brute-force checking of convergence-mode relations on finite probability
// spaces. A FiniteInstance carries a finite sample space with a possibly
// coarse sigma-algebra (given as a partition into atoms), a finite value
// space with pseudometrics and/or an explicit topology, a limit variable X
// and an eventually-constant sequence X_k. Three modes are decided exactly:
//
//   1a  convergence in outer probability under every pseudometric,
//   1b  pointwise convergence of the laws on every open set,
//   2   L1 convergence of f(X_k) to f(X) for every bounded measurable f.
//
// On instances whose topology is generated by the pseudometrics, (1a and 1b)
// is equivalent to 2; the oracle sweeps instance families asserting exactly
// that. Instances may override the topology to model value spaces whose
// Borel structure is finer than the gauge topology; the equivalence claim is
// not asserted for those.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sddesim/errors.hpp"

namespace sddesim {

// Subsets of the sample or value space as bitmasks; both spaces are capped
// at a handful of points.
using SetMask = std::uint32_t;

struct FiniteInstance {
  // Sample space: point weights summing to 1 and a partition into atoms
  // (atom ids, contiguous from 0); the sigma-algebra is the set of atom
  // unions.
  std::vector<double> weights;
  std::vector<int> atom_of;

  // Value space: point count, pseudometric tables (row-major point_count^2),
  // and an optional explicit topology as a list of open-set masks. When
  // empty, the topology is generated by the pseudometrics.
  int point_count = 0;
  std::vector<std::vector<double>> pseudometrics;
  std::vector<SetMask> explicit_topology;

  // Limit variable, finite prefix, and the tail value map that every X_k
  // with k > prefix.size() equals. The eventual constancy is structural, so
  // every limit below is exactly computable.
  std::vector<int> limit;
  std::vector<std::vector<int>> prefix;
  std::vector<int> tail;

  int omega_size() const { return static_cast<int>(weights.size()); }

  // Checks all structural invariants (weights, metric axioms, topology
  // closure, map measurability). Throws InputError when violated.
  void validate() const;

  // Open sets actually in force: explicit_topology if given, otherwise
  // generated from the pseudometrics.
  std::vector<SetMask> topology() const;

  // Sigma-algebra generated by the topology on the value space.
  std::vector<SetMask> borel_sets() const;

  std::uint64_t content_hash() const;
  std::string describe() const;
};

// Outer measure P*(A) = min{ P(B) : A subset of B, B measurable }, computed
// by enumerating the sigma-algebra. A need not be measurable.
double outer_measure(const FiniteInstance& instance, SetMask subset);

struct ModeVerdict {
  bool outer_probability = false;  // 1a
  bool laws_on_opens = false;      // 1b
  bool l1_bounded = false;         // 2
  std::string witness_1a;
  std::string witness_1b;
  std::string witness_2;
  double witness_value = 0.0;  // max E|f(X) - f(X_k)| over failing indicators
};

ModeVerdict check_modes(const FiniteInstance& instance);

struct OracleViolation {
  std::uint64_t instance_hash = 0;
  std::string description;
  ModeVerdict verdict;
};

struct OracleReport {
  std::size_t instances_checked = 0;
  std::size_t violations = 0;
  std::vector<OracleViolation> details;
};

// Exhaustively sweeps instances with |Omega| <= max_omega (<= 3),
// |E| <= max_points (<= 3), weights from the given rational grid, canonical
// pseudometric families, all measurable limit/tail maps, and prefix lengths
// 0..max_prefix, asserting (1a and 1b) <=> 2 on each.
OracleReport equivalence_oracle_exhaustive(int max_omega, int max_points,
                                           const std::vector<double>& weight_grid, int max_prefix);

// Randomized sweep over |Omega| <= 4, |E| <= 3 with random gauge structures;
// budget counts valid generated instances.
OracleReport equivalence_oracle_randomized(std::size_t budget, std::uint64_t seed);

// Hand-built discrete instances mirroring the two classical separating
// examples: a deterministic sequence converging in (pseudo)metric whose
// laws do not converge on opens, and a mirrored symmetric variable whose
// laws agree while the paths never converge.
FiniteInstance example_deterministic_sequence();
FiniteInstance example_mirrored_sign();

// Condition 2 recomputed by enumerating every 0/1-valued measurable function
// instead of the subset criterion; the two routes must agree (test support).
bool detail_l1_by_function_enumeration(const FiniteInstance& instance);

}  // namespace sddesim
