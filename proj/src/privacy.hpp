// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <utility>
#include <vector>

#include "engine.hpp"

namespace dpmsr {

/// Inputs of the closed-form privacy budget.
struct PrivacyParams {
  double delta = 0.0;     // adjacency bound on the one differing initial state
  double deltaBar = 1.0;  // attack-shift envelope scale (>= 1)
  double lambda = 0.0;    // attack-shift decay, must stay below q
  int f = 0;
  int dMaxOut = 0;        // maximum out-degree in the network
  double c = 1.0;
  double q = 0.75;
  /// Degenerate non-omniscient reading: faulty agents cannot adapt their
  /// attack to the initial conditions, so their term vanishes.
  bool nonOmniscient = false;
};

/// Fault-free privacy level: delta * 2q / (c (2q - 1)). Requires q > 1/2;
/// at q <= 1/2 the budget series diverges.
double epsilonFaultFree(const PrivacyParams& pp);

/// Privacy level with faulty agents using the matched Laplace schedule:
/// the fault-free level plus deltaBar * f * dMaxOut * q / (c (q - lambda)).
double epsilonWithFaults(const PrivacyParams& pp);

struct AccuracyParams {
  int n = 2;
  int f = 0;
  double c = 1.0;
  double q = 0.75;
  double minWeight = 0.5;  // min over honest agents of a_i
  double p = 0.5;          // accuracy confidence parameter, in (0,1)
};

struct VarianceBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Theoretical bounds on var(theta_inf):
///   lower = 2 c^2 minWeight^2 / (n (1 - q^2)),
///   upper = c^2 (n - f) / (2 (1 - q^2)).
VarianceBounds varianceBounds(const AccuracyParams& ap);

/// Chebyshev accuracy radius c * sqrt((n - f) / (2 p (1 - q^2))), i.e.
/// sqrt(upper bound / p). Requires p strictly inside (0,1).
double accuracyRadius(const AccuracyParams& ap);

/// Per-round noise shifts that couple two adjacent executions:
/// shift[h] = weightA^h * delta1 is subtracted from the differing agent's
/// noise, so both executions transmit identical messages.
std::vector<double> couplingShifts(double delta1, double weightA, int horizon);

struct CouplingResult {
  /// Max |x2 - x1| over every transmitted message of every round.
  double maxObservationDiscrepancy = 0.0;
  /// Whether every honest agent kept exactly the same senders each round.
  bool trimsEqual = true;
  /// Max error of the internal-state identity: theta2 - theta1 should be
  /// weightA^h * delta1 at the differing agent and 0 elsewhere.
  double maxStateIdentityError = 0.0;
};

/// Runs the two coupled executions of the privacy argument: execution 2
/// raises agent i0's initial state by delta1 and shifts its noise (and the
/// faulty noise, when an attack pair is given) so that observations match.
CouplingResult couplingTest(const SimConfig& cfg, int i0, double delta1,
                            const AdjacentAttackPair* pair = nullptr);

}  // namespace dpmsr
