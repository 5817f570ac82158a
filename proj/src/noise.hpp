// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include "rng.hpp"

namespace dpmsr {

/// Geometrically decaying Laplace noise law b(k) = c * q^k.
///
/// Requires c > 0 and 1/2 < q < 1: below q = 1/2 the privacy budget series
/// diverges, and q >= 1 breaks summability of the per-round variances.
class LaplaceSchedule {
 public:
  LaplaceSchedule(double c, double q);

  double c() const { return c_; }
  double q() const { return q_; }

  /// b(k) = c * q^k, strictly decreasing in k.
  double scaleAt(int k) const;

  /// Var of Lap(b(k)) = 2 b(k)^2.
  double varianceAt(int k) const;

 private:
  double c_;
  double q_;
};

/// Laplace(0, b) quantile function. u must lie in (0,1); u = 1/2 maps to 0.
double laplaceInverseCdf(double u, double b);

/// One draw from Lap(b(k)) by inverse CDF; consumes exactly one uniform.
double sampleLaplace(const LaplaceSchedule& s, int k, RngStream& rng);

}  // namespace dpmsr
