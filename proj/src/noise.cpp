// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "noise.hpp"

#include <cmath>
#include <stdexcept>

#include "textio.hpp"

namespace dpmsr {

LaplaceSchedule::LaplaceSchedule(double c, double q) : c_(c), q_(q) {
  if (!(c > 0.0)) {
    throw std::invalid_argument("noise scale c must be positive, got " + formatDouble(c));
  }
  if (!(q > 0.5) || !(q < 1.0)) {
    throw std::invalid_argument("noise decay q must lie in (1/2, 1), got " + formatDouble(q));
  }
}

double LaplaceSchedule::scaleAt(int k) const {
  if (k < 0) throw std::invalid_argument("round index must be non-negative");
  return c_ * std::pow(q_, k);
}

double LaplaceSchedule::varianceAt(int k) const {
  double b = scaleAt(k);
  return 2.0 * b * b;
}

double laplaceInverseCdf(double u, double b) {
  if (!(u > 0.0) || !(u < 1.0)) {
    throw std::invalid_argument("uniform draw must lie strictly in (0,1)");
  }
  if (u < 0.5) return b * std::log(2.0 * u);
  return -b * std::log(2.0 * (1.0 - u));
}

double sampleLaplace(const LaplaceSchedule& s, int k, RngStream& rng) {
  return laplaceInverseCdf(rng.nextUniform(), s.scaleAt(k));
}

}  // namespace dpmsr
