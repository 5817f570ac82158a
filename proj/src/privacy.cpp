// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "privacy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "textio.hpp"

namespace dpmsr {

namespace {

void checkSchedule(double c, double q) {
  if (!(c > 0.0)) throw std::invalid_argument("c must be positive");
  if (!(q > 0.5)) {
    throw std::invalid_argument("q must exceed 1/2; the privacy budget diverges at q=" +
                                formatDouble(q));
  }
  if (!(q < 1.0)) throw std::invalid_argument("q must be below 1");
}

}  // namespace

double epsilonFaultFree(const PrivacyParams& pp) {
  checkSchedule(pp.c, pp.q);
  if (pp.delta < 0.0) throw std::invalid_argument("adjacency bound must be >= 0");
  return pp.delta * 2.0 * pp.q / (pp.c * (2.0 * pp.q - 1.0));
}

double epsilonWithFaults(const PrivacyParams& pp) {
  const double base = epsilonFaultFree(pp);
  if (pp.f < 0 || pp.dMaxOut < 0) {
    throw std::invalid_argument("f and the max out-degree must be >= 0");
  }
  if (pp.nonOmniscient || pp.f == 0) return base;
  if (!(pp.deltaBar >= 1.0)) {
    throw std::invalid_argument("attack-shift scale must be >= 1 (or use the "
                                "non-omniscient flag)");
  }
  if (pp.lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
  if (!(pp.lambda < pp.q)) {
    throw std::invalid_argument("lambda must be below q; the faulty budget term "
                                "diverges at lambda=" + formatDouble(pp.lambda));
  }
  return base + pp.deltaBar * pp.f * pp.dMaxOut * pp.q / (pp.c * (pp.q - pp.lambda));
}

VarianceBounds varianceBounds(const AccuracyParams& ap) {
  checkSchedule(ap.c, ap.q);
  if (ap.n <= ap.f || ap.f < 0) throw std::invalid_argument("need n > f >= 0");
  if (!(ap.minWeight > 0.0) || !(ap.minWeight < 0.5)) {
    throw std::invalid_argument("min weight must lie in (0, 1/2)");
  }
  const double oneMinusQ2 = 1.0 - ap.q * ap.q;
  VarianceBounds vb;
  vb.lower = 2.0 * ap.c * ap.c * ap.minWeight * ap.minWeight / (ap.n * oneMinusQ2);
  vb.upper = ap.c * ap.c * (ap.n - ap.f) / (2.0 * oneMinusQ2);
  return vb;
}

double accuracyRadius(const AccuracyParams& ap) {
  checkSchedule(ap.c, ap.q);
  if (ap.n <= ap.f || ap.f < 0) throw std::invalid_argument("need n > f >= 0");
  if (!(ap.p > 0.0) || !(ap.p < 1.0)) {
    throw std::invalid_argument("p must lie strictly in (0,1), got " + formatDouble(ap.p));
  }
  return ap.c * std::sqrt((ap.n - ap.f) / (2.0 * ap.p * (1.0 - ap.q * ap.q)));
}

std::vector<double> couplingShifts(double delta1, double weightA, int horizon) {
  if (delta1 < 0.0) throw std::invalid_argument("delta1 must be >= 0");
  if (!(weightA > 0.0) || !(weightA < 1.0)) {
    throw std::invalid_argument("agent weight must lie in (0,1)");
  }
  if (horizon < 0) throw std::invalid_argument("horizon must be >= 0");
  std::vector<double> shifts(horizon + 1);
  double power = 1.0;
  for (int h = 0; h <= horizon; ++h) {
    shifts[h] = power * delta1;
    power *= weightA;
  }
  return shifts;
}

CouplingResult couplingTest(const SimConfig& cfg, int i0, double delta1,
                            const AdjacentAttackPair* pair) {
  validateConfig(cfg);
  if (delta1 < 0.0) throw std::invalid_argument("delta1 must be >= 0");

  RunResult first = run(cfg);
  const Trace& t1 = first.trace;
  const int h0 = t1.honestIndexOf(i0);  // throws when i0 is faulty
  const double a0 =
      1.0 / static_cast<double>(cfg.graph.inDegree(i0) - 2 * cfg.f + 1);
  const int K = cfg.rounds;

  // Execution 2: shifted initial state, coupled noise realization.
  SimConfig cfg2 = cfg;
  cfg2.theta0[h0] += delta1;
  const std::vector<double> shifts = couplingShifts(delta1, a0, K);
  std::vector<std::vector<double>> honestNoise2 = t1.honestNoise;
  for (int k = 0; k < K; ++k) honestNoise2[k][h0] -= shifts[k];
  std::vector<std::vector<std::vector<double>>> faultyNoise2 = t1.faultyNoise;
  if (pair) {
    // Attack-pair shift: deterministic part up, noise down, per edge.
    // Trace indices follow ascending faulty node ids.
    std::vector<FaultySpec*> byNode;
    for (auto& s : cfg2.faulty) byNode.push_back(&s);
    std::sort(byNode.begin(), byNode.end(),
              [](const FaultySpec* x, const FaultySpec* y) { return x->node < y->node; });
    for (size_t fi = 0; fi < byNode.size(); ++fi) {
      auto out = cfg.graph.outNeighbors(byNode[fi]->node);
      byNode[fi]->attackShift = [pair](int victim, int k) {
        return pair->deltaAt(victim, k);
      };
      for (int k = 0; k < K; ++k) {
        for (int slot = 0; slot < static_cast<int>(out.size()); ++slot) {
          faultyNoise2[k][fi][slot] -= pair->deltaAt(out[slot], k);
        }
      }
    }
  }
  ReplayNoiseSource noise2(std::move(honestNoise2), std::move(faultyNoise2));
  RunResult second = runWithNoise(cfg2, noise2);
  const Trace& t2 = second.trace;

  CouplingResult result;
  for (int k = 0; k < K; ++k) {
    for (size_t h = 0; h < t1.honestMessage[k].size(); ++h) {
      result.maxObservationDiscrepancy =
          std::max(result.maxObservationDiscrepancy,
                   std::abs(t2.honestMessage[k][h] - t1.honestMessage[k][h]));
    }
    for (size_t fi = 0; fi < t1.faultyMessage[k].size(); ++fi) {
      for (size_t slot = 0; slot < t1.faultyMessage[k][fi].size(); ++slot) {
        result.maxObservationDiscrepancy =
            std::max(result.maxObservationDiscrepancy,
                     std::abs(t2.faultyMessage[k][fi][slot] -
                              t1.faultyMessage[k][fi][slot]));
      }
    }
    for (size_t h = 0; h < t1.trims[k].size(); ++h) {
      if (t1.trims[k][h].kept != t2.trims[k][h].kept ||
          t1.trims[k][h].removedLow != t2.trims[k][h].removedLow ||
          t1.trims[k][h].removedHigh != t2.trims[k][h].removedHigh) {
        result.trimsEqual = false;
      }
    }
  }
  for (int k = 0; k <= K; ++k) {
    for (size_t h = 0; h < t1.theta[k].size(); ++h) {
      const double want = (static_cast<int>(h) == h0) ? shifts[k] : 0.0;
      result.maxStateIdentityError =
          std::max(result.maxStateIdentityError,
                   std::abs((t2.theta[k][h] - t1.theta[k][h]) - want));
    }
  }
  return result;
}

}  // namespace dpmsr
