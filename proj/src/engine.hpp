// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "adversary.hpp"
#include "consensus.hpp"
#include "graph.hpp"
#include "noise.hpp"

namespace dpmsr {

/// One faulty agent of a simulation.
struct FaultySpec {
  int node = -1;
  FaultyBehavior behavior = FaultyBehavior::Malicious;
  Waveform waveform = Waveform::constant(0.0);
  /// Byzantine agents may override the waveform per out-neighbor.
  std::vector<std::pair<int, Waveform>> edgeWaveforms;
  std::optional<LaplaceSchedule> noise;
  StateAttack stateAttack;
  /// Additive deterministic shift per (victim, round); used by the privacy
  /// coupling harness to realize the second execution of an attack pair.
  std::function<double(int victim, int k)> attackShift;
};

struct SimConfig {
  Digraph graph;
  int f = 0;
  std::vector<FaultySpec> faulty;      // phi = faulty.size() <= f
  std::vector<double> theta0;          // per honest node, ascending node id
  LaplaceSchedule schedule{1.0, 0.75};
  int rounds = 0;                      // K
  uint64_t masterSeed = 0;
  bool zeroNoise = false;              // test mode: every noise draw is 0
};

/// Throws std::invalid_argument on any violated invariant (phi > f, bad
/// faulty nodes, theta0 size, honest in-degree < 2f+1).
void validateConfig(const SimConfig& cfg);

/// Exhaustive certificate when the graph fits the enumeration cap.
std::optional<RobustnessCertificate> tryCertify(const Digraph& g);

/// Human-readable warnings for unmet or unverifiable robustness
/// preconditions: convergence wants (2f+1)-robustness, the variance lower
/// bound wants (3f+1). Never throws; an empty result means both hold.
std::vector<std::string> robustnessWarnings(
    const SimConfig& cfg, const std::optional<RobustnessCertificate>& cert);

struct TrimRecord {
  std::vector<int> kept;         // sender ids, ascending (value, sender)
  std::vector<int> removedLow;
  std::vector<int> removedHigh;
};

/// Full execution record. Round k of the histories below uses the states
/// of round k; theta has rounds+1 entries, everything else rounds entries.
struct Trace {
  std::vector<int> honestNodes;  // ascending node ids
  std::vector<int> faultyNodes;
  std::vector<std::vector<double>> theta;           // [k][honest idx]
  std::vector<std::vector<double>> honestMessage;   // [k][honest idx]
  std::vector<std::vector<double>> honestNoise;
  std::vector<std::vector<std::vector<double>>> faultyMessage;        // [k][f idx][slot]
  std::vector<std::vector<std::vector<double>>> faultyNoise;
  std::vector<std::vector<std::vector<double>>> faultyDeterministic;
  std::vector<std::vector<TrimRecord>> trims;       // [k][honest idx]

  int honestIndexOf(int node) const;
};

struct ConvergenceStats {
  std::vector<double> spread;  // max pairwise |theta_i - theta_j|, rounds 0..K
  double finalSpread = 0.0;
  double finalMean = 0.0;      // honest mean at round K
};

struct RunResult {
  Trace trace;
  ConvergenceStats stats;
};

/// Source of every noise draw of one execution. honestDraw(i, k) is
/// consumed once per honest agent per round; faultyDraw once per
/// (agent, out-edge slot) per round, where a malicious agent's draws are
/// identical across slots within a round.
class NoiseSource {
 public:
  virtual ~NoiseSource() = default;
  virtual double honestDraw(int honestIndex, int k) = 0;
  virtual double faultyDraw(int faultyIndex, int edgeSlot, int k) = 0;
};

/// Seeded streams derived from (master seed, run index, agent id [, slot]),
/// so distinct runs and agents are independent and any run is reproducible
/// in isolation.
class SeededNoiseSource : public NoiseSource {
 public:
  SeededNoiseSource(const SimConfig& cfg, int runIndex);
  double honestDraw(int honestIndex, int k) override;
  double faultyDraw(int faultyIndex, int edgeSlot, int k) override;

 private:
  const SimConfig& cfg_;
  std::vector<const FaultySpec*> specs_;  // ascending node id
  std::vector<RngStream> honestStreams_;
  std::vector<std::vector<RngStream>> faultyStreams_;  // malicious: single slot
  std::vector<int> cachedRound_;
  std::vector<double> cachedDraw_;
};

/// Replays explicit draw tables; used by the coupling harness.
class ReplayNoiseSource : public NoiseSource {
 public:
  ReplayNoiseSource(std::vector<std::vector<double>> honest,
                    std::vector<std::vector<std::vector<double>>> faulty);
  double honestDraw(int honestIndex, int k) override;
  double faultyDraw(int faultyIndex, int edgeSlot, int k) override;

 private:
  std::vector<std::vector<double>> honest_;
  std::vector<std::vector<std::vector<double>>> faulty_;
};

/// One synchronous execution: per round every agent transmits from its
/// round-k state, then every honest agent trims and updates. Deterministic
/// given (config, runIndex).
RunResult run(const SimConfig& cfg, int runIndex = 0);
RunResult runWithNoise(const SimConfig& cfg, NoiseSource& noise);

/// Fault-free runs only: the row-stochastic update matrix M(k) with
/// M[i][i] = a_i and M[i][j] = a_i for kept senders j.
std::vector<std::vector<double>> reconstructRoundMatrix(const SimConfig& cfg,
                                                        const Trace& trace, int k);

/// min over honest agents of a_i = 1/(inDegree - 2f + 1).
double minHonestWeight(const SimConfig& cfg);

struct McOptions {
  int runs = 1;
  int workers = 0;        // 0: hardware concurrency
  int histogramBins = 0;  // 0: Freedman-Diaconis rule
  bool keepRoundStats = false;
};

/// Monte Carlo estimate of the consensus-value distribution. The sample of
/// run r is the honest mean at the final round; aggregation is in run-index
/// order, so results do not depend on the worker count.
struct McSummary {
  int runs = 0;
  std::vector<double> samples;  // by run index
  double mean = 0.0;
  double variance = 0.0;        // unbiased; 0 by convention for runs == 1
  bool degenerate = false;      // runs == 1
  std::vector<double> binEdges;
  std::vector<long> binCounts;
  double varLower = 0.0;        // theoretical bounds computed from the config
  double varUpper = 0.0;
  double hullMin = 0.0;         // initial-condition hull
  double hullMax = 0.0;
  // Cross-run per-round statistics (only with keepRoundStats).
  std::vector<std::vector<double>> roundMean;  // [k][honest idx]
  std::vector<std::vector<double>> roundSd;
};

McSummary monteCarlo(const SimConfig& cfg, const McOptions& opt);

struct ValidityReport {
  int checks = 0;
  int violations = 0;
  std::vector<std::string> details;
};

/// Checks that each honest agent's cross-run mean at round k+1 lies inside
/// the hull of cross-run means at round k, with a 3-standard-error
/// allowance on each side. Needs keepRoundStats.
ValidityReport validityCheck(const McSummary& mc);

}  // namespace dpmsr
