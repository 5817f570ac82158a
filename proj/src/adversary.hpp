// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "consensus.hpp"
#include "noise.hpp"

namespace dpmsr {

/// Deterministic attack signal: a bounded function of the round index.
class Waveform {
 public:
  enum class Kind { Constant, Sine, RampToTarget, CustomTable };

  static Waveform constant(double value);
  static Waveform sine(double amplitude, double omega);
  /// Linear ramp from 0 to target over `rounds` rounds, then hold.
  static Waveform rampToTarget(double target, int rounds);
  /// Zero-order hold over (k, value) entries; a round before the first
  /// entry takes the first entry's value.
  static Waveform customTable(std::vector<std::pair<int, double>> entries);
  /// Plain-text table: one "k value" pair per line.
  static Waveform loadTable(const std::string& path);

  double valueAt(int k) const;
  Kind kind() const { return kind_; }

  /// Config-file syntax, e.g. "sine 0.5 1". Round-trips through parse().
  std::string describe() const;
  static Waveform parse(const std::vector<std::string>& tokens);

 private:
  Waveform() = default;
  Kind kind_ = Kind::Constant;
  double a_ = 0.0;  // constant value / sine amplitude / ramp target
  double b_ = 0.0;  // sine angular frequency
  int rounds_ = 0;  // ramp duration
  std::vector<std::pair<int, double>> table_;
  std::string tablePath_;
};

enum class FaultyBehavior { Malicious, Byzantine };

/// Omniscient attack hook: deterministic part of the message to `victim`
/// at round k, given the honest state history theta(0..k).
using StateAttack = std::function<double(
    int victim, int k, const std::vector<std::vector<double>>& honestHistory)>;

/// Faulty agent: emits waveform-plus-noise attack signals instead of
/// following the trimmed-average update.
///
/// A malicious agent sends the same value to all out-neighbors (one
/// waveform, one noise draw per round); a Byzantine agent may use a
/// different waveform and an independent noise draw per out-edge.
class FaultyAgent {
 public:
  FaultyAgent(int id, FaultyBehavior behavior, Waveform waveform,
              std::vector<int> outNeighbors, std::optional<LaplaceSchedule> noise);

  int id() const { return id_; }
  FaultyBehavior behavior() const { return behavior_; }
  const std::vector<int>& outNeighbors() const { return outNeighbors_; }
  const std::optional<LaplaceSchedule>& noiseSchedule() const { return noise_; }

  /// Byzantine only; malicious agents share one waveform by definition.
  void setEdgeWaveform(int outNeighbor, Waveform w);
  void setStateAttack(StateAttack attack);

  /// The noiseless attack signal for one out-edge.
  double deterministicPart(int outNeighbor, int k,
                           const std::vector<std::vector<double>>* honestHistory =
                               nullptr) const;

  /// Attack signal plus noise draw. Within one round a malicious agent
  /// draws once and repeats the value on every edge; a Byzantine agent
  /// draws from the stream it is handed on every call.
  Message messageFor(int outNeighbor, int k, RngStream& rng);

 private:
  int edgeSlot(int outNeighbor) const;

  int id_;
  FaultyBehavior behavior_;
  Waveform waveform_;
  std::vector<int> outNeighbors_;
  std::optional<LaplaceSchedule> noise_;
  std::map<int, Waveform> perEdge_;
  StateAttack stateAttack_;
  int cachedRound_ = -1;
  double cachedValue_ = 0.0;
};

/// Attack-signal pair for two adjacent executions: the second execution's
/// deterministic part is the first plus a shift delta(k) with
/// |delta(k)| <= deltaBar * lambda^k, and the second execution's noise
/// absorbs the shift exactly, so both executions transmit identical
/// messages under the coupled noise realization.
class AdjacentAttackPair {
 public:
  /// Requires deltaBar >= 1 and 0 <= lambda < honestQ; at lambda >= q the
  /// privacy budget series diverges.
  AdjacentAttackPair(double deltaBar, double lambda, double honestQ);

  double deltaBar() const { return deltaBar_; }
  double lambda() const { return lambda_; }

  /// Override the per-edge shift; values must stay inside the envelope.
  void setEdgeDelta(std::function<double(int victim, int k)> fn);

  /// Shift applied to the message toward `victim` at round k. Defaults to
  /// the full envelope deltaBar * lambda^k (0^0 = 1, so lambda = 0 shifts
  /// only round 0).
  double deltaAt(int victim, int k) const;

 private:
  double deltaBar_;
  double lambda_;
  std::function<double(int, int)> custom_;
};

/// Message of execution 1 or 2 at one edge under the coupled noise: the
/// same base draw serves both, so the two values agree by construction.
Message coupledMessage(FaultyAgent& base, const AdjacentAttackPair& pair, int which,
                       int outNeighbor, int k, RngStream& rng);

}  // namespace dpmsr
