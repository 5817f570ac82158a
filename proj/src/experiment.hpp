// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "engine.hpp"

namespace dpmsr {

struct GraphSpec {
  enum class Kind { Circulant, File };
  Kind kind = Kind::Circulant;
  int n = 0;
  int k = 0;
  std::string path;

  Digraph build() const;
  std::string describe() const;
  static GraphSpec parse(const std::vector<std::string>& tokens);
};

struct Theta0Spec {
  enum class Kind { Normal, List };
  Kind kind = Kind::Normal;
  uint64_t seed = 0;                // standard-normal draws, one per honest node
  std::vector<double> values;       // explicit, one per honest node

  std::string describe() const;
  static Theta0Spec parse(const std::vector<std::string>& tokens);
};

struct FaultyEntry {
  int node = -1;
  FaultyBehavior behavior = FaultyBehavior::Malicious;
  Waveform waveform = Waveform::constant(0.0);
  std::optional<LaplaceSchedule> noise;  // "laplace c q" or "none"
};

/// Experiment description as read from a config file: flat "key = value"
/// lines with dotted keys; '#' starts a comment; unknown or repeated keys
/// are rejected.
struct ExperimentConfig {
  GraphSpec graph;
  int f = 0;
  std::vector<FaultyEntry> faulty;
  Theta0Spec theta0;
  double noiseC = 1.0;
  double noiseQ = 0.75;
  int rounds = 0;
  int runs = 1;
  uint64_t seed = 0;
  std::string outputDir = "out";
};

ExperimentConfig parseExperimentConfig(const std::string& text);
ExperimentConfig loadExperimentConfig(const std::string& path);
/// Canonical form; parse(serialize(cfg)) reproduces cfg exactly.
std::string serializeExperimentConfig(const ExperimentConfig& cfg);

struct BuildOptions {
  bool zeroNoise = false;
  bool noFaults = false;
};

struct BuiltExperiment {
  SimConfig sim;
  /// Exhaustive within the cap; generator formula for large circulants;
  /// absent for large arbitrary graphs.
  std::optional<RobustnessCertificate> certificate;
  std::vector<std::string> warnings;
};

/// Realizes the config: builds the graph, draws or copies theta0 (normal
/// draws use a stream derived from the theta0 seed, one value per honest
/// node in ascending node order), validates, and collects robustness
/// warnings.
BuiltExperiment buildExperiment(const ExperimentConfig& cfg,
                                const BuildOptions& opt = {});

}  // namespace dpmsr
