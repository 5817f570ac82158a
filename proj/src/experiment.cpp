// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "experiment.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"
#include "rng.hpp"
#include "textio.hpp"

namespace dpmsr {

Digraph GraphSpec::build() const {
  if (kind == Kind::Circulant) return Digraph::circulant(n, k);
  return Digraph::loadEdgeList(path);
}

std::string GraphSpec::describe() const {
  if (kind == Kind::Circulant) {
    return "circulant " + formatInt(n) + " " + formatInt(k);
  }
  return "file " + path;
}

GraphSpec GraphSpec::parse(const std::vector<std::string>& tokens) {
  GraphSpec g;
  if (tokens.size() == 3 && tokens[0] == "circulant") {
    g.kind = Kind::Circulant;
    g.n = static_cast<int>(parseInt(tokens[1]));
    g.k = static_cast<int>(parseInt(tokens[2]));
    return g;
  }
  if (tokens.size() == 2 && tokens[0] == "file") {
    g.kind = Kind::File;
    g.path = tokens[1];
    return g;
  }
  throw std::invalid_argument("graph spec must be 'circulant n k' or 'file path'");
}

std::string Theta0Spec::describe() const {
  if (kind == Kind::Normal) return "normal " + formatU64(seed);
  std::string out = "list";
  for (double v : values) out += " " + formatDouble(v);
  return out;
}

Theta0Spec Theta0Spec::parse(const std::vector<std::string>& tokens) {
  Theta0Spec t;
  if (tokens.size() == 2 && tokens[0] == "normal") {
    t.kind = Kind::Normal;
    t.seed = parseU64(tokens[1]);
    return t;
  }
  if (tokens.size() >= 2 && tokens[0] == "list") {
    t.kind = Kind::List;
    for (size_t i = 1; i < tokens.size(); ++i) t.values.push_back(parseDouble(tokens[i]));
    return t;
  }
  throw std::invalid_argument("theta0 spec must be 'normal seed' or 'list v0 v1 ...'");
}

namespace {

std::optional<LaplaceSchedule> parseNoiseSpec(const std::vector<std::string>& tokens) {
  if (tokens.size() == 1 && tokens[0] == "none") return std::nullopt;
  if (tokens.size() == 3 && tokens[0] == "laplace") {
    return LaplaceSchedule(parseDouble(tokens[1]), parseDouble(tokens[2]));
  }
  throw std::invalid_argument("noise spec must be 'laplace c q' or 'none'");
}

std::string describeNoiseSpec(const std::optional<LaplaceSchedule>& s) {
  if (!s) return "none";
  return "laplace " + formatDouble(s->c()) + " " + formatDouble(s->q());
}

std::string describeBehavior(FaultyBehavior b) {
  return b == FaultyBehavior::Malicious ? "malicious" : "byzantine";
}

FaultyBehavior parseBehavior(const std::string& s) {
  if (s == "malicious") return FaultyBehavior::Malicious;
  if (s == "byzantine") return FaultyBehavior::Byzantine;
  throw std::invalid_argument("behavior must be 'malicious' or 'byzantine'");
}

}  // namespace

ExperimentConfig parseExperimentConfig(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string trimmed = trimCopy(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + formatInt(lineNo) + ": expected 'key = value'");
    }
    const std::string key = trimCopy(trimmed.substr(0, eq));
    const std::string value = trimCopy(trimmed.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("line " + formatInt(lineNo) + ": empty key");
    if (!kv.emplace(key, value).second) {
      throw std::invalid_argument("line " + formatInt(lineNo) + ": repeated key '" + key + "'");
    }
  }

  std::set<std::string> unused;
  for (const auto& [k, v] : kv) unused.insert(k);
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    unused.erase(key);
    return it->second;
  };
  auto require = [&](const std::string& key) {
    auto v = take(key);
    if (!v) throw std::invalid_argument("missing required key '" + key + "'");
    return *v;
  };

  ExperimentConfig cfg;
  try {
    cfg.graph = GraphSpec::parse(splitWhitespace(require("graph")));
    cfg.f = static_cast<int>(parseInt(require("f")));
    cfg.noiseC = parseDouble(require("noise.c"));
    cfg.noiseQ = parseDouble(require("noise.q"));
    cfg.rounds = static_cast<int>(parseInt(require("rounds")));
    cfg.seed = parseU64(require("seed"));
    cfg.theta0 = Theta0Spec::parse(splitWhitespace(require("theta0")));
    if (auto v = take("runs")) cfg.runs = static_cast<int>(parseInt(*v));
    if (auto v = take("output_dir")) cfg.outputDir = *v;

    for (int idx = 0;; ++idx) {
      const std::string prefix = "faulty." + formatInt(idx) + ".";
      auto node = take(prefix + "node");
      if (!node) break;
      FaultyEntry entry;
      entry.node = static_cast<int>(parseInt(*node));
      entry.behavior = parseBehavior(require(prefix + "behavior"));
      entry.waveform = Waveform::parse(splitWhitespace(require(prefix + "waveform")));
      entry.noise = parseNoiseSpec(splitWhitespace(require(prefix + "noise")));
      cfg.faulty.push_back(std::move(entry));
    }
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("config error: ") + e.what());
  }

  if (!unused.empty()) {
    std::string keys;
    for (const auto& k : unused) keys += (keys.empty() ? "" : ", ") + k;
    throw std::invalid_argument("config error: unknown key(s): " + keys);
  }
  return cfg;
}

ExperimentConfig loadExperimentConfig(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config file: " + path);
  std::ostringstream text;
  text << f.rdbuf();
  return parseExperimentConfig(text.str());
}

std::string serializeExperimentConfig(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "graph = " << cfg.graph.describe() << "\n";
  out << "f = " << formatInt(cfg.f) << "\n";
  out << "noise.c = " << formatDouble(cfg.noiseC) << "\n";
  out << "noise.q = " << formatDouble(cfg.noiseQ) << "\n";
  out << "theta0 = " << cfg.theta0.describe() << "\n";
  out << "rounds = " << formatInt(cfg.rounds) << "\n";
  out << "runs = " << formatInt(cfg.runs) << "\n";
  out << "seed = " << formatU64(cfg.seed) << "\n";
  out << "output_dir = " << cfg.outputDir << "\n";
  for (size_t i = 0; i < cfg.faulty.size(); ++i) {
    const std::string prefix = "faulty." + formatInt(i) + ".";
    const FaultyEntry& e = cfg.faulty[i];
    out << prefix << "node = " << formatInt(e.node) << "\n";
    out << prefix << "behavior = " << describeBehavior(e.behavior) << "\n";
    out << prefix << "waveform = " << e.waveform.describe() << "\n";
    out << prefix << "noise = " << describeNoiseSpec(e.noise) << "\n";
  }
  return out.str();
}

BuiltExperiment buildExperiment(const ExperimentConfig& cfg, const BuildOptions& opt) {
  BuiltExperiment built{
      SimConfig{cfg.graph.build(), cfg.f, {}, {},
                LaplaceSchedule(cfg.noiseC, cfg.noiseQ), cfg.rounds, cfg.seed,
                opt.zeroNoise},
      std::nullopt,
      {}};
  SimConfig& sim = built.sim;

  if (!opt.noFaults) {
    for (const FaultyEntry& e : cfg.faulty) {
      FaultySpec spec;
      spec.node = e.node;
      spec.behavior = e.behavior;
      spec.waveform = e.waveform;
      spec.noise = e.noise;
      sim.faulty.push_back(std::move(spec));
    }
  }

  std::vector<char> isFaulty(sim.graph.nodeCount(), 0);
  for (const auto& s : sim.faulty) {
    if (s.node >= 0 && s.node < sim.graph.nodeCount()) isFaulty[s.node] = 1;
  }
  int honestCount = 0;
  for (int i = 0; i < sim.graph.nodeCount(); ++i) honestCount += !isFaulty[i];

  if (cfg.theta0.kind == Theta0Spec::Kind::Normal) {
    RngStream stream = RngStream::derive(cfg.theta0.seed, {0});
    sim.theta0.reserve(honestCount);
    for (int i = 0; i < honestCount; ++i) sim.theta0.push_back(stream.nextGaussian());
  } else {
    sim.theta0 = cfg.theta0.values;
  }

  validateConfig(sim);

  if (cfg.graph.kind == GraphSpec::Kind::Circulant &&
      sim.graph.nodeCount() > kExhaustiveRobustnessCap) {
    built.certificate = certifyCirculant(cfg.graph.n, cfg.graph.k);
  } else {
    built.certificate = tryCertify(sim.graph);
  }
  built.warnings = robustnessWarnings(sim, built.certificate);
  return built;
}

}  // namespace dpmsr
