// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "adversary.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "errors.hpp"
#include "textio.hpp"

namespace dpmsr {

Waveform Waveform::constant(double value) {
  Waveform w;
  w.kind_ = Kind::Constant;
  w.a_ = value;
  return w;
}

Waveform Waveform::sine(double amplitude, double omega) {
  Waveform w;
  w.kind_ = Kind::Sine;
  w.a_ = amplitude;
  w.b_ = omega;
  return w;
}

Waveform Waveform::rampToTarget(double target, int rounds) {
  if (rounds < 1) throw std::invalid_argument("ramp duration must be at least 1 round");
  Waveform w;
  w.kind_ = Kind::RampToTarget;
  w.a_ = target;
  w.rounds_ = rounds;
  return w;
}

Waveform Waveform::customTable(std::vector<std::pair<int, double>> entries) {
  if (entries.empty()) throw std::invalid_argument("waveform table is empty");
  std::sort(entries.begin(), entries.end());
  for (size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].first == entries[i - 1].first) {
      throw std::invalid_argument("waveform table repeats round " +
                                  formatInt(entries[i].first));
    }
  }
  Waveform w;
  w.kind_ = Kind::CustomTable;
  w.table_ = std::move(entries);
  return w;
}

Waveform Waveform::loadTable(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open waveform table: " + path);
  std::vector<std::pair<int, double>> entries;
  std::string line;
  int lineNo = 0;
  while (std::getline(f, line)) {
    ++lineNo;
    auto tokens = splitWhitespace(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 2) {
      throw IoError(path + ":" + formatInt(lineNo) + ": expected 'k value'");
    }
    try {
      entries.emplace_back(static_cast<int>(parseInt(tokens[0])), parseDouble(tokens[1]));
    } catch (const std::invalid_argument& e) {
      throw IoError(path + ":" + formatInt(lineNo) + ": " + e.what());
    }
  }
  try {
    Waveform w = customTable(std::move(entries));
    w.tablePath_ = path;
    return w;
  } catch (const std::invalid_argument& e) {
    throw IoError(path + ": " + e.what());
  }
}

double Waveform::valueAt(int k) const {
  switch (kind_) {
    case Kind::Constant:
      return a_;
    case Kind::Sine:
      return a_ * std::sin(b_ * k);
    case Kind::RampToTarget:
      return k >= rounds_ ? a_ : a_ * (static_cast<double>(k) / rounds_);
    case Kind::CustomTable: {
      // zero-order hold: last entry at or before k
      auto it = std::upper_bound(table_.begin(), table_.end(), k,
                                 [](int key, const std::pair<int, double>& e) {
                                   return key < e.first;
                                 });
      if (it == table_.begin()) return table_.front().second;
      return std::prev(it)->second;
    }
  }
  return 0.0;
}

std::string Waveform::describe() const {
  switch (kind_) {
    case Kind::Constant:
      return "constant " + formatDouble(a_);
    case Kind::Sine:
      return "sine " + formatDouble(a_) + " " + formatDouble(b_);
    case Kind::RampToTarget:
      return "ramp " + formatDouble(a_) + " " + formatInt(rounds_);
    case Kind::CustomTable:
      return "table " + tablePath_;
  }
  return {};
}

Waveform Waveform::parse(const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw std::invalid_argument("empty waveform spec");
  const std::string& kind = tokens[0];
  if (kind == "constant" && tokens.size() == 2) {
    return constant(parseDouble(tokens[1]));
  }
  if (kind == "sine" && tokens.size() == 3) {
    return sine(parseDouble(tokens[1]), parseDouble(tokens[2]));
  }
  if (kind == "ramp" && tokens.size() == 3) {
    return rampToTarget(parseDouble(tokens[1]), static_cast<int>(parseInt(tokens[2])));
  }
  if (kind == "table" && tokens.size() == 2) {
    return loadTable(tokens[1]);
  }
  throw std::invalid_argument(
      "waveform spec must be 'constant v' | 'sine amp omega' | 'ramp target rounds' | "
      "'table path'");
}

FaultyAgent::FaultyAgent(int id, FaultyBehavior behavior, Waveform waveform,
                         std::vector<int> outNeighbors,
                         std::optional<LaplaceSchedule> noise)
    : id_(id),
      behavior_(behavior),
      waveform_(std::move(waveform)),
      outNeighbors_(std::move(outNeighbors)),
      noise_(std::move(noise)) {
  std::sort(outNeighbors_.begin(), outNeighbors_.end());
}

int FaultyAgent::edgeSlot(int outNeighbor) const {
  auto it = std::lower_bound(outNeighbors_.begin(), outNeighbors_.end(), outNeighbor);
  if (it == outNeighbors_.end() || *it != outNeighbor) {
    throw std::invalid_argument("agent " + formatInt(id_) + " has no out-edge to " +
                                formatInt(outNeighbor));
  }
  return static_cast<int>(it - outNeighbors_.begin());
}

void FaultyAgent::setEdgeWaveform(int outNeighbor, Waveform w) {
  if (behavior_ == FaultyBehavior::Malicious) {
    throw std::invalid_argument("a malicious agent sends one value to all neighbors");
  }
  edgeSlot(outNeighbor);
  perEdge_.insert_or_assign(outNeighbor, std::move(w));
}

void FaultyAgent::setStateAttack(StateAttack attack) { stateAttack_ = std::move(attack); }

double FaultyAgent::deterministicPart(
    int outNeighbor, int k, const std::vector<std::vector<double>>* honestHistory) const {
  edgeSlot(outNeighbor);
  if (stateAttack_) {
    if (!honestHistory) {
      throw std::invalid_argument("state-dependent attack needs the honest history");
    }
    return stateAttack_(outNeighbor, k, *honestHistory);
  }
  auto it = perEdge_.find(outNeighbor);
  if (it != perEdge_.end()) return it->second.valueAt(k);
  return waveform_.valueAt(k);
}

Message FaultyAgent::messageFor(int outNeighbor, int k, RngStream& rng) {
  edgeSlot(outNeighbor);
  if (behavior_ == FaultyBehavior::Malicious) {
    if (k != cachedRound_) {
      double draw = noise_ ? sampleLaplace(*noise_, k, rng) : 0.0;
      cachedValue_ = deterministicPart(outNeighbor, k) + draw;
      cachedRound_ = k;
    }
    return Message{id_, cachedValue_};
  }
  double draw = noise_ ? sampleLaplace(*noise_, k, rng) : 0.0;
  return Message{id_, deterministicPart(outNeighbor, k) + draw};
}

AdjacentAttackPair::AdjacentAttackPair(double deltaBar, double lambda, double honestQ)
    : deltaBar_(deltaBar), lambda_(lambda) {
  if (!(deltaBar >= 1.0)) {
    throw std::invalid_argument("attack-shift envelope scale must be >= 1, got " +
                                formatDouble(deltaBar));
  }
  if (lambda < 0.0) throw std::invalid_argument("attack-shift decay must be >= 0");
  if (!(lambda < honestQ)) {
    throw std::invalid_argument("attack-shift decay " + formatDouble(lambda) +
                                " must be below the noise decay q=" + formatDouble(honestQ) +
                                "; otherwise the privacy budget diverges");
  }
}

void AdjacentAttackPair::setEdgeDelta(std::function<double(int, int)> fn) {
  custom_ = std::move(fn);
}

double AdjacentAttackPair::deltaAt(int victim, int k) const {
  const double envelope = deltaBar_ * std::pow(lambda_, k);
  if (!custom_) return envelope;
  double v = custom_(victim, k);
  if (std::abs(v) > envelope + 1e-15) {
    throw std::invalid_argument("attack shift " + formatDouble(v) +
                                " exceeds envelope " + formatDouble(envelope) +
                                " at round " + formatInt(k));
  }
  return v;
}

Message coupledMessage(FaultyAgent& base, const AdjacentAttackPair& pair, int which,
                       int outNeighbor, int k, RngStream& rng) {
  if (which != 1 && which != 2) {
    throw std::invalid_argument("execution selector must be 1 or 2");
  }
  const double det = base.deterministicPart(outNeighbor, k);
  const double draw =
      base.noiseSchedule() ? sampleLaplace(*base.noiseSchedule(), k, rng) : 0.0;
  if (which == 1) return Message{base.id(), det + draw};
  const double shift = pair.deltaAt(outNeighbor, k);
  return Message{base.id(), (det + shift) + (draw - shift)};
}

}  // namespace dpmsr
