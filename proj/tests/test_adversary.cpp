// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "adversary.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "errors.hpp"

using namespace dpmsr;

TEST_CASE("waveforms are deterministic in k") {
  SUBCASE("constant") {
    Waveform w = Waveform::constant(2.5);
    for (int k = 0; k < 10; ++k) CHECK(w.valueAt(k) == 2.5);
  }
  SUBCASE("sine matches amplitude * sin(omega k)") {
    Waveform w = Waveform::sine(0.5, 1.0);
    CHECK(w.valueAt(0) == 0.0);
    CHECK(w.valueAt(3) == doctest::Approx(0.5 * std::sin(3.0)));
  }
  SUBCASE("ramp reaches the target and holds") {
    Waveform w = Waveform::rampToTarget(4.0, 8);
    CHECK(w.valueAt(0) == 0.0);
    CHECK(w.valueAt(4) == doctest::Approx(2.0));
    CHECK(w.valueAt(8) == 4.0);
    CHECK(w.valueAt(100) == 4.0);
    CHECK_THROWS_AS(Waveform::rampToTarget(1.0, 0), std::invalid_argument);
  }
  SUBCASE("table zero-order hold") {
    Waveform w = Waveform::customTable({{0, 1.0}, {5, -2.0}});
    CHECK(w.valueAt(0) == 1.0);
    CHECK(w.valueAt(4) == 1.0);
    CHECK(w.valueAt(5) == -2.0);
    CHECK(w.valueAt(9) == -2.0);
    CHECK_THROWS_AS(Waveform::customTable({}), std::invalid_argument);
    CHECK_THROWS_AS(Waveform::customTable({{0, 1.0}, {0, 2.0}}), std::invalid_argument);
  }
  SUBCASE("table file round trip") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "dpmsr_wave_test";
    fs::create_directories(dir);
    const std::string path = (dir / "w.txt").string();
    {
      std::ofstream f(path);
      f << "0 1.5\n3 2.5\n";
    }
    Waveform w = Waveform::loadTable(path);
    CHECK(w.valueAt(2) == 1.5);
    CHECK(w.valueAt(3) == 2.5);
    CHECK(w.describe() == "table " + path);
    CHECK_THROWS_AS(Waveform::loadTable((dir / "missing.txt").string()), IoError);
    fs::remove_all(dir);
  }
}

TEST_CASE("waveform config syntax round trips") {
  for (const auto& spec : {std::vector<std::string>{"constant", "3.5"},
                           std::vector<std::string>{"sine", "0.5", "1"},
                           std::vector<std::string>{"ramp", "2", "10"}}) {
    Waveform w = Waveform::parse(spec);
    std::string text = w.describe();
    Waveform again = Waveform::parse([&] {
      std::vector<std::string> tokens;
      size_t pos = 0;
      while (pos < text.size()) {
        size_t space = text.find(' ', pos);
        if (space == std::string::npos) space = text.size();
        tokens.push_back(text.substr(pos, space - pos));
        pos = space + 1;
      }
      return tokens;
    }());
    for (int k = 0; k < 20; ++k) CHECK(w.valueAt(k) == again.valueAt(k));
  }
  CHECK_THROWS_AS(Waveform::parse({"triangle", "1"}), std::invalid_argument);
}

TEST_CASE("faulty message: waveform plus noise") {
  SUBCASE("sine attacker with zero noise at k = 0 sends 0") {
    FaultyAgent agent(1, FaultyBehavior::Malicious, Waveform::sine(0.5, 1.0),
                      {2, 3, 4}, std::nullopt);
    RngStream rng(1);
    CHECK(agent.messageFor(2, 0, rng).value == 0.0);
    CHECK(agent.deterministicPart(3, 0) == 0.0);
  }
  SUBCASE("constant stubborn value without noise") {
    FaultyAgent agent(0, FaultyBehavior::Malicious, Waveform::constant(7.0), {1, 2},
                      std::nullopt);
    RngStream rng(1);
    for (int k = 0; k < 50; ++k) CHECK(agent.messageFor(1, k, rng).value == 7.0);
  }
  SUBCASE("edge ownership is enforced") {
    FaultyAgent agent(0, FaultyBehavior::Malicious, Waveform::constant(0.0), {1, 2},
                      std::nullopt);
    RngStream rng(1);
    CHECK_THROWS_AS(agent.messageFor(3, 0, rng), std::invalid_argument);
  }
}

TEST_CASE("malicious consistency within a round") {
  FaultyAgent agent(0, FaultyBehavior::Malicious, Waveform::sine(1.0, 0.7), {1, 2, 3},
                    LaplaceSchedule(0.8, 0.9));
  RngStream rng(33);
  for (int k = 0; k < 20; ++k) {
    const double first = agent.messageFor(1, k, rng).value;
    CHECK(agent.messageFor(2, k, rng).value == first);
    CHECK(agent.messageFor(3, k, rng).value == first);
  }
  CHECK_THROWS_AS(agent.setEdgeWaveform(1, Waveform::constant(1.0)),
                  std::invalid_argument);
}

TEST_CASE("byzantine draws differ across edges with distinct streams") {
  FaultyAgent agent(0, FaultyBehavior::Byzantine, Waveform::constant(0.0), {1, 2},
                    LaplaceSchedule(1.0, 0.9));
  RngStream s1 = RngStream::derive(9, {0});
  RngStream s2 = RngStream::derive(9, {1});
  bool different = false;
  for (int k = 0; k < 100; ++k) {
    if (agent.messageFor(1, k, s1).value != agent.messageFor(2, k, s2).value) {
      different = true;
    }
  }
  CHECK(different);
}

TEST_CASE("byzantine per-edge waveforms") {
  FaultyAgent agent(0, FaultyBehavior::Byzantine, Waveform::constant(1.0), {1, 2},
                    std::nullopt);
  agent.setEdgeWaveform(2, Waveform::constant(-1.0));
  RngStream rng(1);
  CHECK(agent.messageFor(1, 0, rng).value == 1.0);
  CHECK(agent.messageFor(2, 0, rng).value == -1.0);
}

TEST_CASE("state-dependent attack sees the honest history") {
  FaultyAgent agent(0, FaultyBehavior::Malicious, Waveform::constant(0.0), {1},
                    std::nullopt);
  agent.setStateAttack([](int, int k, const std::vector<std::vector<double>>& hist) {
    return hist[k][0] + 1.0;  // track honest agent 0 plus an offset
  });
  std::vector<std::vector<double>> history{{5.0}, {6.5}};
  CHECK(agent.deterministicPart(1, 1, &history) == 7.5);
  CHECK_THROWS_AS(agent.deterministicPart(1, 1, nullptr), std::invalid_argument);
}

TEST_CASE("adjacent attack pair") {
  SUBCASE("validation") {
    CHECK_THROWS_AS(AdjacentAttackPair(0.5, 0.0, 0.75), std::invalid_argument);
    CHECK_THROWS_AS(AdjacentAttackPair(1.0, 0.75, 0.75), std::invalid_argument);
    CHECK_THROWS_AS(AdjacentAttackPair(1.0, 0.9, 0.75), std::invalid_argument);
    CHECK_NOTHROW(AdjacentAttackPair(1.0, 0.3, 0.75));
  }
  SUBCASE("lambda = 0 shifts only round zero") {
    AdjacentAttackPair pair(1.0, 0.0, 0.75);
    CHECK(pair.deltaAt(1, 0) == 1.0);
    for (int k = 1; k < 10; ++k) CHECK(pair.deltaAt(1, k) == 0.0);
  }
  SUBCASE("shift magnitudes sum below deltaBar / (1 - lambda)") {
    AdjacentAttackPair pair(2.0, 0.4, 0.75);
    double sum = 0.0;
    for (int k = 0; k < 200; ++k) sum += std::abs(pair.deltaAt(0, k));
    CHECK(sum <= 2.0 / (1.0 - 0.4) + 1e-12);
    CHECK(sum == doctest::Approx(2.0 / 0.6).epsilon(1e-9));
  }
  SUBCASE("custom shift must respect the envelope") {
    AdjacentAttackPair pair(1.0, 0.5, 0.75);
    pair.setEdgeDelta([](int, int k) { return k == 0 ? 0.8 : 0.0; });
    CHECK(pair.deltaAt(0, 0) == 0.8);
    AdjacentAttackPair bad(1.0, 0.5, 0.75);
    bad.setEdgeDelta([](int, int) { return 2.0; });
    CHECK_THROWS_AS(bad.deltaAt(0, 0), std::invalid_argument);
  }
}

TEST_CASE("coupled messages agree across the pair") {
  FaultyAgent agent(0, FaultyBehavior::Malicious, Waveform::sine(0.5, 1.0), {1, 2},
                    LaplaceSchedule(1.0, 0.75));
  AdjacentAttackPair pair(1.0, 0.3, 0.75);
  for (int k = 0; k < 30; ++k) {
    RngStream rngA(7, k);
    RngStream rngB(7, k);
    FaultyAgent a1 = agent;
    FaultyAgent a2 = agent;
    const double v1 = coupledMessage(a1, pair, 1, 1, k, rngA).value;
    const double v2 = coupledMessage(a2, pair, 2, 1, k, rngB).value;
    CHECK(std::abs(v2 - v1) <= 1e-12);
  }
  FaultyAgent a(0, FaultyBehavior::Malicious, Waveform::constant(0.0), {1},
                std::nullopt);
  RngStream rng(1);
  CHECK_THROWS_AS(coupledMessage(a, pair, 3, 1, 0, rng), std::invalid_argument);
}

TEST_CASE("recorded shifts never exceed the envelope") {
  AdjacentAttackPair pair(1.5, 0.6, 0.75);
  for (int k = 0; k < 100; ++k) {
    CHECK(std::abs(pair.deltaAt(0, k)) <= 1.5 * std::pow(0.6, k) + 1e-15);
  }
}
