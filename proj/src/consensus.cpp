// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "consensus.hpp"

#include <algorithm>
#include <stdexcept>

#include "textio.hpp"

namespace dpmsr {

HonestAgent::HonestAgent(int id, int inDegree, int f, double theta0)
    : id_(id), inDegree_(inDegree), f_(f), theta_(theta0) {
  if (f < 0) throw std::invalid_argument("f must be non-negative");
  if (inDegree < 2 * f + 1) {
    throw std::invalid_argument("agent " + formatInt(id) + " has in-degree " +
                                formatInt(inDegree) + " < 2f+1 = " + formatInt(2 * f + 1) +
                                "; trimming would leave no messages");
  }
  weightA_ = 1.0 / static_cast<double>(inDegree - 2 * f + 1);
}

Message makeMessage(const HonestAgent& agent, int k, const LaplaceSchedule& s,
                    RngStream& rng) {
  return Message{agent.id(), agent.theta() + sampleLaplace(s, k, rng)};
}

TrimOutcome trim(std::vector<Message> received, int f) {
  if (f < 0) throw std::invalid_argument("f must be non-negative");
  const int m = static_cast<int>(received.size());
  if (m < 2 * f + 1) {
    throw std::invalid_argument("trim needs at least 2f+1 = " + formatInt(2 * f + 1) +
                                " messages, got " + formatInt(m));
  }
  std::sort(received.begin(), received.end(), [](const Message& a, const Message& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.sender < b.sender;
  });
  TrimOutcome out;
  out.removedLow.assign(received.begin(), received.begin() + f);
  out.removedHigh.assign(received.end() - f, received.end());
  out.kept.assign(received.begin() + f, received.end() - f);
  return out;
}

double updateState(HonestAgent& agent, const TrimOutcome& outcome) {
  const int expected = agent.inDegree() - 2 * agent.maxFaults();
  if (static_cast<int>(outcome.kept.size()) != expected) {
    throw std::invalid_argument("kept-set size " + formatInt(outcome.kept.size()) +
                                " does not match in-degree minus 2f = " +
                                formatInt(expected));
  }
  double acc = agent.theta();
  for (const Message& m : outcome.kept) acc += m.value;
  double next = agent.weight() * acc;
  agent.setTheta(next);
  return next;
}

}  // namespace dpmsr
