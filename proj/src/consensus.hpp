// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <vector>

#include "noise.hpp"

namespace dpmsr {

struct Message {
  int sender = -1;
  double value = 0.0;
};

/// Non-faulty agent: broadcasts its noised state, then trims and averages.
///
/// The update weight a = 1/(inDegree - 2f + 1) is fixed at construction
/// from the topology and the design parameter f; it equals the reciprocal
/// of the number of terms averaged (own state plus kept messages).
class HonestAgent {
 public:
  HonestAgent(int id, int inDegree, int f, double theta0);

  int id() const { return id_; }
  int inDegree() const { return inDegree_; }
  int maxFaults() const { return f_; }
  double weight() const { return weightA_; }
  double theta() const { return theta_; }
  void setTheta(double v) { theta_ = v; }

 private:
  int id_;
  int inDegree_;
  int f_;
  double weightA_;
  double theta_;
};

/// Broadcast message x = theta + one Laplace draw at round k. The same
/// value goes to every out-neighbor.
Message makeMessage(const HonestAgent& agent, int k, const LaplaceSchedule& s,
                    RngStream& rng);

struct TrimOutcome {
  std::vector<Message> kept;        // ascending (value, sender)
  std::vector<Message> removedLow;  // the f smallest
  std::vector<Message> removedHigh; // the f largest
};

/// Removes the f largest and f smallest values under the deterministic
/// order (value, then sender id). Requires at least 2f+1 messages.
TrimOutcome trim(std::vector<Message> received, int f);

/// theta <- a * (theta + sum of kept values); returns the new theta.
double updateState(HonestAgent& agent, const TrimOutcome& outcome);

}  // namespace dpmsr
