// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
//
// Test-only helpers: an independent brute-force robustness oracle and
// seeded random-graph generators. The oracle deliberately avoids the
// library's bitmask machinery: it walks all 3^n assignments of nodes to
// {S1, S2, neither} and checks reachability with plain sets.
#pragma once

#include <set>
#include <vector>

#include "graph.hpp"
#include "rng.hpp"

namespace dpmsr::testsupport {

inline bool naiveReachable(const Digraph& g, const std::set<int>& s, int r) {
  for (int i : s) {
    int outside = 0;
    for (int j : g.inNeighbors(i)) {
      if (!s.count(j)) ++outside;
    }
    if (outside >= r) return true;
  }
  return false;
}

inline bool naiveIsRRobust(const Digraph& g, int r) {
  const int n = g.nodeCount();
  std::vector<int> assign(n, 0);
  for (;;) {
    std::set<int> s1, s2;
    for (int i = 0; i < n; ++i) {
      if (assign[i] == 1) s1.insert(i);
      if (assign[i] == 2) s2.insert(i);
    }
    if (!s1.empty() && !s2.empty() && !naiveReachable(g, s1, r) &&
        !naiveReachable(g, s2, r)) {
      return false;
    }
    int pos = 0;
    while (pos < n && assign[pos] == 2) assign[pos++] = 0;
    if (pos == n) break;
    ++assign[pos];
  }
  return true;
}

inline int naiveMaxRobustness(const Digraph& g) {
  int r = 0;
  while (naiveIsRRobust(g, r + 1)) ++r;
  return r;
}

/// Erdos-Renyi digraph: every ordered pair is an edge with probability p.
inline Digraph randomDigraph(int n, double p, RngStream& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && rng.nextUniform() < p) edges.emplace_back(i, j);
    }
  }
  return Digraph(n, edges);
}

/// Random digraph that is exhaustively certified at least r-robust with
/// all in-degrees >= minInDegree; resamples until both hold.
inline Digraph randomRobustDigraph(int n, int r, int minInDegree, RngStream& rng) {
  for (;;) {
    const double p = 0.45 + 0.4 * rng.nextUniform();
    Digraph g = randomDigraph(n, p, rng);
    if (g.minInDegree() < minInDegree) continue;
    if (isRRobust(g, r)) return g;
  }
}

}  // namespace dpmsr::testsupport
