// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"
#include "textio.hpp"

namespace dpmsr {

Digraph::Digraph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n) {
  if (n < 2) throw std::invalid_argument("graph needs at least 2 nodes");
  in_.resize(n);
  out_.resize(n);
  std::set<std::pair<int, int>> seen;
  for (auto [from, to] : edges) {
    if (from < 0 || from >= n || to < 0 || to >= n) {
      throw std::invalid_argument("edge (" + formatInt(from) + "," + formatInt(to) +
                                  ") references an invalid node");
    }
    if (from == to) {
      throw std::invalid_argument("self-loop on node " + formatInt(from));
    }
    if (!seen.insert({from, to}).second) {
      throw std::invalid_argument("duplicate edge (" + formatInt(from) + "," +
                                  formatInt(to) + ")");
    }
    out_[from].push_back(to);
    in_[to].push_back(from);
  }
  for (auto& v : in_) std::sort(v.begin(), v.end());
  for (auto& v : out_) std::sort(v.begin(), v.end());
  edgeCount_ = static_cast<int>(seen.size());
}

Digraph Digraph::circulant(int n, int k) {
  if (n < 2) throw std::invalid_argument("circulant graph needs n >= 2");
  if (k < 1 || k >= n) {
    throw std::invalid_argument("circulant offset k must satisfy 1 <= k < n, got k=" +
                                formatInt(k) + " for n=" + formatInt(n));
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<size_t>(n) * k);
  for (int i = 0; i < n; ++i) {
    for (int d = 1; d <= k; ++d) edges.emplace_back(i, (i + d) % n);
  }
  return Digraph(n, edges);
}

Digraph Digraph::complete(int n) { return circulant(n, n - 1); }

Digraph Digraph::loadEdgeList(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open graph file: " + path);
  std::string line;
  int lineNo = 0;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(f, line)) {
    ++lineNo;
    auto tokens = splitWhitespace(line);
    if (tokens.empty()) continue;
    try {
      if (n < 0) {
        if (tokens.size() != 1) throw std::invalid_argument("expected node count alone");
        n = static_cast<int>(parseInt(tokens[0]));
      } else {
        if (tokens.size() != 2) throw std::invalid_argument("expected 'from to'");
        edges.emplace_back(static_cast<int>(parseInt(tokens[0])),
                           static_cast<int>(parseInt(tokens[1])));
      }
    } catch (const std::invalid_argument& e) {
      throw IoError(path + ":" + formatInt(lineNo) + ": " + e.what());
    }
  }
  if (n < 0) throw IoError(path + ": empty graph file");
  try {
    return Digraph(n, edges);
  } catch (const std::invalid_argument& e) {
    throw IoError(path + ": " + e.what());
  }
}

void Digraph::saveEdgeList(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write graph file: " + path);
  f << n_ << "\n";
  for (auto [from, to] : edges()) f << from << " " << to << "\n";
  if (!f) throw IoError("write failed: " + path);
}

void Digraph::checkNode(int i) const {
  if (i < 0 || i >= n_) {
    throw std::invalid_argument("node index " + formatInt(i) + " out of range [0," +
                                formatInt(n_) + ")");
  }
}

std::span<const int> Digraph::inNeighbors(int i) const {
  checkNode(i);
  return in_[i];
}

std::span<const int> Digraph::outNeighbors(int i) const {
  checkNode(i);
  return out_[i];
}

int Digraph::inDegree(int i) const { return static_cast<int>(inNeighbors(i).size()); }

int Digraph::outDegree(int i) const { return static_cast<int>(outNeighbors(i).size()); }

int Digraph::minInDegree() const {
  int best = std::numeric_limits<int>::max();
  for (int i = 0; i < n_; ++i) best = std::min(best, static_cast<int>(in_[i].size()));
  return best;
}

int Digraph::maxOutDegree() const {
  int best = 0;
  for (int i = 0; i < n_; ++i) best = std::max(best, static_cast<int>(out_[i].size()));
  return best;
}

bool Digraph::hasEdge(int from, int to) const {
  checkNode(from);
  checkNode(to);
  return std::binary_search(out_[from].begin(), out_[from].end(), to);
}

std::vector<std::pair<int, int>> Digraph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edgeCount_);
  for (int i = 0; i < n_; ++i) {
    for (int j : out_[i]) out.emplace_back(i, j);
  }
  return out;
}

bool isRReachable(const Digraph& g, std::span<const int> subset, int r) {
  if (r < 0) throw std::invalid_argument("reachability threshold must be non-negative");
  if (subset.empty()) throw std::invalid_argument("subset must be nonempty");
  std::vector<char> inSet(g.nodeCount(), 0);
  for (int i : subset) {
    if (i < 0 || i >= g.nodeCount()) {
      throw std::invalid_argument("subset node " + formatInt(i) + " out of range");
    }
    if (inSet[i]) throw std::invalid_argument("subset repeats node " + formatInt(i));
    inSet[i] = 1;
  }
  if (static_cast<int>(subset.size()) == g.nodeCount()) {
    throw std::invalid_argument("subset must be a proper subset of the node set");
  }
  for (int i : subset) {
    int outside = 0;
    for (int j : g.inNeighbors(i)) {
      if (!inSet[j]) ++outside;
    }
    if (outside >= r) return true;
  }
  return false;
}

namespace {

std::vector<int> maskToNodes(uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i);
  }
  return out;
}

// reach[S] = max over i in S of |in(i) \ S|, for every nonempty subset mask.
// A subset is r-reachable exactly when reach[S] >= r.
std::vector<int> reachTable(const Digraph& g) {
  const int n = g.nodeCount();
  std::vector<uint32_t> inMask(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j : g.inNeighbors(i)) inMask[i] |= (1u << j);
  }
  const uint32_t total = 1u << n;
  std::vector<int> reach(total, 0);
  for (uint32_t s = 1; s < total; ++s) {
    int best = 0;
    uint32_t rest = s;
    while (rest) {
      int i = std::countr_zero(rest);
      rest &= rest - 1;
      best = std::max(best, std::popcount(inMask[i] & ~s));
    }
    reach[s] = best;
  }
  return reach;
}

struct ExhaustiveResult {
  int maxR = 0;
  // Pair attaining min over disjoint pairs of max(reach[S1], reach[S2]);
  // both members fail (maxR+1)-reachability.
  uint32_t witnessA = 0;
  uint32_t witnessB = 0;
};

// Robustness = min over disjoint nonempty pairs (S1,S2) of
// max(reach[S1], reach[S2]); computed with a subset-minimum sweep so the
// whole table costs O(2^n * n) instead of enumerating pairs.
ExhaustiveResult exhaustiveRobustness(const Digraph& g) {
  const int n = g.nodeCount();
  if (n > kExhaustiveRobustnessCap) {
    throw GraphTooLargeError("exhaustive robustness check refused: n=" + formatInt(n) +
                             " exceeds cap " + formatInt(kExhaustiveRobustnessCap));
  }
  const uint32_t total = 1u << n;
  const uint32_t full = total - 1;
  std::vector<int> reach = reachTable(g);

  // minReach[m] = min reach over nonempty subsets of m; argMin the subset.
  const int inf = std::numeric_limits<int>::max();
  std::vector<int> minReach(total, inf);
  std::vector<uint32_t> argMin(total, 0);
  for (uint32_t s = 1; s < total; ++s) {
    minReach[s] = reach[s];
    argMin[s] = s;
  }
  for (int b = 0; b < n; ++b) {
    const uint32_t bit = 1u << b;
    for (uint32_t m = 1; m < total; ++m) {
      if (!(m & bit)) continue;
      uint32_t sub = m ^ bit;
      if (sub && minReach[sub] < minReach[m]) {
        minReach[m] = minReach[sub];
        argMin[m] = argMin[sub];
      }
    }
  }

  ExhaustiveResult res;
  int best = inf;
  for (uint32_t s = 1; s < total; ++s) {
    uint32_t comp = full & ~s;
    if (!comp) continue;
    int pairValue = std::max(reach[s], minReach[comp]);
    if (pairValue < best) {
      best = pairValue;
      res.witnessA = s;
      res.witnessB = argMin[comp];
    }
  }
  res.maxR = best;
  return res;
}

}  // namespace

bool isRRobust(const Digraph& g, int r, RobustnessWitness* witness) {
  if (r < 0) throw std::invalid_argument("robustness level must be non-negative");
  if (r == 0) return true;
  ExhaustiveResult res = exhaustiveRobustness(g);
  if (r <= res.maxR) return true;
  if (witness) {
    witness->setA = maskToNodes(res.witnessA);
    witness->setB = maskToNodes(res.witnessB);
  }
  return false;
}

RobustnessCertificate maxRobustness(const Digraph& g) {
  ExhaustiveResult res = exhaustiveRobustness(g);
  RobustnessCertificate cert;
  cert.r = res.maxR;
  cert.method = RobustnessMethod::Exhaustive;
  cert.witness = RobustnessWitness{maskToNodes(res.witnessA), maskToNodes(res.witnessB)};
  return cert;
}

int circulantRobustness(int k) {
  if (k < 1) throw std::invalid_argument("circulant offset must be positive");
  return (k + 1) / 2;
}

RobustnessCertificate certifyCirculant(int n, int k) {
  if (n <= kExhaustiveRobustnessCap) {
    return maxRobustness(Digraph::circulant(n, k));
  }
  if (k < 1 || k >= n) throw std::invalid_argument("invalid circulant parameters");
  RobustnessCertificate cert;
  cert.r = circulantRobustness(k);
  cert.method = RobustnessMethod::GeneratorFormula;
  return cert;
}

}  // namespace dpmsr
