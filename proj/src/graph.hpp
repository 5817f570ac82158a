// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dpmsr {

/// Immutable directed graph. The edge (j, i) carries information from j
/// to i, so j is an in-neighbor of i. No self-loops, n >= 2. Safe to share
/// across threads once constructed.
class Digraph {
 public:
  Digraph(int n, const std::vector<std::pair<int, int>>& edges);

  /// Node i has out-edges to (i+1) mod n, ..., (i+k) mod n; every node has
  /// in-degree and out-degree k. Requires 1 <= k < n.
  static Digraph circulant(int n, int k);

  /// All ordered pairs, i.e. circulant(n, n-1).
  static Digraph complete(int n);

  /// Plain-text edge list: first line n, then one "j i" edge per line.
  static Digraph loadEdgeList(const std::string& path);
  void saveEdgeList(const std::string& path) const;

  int nodeCount() const { return n_; }
  int edgeCount() const { return edgeCount_; }
  std::span<const int> inNeighbors(int i) const;
  std::span<const int> outNeighbors(int i) const;
  int inDegree(int i) const;
  int outDegree(int i) const;
  int minInDegree() const;
  int maxOutDegree() const;
  bool hasEdge(int from, int to) const;
  /// All edges as (from, to), sorted.
  std::vector<std::pair<int, int>> edges() const;

 private:
  void checkNode(int i) const;

  int n_ = 0;
  int edgeCount_ = 0;
  std::vector<std::vector<int>> in_;
  std::vector<std::vector<int>> out_;
};

/// Exact robustness certification is exponential; exhaustive mode refuses
/// graphs with more nodes than this.
inline constexpr int kExhaustiveRobustnessCap = 12;

enum class RobustnessMethod { Exhaustive, GeneratorFormula };

/// Two disjoint nonempty node sets, neither of which is r-reachable.
struct RobustnessWitness {
  std::vector<int> setA;
  std::vector<int> setB;
};

struct RobustnessCertificate {
  int r = 0;
  RobustnessMethod method = RobustnessMethod::Exhaustive;
  /// Falsifies (r+1)-robustness. Only exhaustive certificates carry one.
  std::optional<RobustnessWitness> witness;
};

/// True iff some node of the subset has at least r in-neighbors outside it.
/// The subset must be a nonempty proper subset of the node set.
bool isRReachable(const Digraph& g, std::span<const int> subset, int r);

/// Exhaustive robustness check: every pair of disjoint nonempty subsets
/// must have at least one r-reachable member. Exact; refuses graphs above
/// kExhaustiveRobustnessCap. On a false result, fills *witness (when
/// given) with a falsifying pair.
bool isRRobust(const Digraph& g, int r, RobustnessWitness* witness = nullptr);

/// Largest r for which the graph is r-robust, with a witness against r+1.
RobustnessCertificate maxRobustness(const Digraph& g);

/// Documented robustness of the k-circulant digraph: ceil(k/2). Validated
/// by brute force at small n for even n or odd k; in the remaining parity
/// case (odd n, even k) the exhaustive value is one higher, so this is a
/// certified lower bound, not always the maximum.
int circulantRobustness(int k);

/// Exhaustive certificate within the cap, generator formula beyond it.
RobustnessCertificate certifyCirculant(int n, int k);

}  // namespace dpmsr
