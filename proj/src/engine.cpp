// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "privacy.hpp"
#include "textio.hpp"

namespace dpmsr {

namespace {

// Stream-path domain tags: honest transmit noise, malicious per-round
// noise, Byzantine per-edge noise.
constexpr uint64_t kHonestDomain = 1;
constexpr uint64_t kMaliciousDomain = 2;
constexpr uint64_t kByzantineDomain = 3;

std::vector<int> sortedFaultyNodes(const SimConfig& cfg) {
  std::vector<int> nodes;
  nodes.reserve(cfg.faulty.size());
  for (const auto& s : cfg.faulty) nodes.push_back(s.node);
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

std::vector<int> honestNodesOf(const SimConfig& cfg) {
  std::vector<char> faulty(cfg.graph.nodeCount(), 0);
  for (const auto& s : cfg.faulty) {
    if (s.node >= 0 && s.node < cfg.graph.nodeCount()) faulty[s.node] = 1;
  }
  std::vector<int> honest;
  for (int i = 0; i < cfg.graph.nodeCount(); ++i) {
    if (!faulty[i]) honest.push_back(i);
  }
  return honest;
}

// Faulty specs reordered by ascending node id, matching trace indexing.
std::vector<const FaultySpec*> sortedFaultySpecs(const SimConfig& cfg) {
  std::vector<const FaultySpec*> specs;
  specs.reserve(cfg.faulty.size());
  for (const auto& s : cfg.faulty) specs.push_back(&s);
  std::sort(specs.begin(), specs.end(),
            [](const FaultySpec* a, const FaultySpec* b) { return a->node < b->node; });
  return specs;
}

}  // namespace

void validateConfig(const SimConfig& cfg) {
  const int n = cfg.graph.nodeCount();
  if (cfg.f < 0) throw std::invalid_argument("f must be non-negative");
  if (cfg.rounds < 0) throw std::invalid_argument("rounds must be non-negative");
  const int phi = static_cast<int>(cfg.faulty.size());
  if (phi > cfg.f) {
    throw std::invalid_argument("faulty set size " + formatInt(phi) +
                                " exceeds the design parameter f=" + formatInt(cfg.f));
  }
  std::set<int> seen;
  for (const auto& s : cfg.faulty) {
    if (s.node < 0 || s.node >= n) {
      throw std::invalid_argument("faulty node " + formatInt(s.node) + " out of range");
    }
    if (!seen.insert(s.node).second) {
      throw std::invalid_argument("faulty node " + formatInt(s.node) + " listed twice");
    }
    for (const auto& [nbr, w] : s.edgeWaveforms) {
      if (s.behavior == FaultyBehavior::Malicious) {
        throw std::invalid_argument("malicious agent " + formatInt(s.node) +
                                    " cannot carry per-edge waveforms");
      }
      if (!cfg.graph.hasEdge(s.node, nbr)) {
        throw std::invalid_argument("faulty agent " + formatInt(s.node) +
                                    " has no out-edge to " + formatInt(nbr));
      }
    }
  }
  const auto honest = honestNodesOf(cfg);
  if (honest.empty()) throw std::invalid_argument("no honest agents left");
  if (cfg.theta0.size() != honest.size()) {
    throw std::invalid_argument("theta0 has " + formatInt(cfg.theta0.size()) +
                                " entries for " + formatInt(honest.size()) +
                                " honest agents");
  }
  for (int i : honest) {
    if (cfg.graph.inDegree(i) < 2 * cfg.f + 1) {
      throw std::invalid_argument("honest agent " + formatInt(i) + " has in-degree " +
                                  formatInt(cfg.graph.inDegree(i)) + " < 2f+1 = " +
                                  formatInt(2 * cfg.f + 1));
    }
  }
}

std::optional<RobustnessCertificate> tryCertify(const Digraph& g) {
  if (g.nodeCount() > kExhaustiveRobustnessCap) return std::nullopt;
  return maxRobustness(g);
}

std::vector<std::string> robustnessWarnings(
    const SimConfig& cfg, const std::optional<RobustnessCertificate>& cert) {
  std::vector<std::string> warnings;
  auto check = [&](int needed, const std::string& purpose) {
    if (!cert) {
      warnings.push_back("cannot certify " + formatInt(needed) + "-robustness (graph too "
                         "large for exhaustive checking and no generator formula); " +
                         purpose + " is unverified");
      return;
    }
    if (cert->r >= needed) return;
    if (cert->method == RobustnessMethod::Exhaustive) {
      warnings.push_back("graph robustness is exactly " + formatInt(cert->r) + " < " +
                         formatInt(needed) + "; " + purpose + " does not apply");
    } else {
      warnings.push_back("certified robustness lower bound " + formatInt(cert->r) +
                         " < " + formatInt(needed) + "; " + purpose + " is unverified");
    }
  };
  check(2 * cfg.f + 1, "the convergence guarantee");
  check(3 * cfg.f + 1, "the variance lower bound");
  return warnings;
}

int Trace::honestIndexOf(int node) const {
  auto it = std::lower_bound(honestNodes.begin(), honestNodes.end(), node);
  if (it == honestNodes.end() || *it != node) {
    throw std::invalid_argument("node " + formatInt(node) + " is not honest");
  }
  return static_cast<int>(it - honestNodes.begin());
}

SeededNoiseSource::SeededNoiseSource(const SimConfig& cfg, int runIndex)
    : cfg_(cfg), specs_(sortedFaultySpecs(cfg)) {
  const auto honest = honestNodesOf(cfg);
  const uint64_t runTag = static_cast<uint64_t>(runIndex);
  honestStreams_.reserve(honest.size());
  for (int node : honest) {
    honestStreams_.push_back(RngStream::derive(
        cfg.masterSeed, {kHonestDomain, runTag, static_cast<uint64_t>(node)}));
  }
  faultyStreams_.resize(specs_.size());
  cachedRound_.assign(specs_.size(), -1);
  cachedDraw_.assign(specs_.size(), 0.0);
  for (size_t fi = 0; fi < specs_.size(); ++fi) {
    const auto& s = *specs_[fi];
    if (s.behavior == FaultyBehavior::Malicious) {
      faultyStreams_[fi].push_back(RngStream::derive(
          cfg.masterSeed, {kMaliciousDomain, runTag, static_cast<uint64_t>(s.node)}));
    } else {
      const int d = cfg.graph.outDegree(s.node);
      for (int slot = 0; slot < d; ++slot) {
        faultyStreams_[fi].push_back(RngStream::derive(
            cfg.masterSeed, {kByzantineDomain, runTag, static_cast<uint64_t>(s.node),
                             static_cast<uint64_t>(slot)}));
      }
    }
  }
}

double SeededNoiseSource::honestDraw(int honestIndex, int k) {
  if (cfg_.zeroNoise) return 0.0;
  return sampleLaplace(cfg_.schedule, k, honestStreams_[honestIndex]);
}

double SeededNoiseSource::faultyDraw(int faultyIndex, int edgeSlot, int k) {
  const FaultySpec& s = *specs_[faultyIndex];
  if (cfg_.zeroNoise || !s.noise) return 0.0;
  if (s.behavior == FaultyBehavior::Malicious) {
    if (cachedRound_[faultyIndex] != k) {
      cachedDraw_[faultyIndex] = sampleLaplace(*s.noise, k, faultyStreams_[faultyIndex][0]);
      cachedRound_[faultyIndex] = k;
    }
    return cachedDraw_[faultyIndex];
  }
  return sampleLaplace(*s.noise, k, faultyStreams_[faultyIndex][edgeSlot]);
}

ReplayNoiseSource::ReplayNoiseSource(std::vector<std::vector<double>> honest,
                                     std::vector<std::vector<std::vector<double>>> faulty)
    : honest_(std::move(honest)), faulty_(std::move(faulty)) {}

double ReplayNoiseSource::honestDraw(int honestIndex, int k) {
  return honest_.at(k).at(honestIndex);
}

double ReplayNoiseSource::faultyDraw(int faultyIndex, int edgeSlot, int k) {
  return faulty_.at(k).at(faultyIndex).at(edgeSlot);
}

RunResult runWithNoise(const SimConfig& cfg, NoiseSource& noise) {
  validateConfig(cfg);
  const int K = cfg.rounds;
  const auto honest = honestNodesOf(cfg);
  const auto specs = sortedFaultySpecs(cfg);
  const int nh = static_cast<int>(honest.size());
  const int nf = static_cast<int>(specs.size());

  std::vector<int> honestIndex(cfg.graph.nodeCount(), -1);
  for (int h = 0; h < nh; ++h) honestIndex[honest[h]] = h;
  std::vector<int> faultyIndex(cfg.graph.nodeCount(), -1);
  for (int fi = 0; fi < nf; ++fi) faultyIndex[specs[fi]->node] = fi;

  std::vector<HonestAgent> agents;
  agents.reserve(nh);
  for (int h = 0; h < nh; ++h) {
    agents.emplace_back(honest[h], cfg.graph.inDegree(honest[h]), cfg.f, cfg.theta0[h]);
  }
  std::vector<FaultyAgent> faultyAgents;
  faultyAgents.reserve(nf);
  for (int fi = 0; fi < nf; ++fi) {
    const auto& s = *specs[fi];
    auto out = cfg.graph.outNeighbors(s.node);
    FaultyAgent agent(s.node, s.behavior, s.waveform,
                      std::vector<int>(out.begin(), out.end()), s.noise);
    for (const auto& [nbr, w] : s.edgeWaveforms) agent.setEdgeWaveform(nbr, w);
    if (s.stateAttack) agent.setStateAttack(s.stateAttack);
    faultyAgents.push_back(std::move(agent));
  }
  // slot of edge (faulty -> victim) in the faulty agent's sorted out list
  std::vector<std::vector<int>> slotOfVictim(nf);
  for (int fi = 0; fi < nf; ++fi) {
    slotOfVictim[fi].assign(cfg.graph.nodeCount(), -1);
    auto out = cfg.graph.outNeighbors(specs[fi]->node);
    for (int slot = 0; slot < static_cast<int>(out.size()); ++slot) {
      slotOfVictim[fi][out[slot]] = slot;
    }
  }

  Trace trace;
  trace.honestNodes = honest;
  trace.faultyNodes = sortedFaultyNodes(cfg);
  trace.theta.reserve(K + 1);
  trace.theta.push_back(cfg.theta0);
  trace.honestMessage.resize(K);
  trace.honestNoise.resize(K);
  trace.faultyMessage.resize(K);
  trace.faultyNoise.resize(K);
  trace.faultyDeterministic.resize(K);
  trace.trims.resize(K);

  for (int k = 0; k < K; ++k) {
    // Transmit: everyone sends from its round-k state.
    auto& xs = trace.honestMessage[k];
    auto& etas = trace.honestNoise[k];
    xs.resize(nh);
    etas.resize(nh);
    for (int h = 0; h < nh; ++h) {
      etas[h] = noise.honestDraw(h, k);
      xs[h] = agents[h].theta() + etas[h];
    }
    auto& fvals = trace.faultyMessage[k];
    auto& fetas = trace.faultyNoise[k];
    auto& fdets = trace.faultyDeterministic[k];
    fvals.resize(nf);
    fetas.resize(nf);
    fdets.resize(nf);
    for (int fi = 0; fi < nf; ++fi) {
      const auto& s = *specs[fi];
      const auto out = cfg.graph.outNeighbors(s.node);
      const int d = static_cast<int>(out.size());
      fvals[fi].resize(d);
      fetas[fi].resize(d);
      fdets[fi].resize(d);
      if (s.behavior == FaultyBehavior::Malicious && d > 0) {
        double det = faultyAgents[fi].deterministicPart(out[0], k, &trace.theta);
        if (s.attackShift) det += s.attackShift(out[0], k);
        const double eta = noise.faultyDraw(fi, 0, k);
        const double value = det + eta;
        for (int slot = 0; slot < d; ++slot) {
          fdets[fi][slot] = det;
          fetas[fi][slot] = eta;
          fvals[fi][slot] = value;
        }
      } else {
        for (int slot = 0; slot < d; ++slot) {
          double det = faultyAgents[fi].deterministicPart(out[slot], k, &trace.theta);
          if (s.attackShift) det += s.attackShift(out[slot], k);
          fdets[fi][slot] = det;
          fetas[fi][slot] = noise.faultyDraw(fi, slot, k);
          fvals[fi][slot] = fdets[fi][slot] + fetas[fi][slot];
        }
      }
    }

    // Receive and update.
    auto& trims = trace.trims[k];
    trims.resize(nh);
    std::vector<double> nextTheta(nh);
    for (int h = 0; h < nh; ++h) {
      const int node = honest[h];
      std::vector<Message> received;
      received.reserve(cfg.graph.inDegree(node));
      for (int j : cfg.graph.inNeighbors(node)) {
        if (honestIndex[j] >= 0) {
          received.push_back(Message{j, xs[honestIndex[j]]});
        } else {
          const int fi = faultyIndex[j];
          received.push_back(Message{j, fvals[fi][slotOfVictim[fi][node]]});
        }
      }
      TrimOutcome outcome = trim(std::move(received), cfg.f);
      auto senders = [](const std::vector<Message>& ms) {
        std::vector<int> ids;
        ids.reserve(ms.size());
        for (const auto& m : ms) ids.push_back(m.sender);
        return ids;
      };
      trims[h] = TrimRecord{senders(outcome.kept), senders(outcome.removedLow),
                            senders(outcome.removedHigh)};
      nextTheta[h] = updateState(agents[h], outcome);
    }
    trace.theta.push_back(std::move(nextTheta));
  }

  ConvergenceStats stats;
  stats.spread.reserve(K + 1);
  for (const auto& row : trace.theta) {
    auto [lo, hi] = std::minmax_element(row.begin(), row.end());
    stats.spread.push_back(*hi - *lo);
  }
  stats.finalSpread = stats.spread.back();
  double sum = 0.0;
  for (double v : trace.theta.back()) sum += v;
  stats.finalMean = sum / nh;
  return RunResult{std::move(trace), std::move(stats)};
}

RunResult run(const SimConfig& cfg, int runIndex) {
  SeededNoiseSource noise(cfg, runIndex);
  return runWithNoise(cfg, noise);
}

std::vector<std::vector<double>> reconstructRoundMatrix(const SimConfig& cfg,
                                                        const Trace& trace, int k) {
  if (!trace.faultyNodes.empty()) {
    throw std::invalid_argument(
        "round-matrix reconstruction is defined for fault-free runs only");
  }
  if (k < 0 || k >= static_cast<int>(trace.trims.size())) {
    throw std::invalid_argument("round index out of range");
  }
  const int nh = static_cast<int>(trace.honestNodes.size());
  std::vector<std::vector<double>> m(nh, std::vector<double>(nh, 0.0));
  for (int h = 0; h < nh; ++h) {
    const int node = trace.honestNodes[h];
    const double a =
        1.0 / static_cast<double>(cfg.graph.inDegree(node) - 2 * cfg.f + 1);
    m[h][h] = a;
    for (int j : trace.trims[k][h].kept) m[h][trace.honestIndexOf(j)] = a;
  }
  return m;
}

double minHonestWeight(const SimConfig& cfg) {
  const auto honest = honestNodesOf(cfg);
  double best = 1.0;
  for (int node : honest) {
    best = std::min(best, 1.0 / static_cast<double>(cfg.graph.inDegree(node) -
                                                    2 * cfg.f + 1));
  }
  return best;
}

namespace {

void buildHistogram(McSummary& mc, int requestedBins) {
  const auto& s = mc.samples;
  const auto [loIt, hiIt] = std::minmax_element(s.begin(), s.end());
  const double lo = *loIt, hi = *hiIt;
  if (lo == hi) {
    mc.binEdges = {lo, hi};
    mc.binCounts = {static_cast<long>(s.size())};
    return;
  }
  int bins = requestedBins;
  if (bins <= 0) {
    // Freedman-Diaconis; falls back to a sqrt rule when the IQR vanishes.
    std::vector<double> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    const size_t n = sorted.size();
    const double q1 = sorted[n / 4];
    const double q3 = sorted[(3 * n) / 4];
    const double iqr = q3 - q1;
    if (iqr > 0.0) {
      const double width = 2.0 * iqr / std::cbrt(static_cast<double>(n));
      bins = static_cast<int>(std::ceil((hi - lo) / width));
    } else {
      bins = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    }
    bins = std::clamp(bins, 1, 4096);
  }
  mc.binEdges.resize(bins + 1);
  for (int b = 0; b <= bins; ++b) {
    mc.binEdges[b] = lo + (hi - lo) * (static_cast<double>(b) / bins);
  }
  mc.binEdges.back() = hi;
  mc.binCounts.assign(bins, 0);
  for (double v : s) {
    int b = static_cast<int>((v - lo) / (hi - lo) * bins);
    b = std::clamp(b, 0, bins - 1);
    ++mc.binCounts[b];
  }
}

}  // namespace

McSummary monteCarlo(const SimConfig& cfg, const McOptions& opt) {
  validateConfig(cfg);
  if (opt.runs < 1) throw std::invalid_argument("Monte Carlo needs at least one run");
  const int runs = opt.runs;
  const auto honest = honestNodesOf(cfg);
  const int nh = static_cast<int>(honest.size());
  const int K = cfg.rounds;

  McSummary mc;
  mc.runs = runs;
  mc.samples.assign(runs, 0.0);
  std::vector<std::vector<std::vector<double>>> perRunTheta;
  if (opt.keepRoundStats) {
    perRunTheta.assign(runs, {});
  }

  int workers = opt.workers > 0 ? opt.workers
                                : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, runs);

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::string firstError;
  std::mutex errorMutex;
  auto body = [&] {
    for (;;) {
      const int r = next.fetch_add(1);
      if (r >= runs || failed.load()) return;
      try {
        RunResult rr = run(cfg, r);
        mc.samples[r] = rr.stats.finalMean;
        if (opt.keepRoundStats) perRunTheta[r] = std::move(rr.trace.theta);
      } catch (...) {
        bool expected = false;
        if (failed.compare_exchange_strong(expected, true)) {
          std::lock_guard<std::mutex> lock(errorMutex);
          try {
            throw;
          } catch (const std::exception& e) {
            firstError = e.what();
          } catch (...) {
            firstError = "unknown error";
          }
        }
        return;
      }
    }
  };
  if (workers == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) throw std::runtime_error("Monte Carlo run failed: " + firstError);

  // Aggregate in run-index order.
  double sum = 0.0;
  for (double v : mc.samples) sum += v;
  mc.mean = sum / runs;
  const bool allEqual =
      std::all_of(mc.samples.begin(), mc.samples.end(),
                  [&](double v) { return v == mc.samples.front(); });
  if (runs > 1 && !allEqual) {
    double ss = 0.0;
    for (double v : mc.samples) ss += (v - mc.mean) * (v - mc.mean);
    mc.variance = ss / (runs - 1);
  } else {
    mc.variance = 0.0;
    mc.degenerate = runs == 1;
  }
  buildHistogram(mc, opt.histogramBins);

  AccuracyParams ap;
  ap.n = cfg.graph.nodeCount();
  ap.f = cfg.f;
  ap.c = cfg.schedule.c();
  ap.q = cfg.schedule.q();
  ap.minWeight = minHonestWeight(cfg);
  const VarianceBounds vb = varianceBounds(ap);
  mc.varLower = vb.lower;
  mc.varUpper = vb.upper;
  const auto [hullLo, hullHi] = std::minmax_element(cfg.theta0.begin(), cfg.theta0.end());
  mc.hullMin = *hullLo;
  mc.hullMax = *hullHi;

  if (opt.keepRoundStats) {
    mc.roundMean.assign(K + 1, std::vector<double>(nh, 0.0));
    mc.roundSd.assign(K + 1, std::vector<double>(nh, 0.0));
    for (int k = 0; k <= K; ++k) {
      for (int h = 0; h < nh; ++h) {
        double acc = 0.0;
        for (int r = 0; r < runs; ++r) acc += perRunTheta[r][k][h];
        const double mean = acc / runs;
        mc.roundMean[k][h] = mean;
        if (runs > 1) {
          double ss = 0.0;
          for (int r = 0; r < runs; ++r) {
            const double d = perRunTheta[r][k][h] - mean;
            ss += d * d;
          }
          mc.roundSd[k][h] = std::sqrt(ss / (runs - 1));
        }
      }
    }
  }
  return mc;
}

ValidityReport validityCheck(const McSummary& mc) {
  if (mc.roundMean.empty()) {
    throw std::invalid_argument("validity check needs per-round statistics "
                                "(run Monte Carlo with keepRoundStats)");
  }
  ValidityReport report;
  const int rounds = static_cast<int>(mc.roundMean.size()) - 1;
  const int nh = static_cast<int>(mc.roundMean[0].size());
  const double rootRuns = std::sqrt(static_cast<double>(mc.runs));
  for (int k = 0; k < rounds; ++k) {
    const auto& cur = mc.roundMean[k];
    int jLo = 0, jHi = 0;
    for (int j = 1; j < nh; ++j) {
      if (cur[j] < cur[jLo]) jLo = j;
      if (cur[j] > cur[jHi]) jHi = j;
    }
    const double seLo = mc.roundSd[k][jLo] / rootRuns;
    const double seHi = mc.roundSd[k][jHi] / rootRuns;
    for (int h = 0; h < nh; ++h) {
      ++report.checks;
      const double m = mc.roundMean[k + 1][h];
      const double se = mc.roundSd[k + 1][h] / rootRuns;
      const double lo = cur[jLo] - 3.0 * (se + seLo);
      const double hi = cur[jHi] + 3.0 * (se + seHi);
      if (m < lo || m > hi) {
        ++report.violations;
        if (report.details.size() < 32) {
          report.details.push_back("round " + formatInt(k + 1) + " agent index " +
                                   formatInt(h) + ": mean " + formatDouble(m) +
                                   " outside [" + formatDouble(lo) + ", " +
                                   formatDouble(hi) + "]");
        }
      }
    }
  }
  return report;
}

}  // namespace dpmsr
