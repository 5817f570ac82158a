// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "export.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

#include "errors.hpp"
#include "textio.hpp"

namespace dpmsr {

namespace {

const char* kHonest = "honest";
const char* kFaulty = "faulty";

void writeFile(const std::string& dir, const std::string& name,
               const std::function<void(std::ostream&)>& body) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory: " + dir);
  const std::string path = (fs::path(dir) / name).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write: " + path);
  body(out);
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

void writeTraceCsv(std::ostream& out, const SimConfig& cfg, const RunResult& rr) {
  const Trace& t = rr.trace;
  const int K = cfg.rounds;
  std::vector<char> malicious(cfg.graph.nodeCount(), 0);
  for (const auto& s : cfg.faulty) {
    malicious[s.node] = s.behavior == FaultyBehavior::Malicious;
  }
  out << "round,agent_id,role,theta,message_value\n";
  for (int k = 0; k <= K; ++k) {
    size_t h = 0, fi = 0;
    for (int node = 0; node < cfg.graph.nodeCount(); ++node) {
      const bool honest = h < t.honestNodes.size() && t.honestNodes[h] == node;
      out << k << ',' << node << ',';
      if (honest) {
        out << kHonest << ',' << formatDouble(t.theta[k][h]) << ',';
        if (k < K) out << formatDouble(t.honestMessage[k][h]);
        ++h;
      } else {
        // theta column: the attack signal's deterministic part (first edge
        // slot); message_value only when the value is shared (malicious).
        out << kFaulty << ',';
        if (k < K && !t.faultyDeterministic[k][fi].empty()) {
          out << formatDouble(t.faultyDeterministic[k][fi][0]);
        }
        out << ',';
        if (k < K && malicious[node] && !t.faultyMessage[k][fi].empty()) {
          out << formatDouble(t.faultyMessage[k][fi][0]);
        }
        ++fi;
      }
      out << '\n';
    }
  }
}

bool hasByzantine(const SimConfig& cfg) {
  for (const auto& s : cfg.faulty) {
    if (s.behavior == FaultyBehavior::Byzantine) return true;
  }
  return false;
}

void writeByzantineCsv(std::ostream& out, const SimConfig& cfg, const RunResult& rr) {
  const Trace& t = rr.trace;
  out << "round,from,to,value\n";
  for (int k = 0; k < cfg.rounds; ++k) {
    for (size_t fi = 0; fi < t.faultyNodes.size(); ++fi) {
      const int node = t.faultyNodes[fi];
      bool byzantine = false;
      for (const auto& s : cfg.faulty) {
        if (s.node == node) byzantine = s.behavior == FaultyBehavior::Byzantine;
      }
      if (!byzantine) continue;
      auto outNbrs = cfg.graph.outNeighbors(node);
      for (size_t slot = 0; slot < outNbrs.size(); ++slot) {
        out << k << ',' << node << ',' << outNbrs[slot] << ','
            << formatDouble(t.faultyMessage[k][fi][slot]) << '\n';
      }
    }
  }
}

void writeSpreadCsv(std::ostream& out, const ConvergenceStats& stats) {
  out << "round,spread\n";
  for (size_t k = 0; k < stats.spread.size(); ++k) {
    out << k << ',' << formatDouble(stats.spread[k]) << '\n';
  }
}

void writeRunSummary(std::ostream& out, const SimConfig& cfg, const RunResult& rr) {
  out << "rounds = " << cfg.rounds << "\n";
  out << "honest = " << rr.trace.honestNodes.size() << "\n";
  out << "faulty = " << rr.trace.faultyNodes.size() << "\n";
  out << "final_spread = " << formatDouble(rr.stats.finalSpread) << "\n";
  out << "final_mean = " << formatDouble(rr.stats.finalMean) << "\n";
}

void writeMcSummary(std::ostream& out, const McSummary& mc) {
  out << "runs = " << mc.runs << "\n";
  out << "mean = " << formatDouble(mc.mean) << "\n";
  out << "variance = " << formatDouble(mc.variance) << "\n";
  out << "var_lower_bound = " << formatDouble(mc.varLower) << "\n";
  out << "var_upper_bound = " << formatDouble(mc.varUpper) << "\n";
  out << "hull_min = " << formatDouble(mc.hullMin) << "\n";
  out << "hull_max = " << formatDouble(mc.hullMax) << "\n";
  out << "degenerate = " << (mc.degenerate ? 1 : 0) << "\n";
  out << "bin_left,bin_right,count\n";
  for (size_t b = 0; b < mc.binCounts.size(); ++b) {
    out << formatDouble(mc.binEdges[b]) << ',' << formatDouble(mc.binEdges[b + 1]) << ','
        << mc.binCounts[b] << '\n';
  }
}

void writeHistogramCsv(std::ostream& out, const McSummary& mc) {
  out << "bin_left,bin_right,count\n";
  for (size_t b = 0; b < mc.binCounts.size(); ++b) {
    out << formatDouble(mc.binEdges[b]) << ',' << formatDouble(mc.binEdges[b + 1]) << ','
        << mc.binCounts[b] << '\n';
  }
}

void writeBudgetReport(std::ostream& out, const BudgetReport& report) {
  out << "epsilon_fault_free = " << formatDouble(report.epsilonFaultFree) << "\n";
  out << "epsilon_with_faults = " << formatDouble(report.epsilonWithFaults) << "\n";
  out << "var_lower = " << formatDouble(report.varLower) << "\n";
  out << "var_upper = " << formatDouble(report.varUpper) << "\n";
  for (const auto& [p, r] : report.accuracy) {
    out << "accuracy_p = " << formatDouble(p) << "\n";
    out << "accuracy_r = " << formatDouble(r) << "\n";
  }
}

void exportRun(const std::string& dir, const SimConfig& cfg, const RunResult& rr) {
  writeFile(dir, "trace.csv", [&](std::ostream& o) { writeTraceCsv(o, cfg, rr); });
  writeFile(dir, "spread.csv", [&](std::ostream& o) { writeSpreadCsv(o, rr.stats); });
  writeFile(dir, "run_summary.txt",
            [&](std::ostream& o) { writeRunSummary(o, cfg, rr); });
  if (hasByzantine(cfg)) {
    writeFile(dir, "byzantine_messages.csv",
              [&](std::ostream& o) { writeByzantineCsv(o, cfg, rr); });
  }
}

void exportMc(const std::string& dir, const McSummary& mc) {
  writeFile(dir, "mc_summary.txt", [&](std::ostream& o) { writeMcSummary(o, mc); });
  writeFile(dir, "histogram.csv", [&](std::ostream& o) { writeHistogramCsv(o, mc); });
}

}  // namespace dpmsr
