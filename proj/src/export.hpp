// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "engine.hpp"
#include "privacy.hpp"

namespace dpmsr {

// All writers emit locale-independent, newline-terminated text with stable
// headers, so byte-identical inputs give byte-identical files.

/// One row per (round, agent): round,agent_id,role,theta,message_value.
/// Faulty rows show the attack signal's deterministic part as theta and,
/// for malicious agents, the broadcast value; Byzantine per-edge values
/// live in the companion file.
void writeTraceCsv(std::ostream& out, const SimConfig& cfg, const RunResult& rr);

/// Companion per-edge file: round,from,to,value.
void writeByzantineCsv(std::ostream& out, const SimConfig& cfg, const RunResult& rr);

bool hasByzantine(const SimConfig& cfg);

void writeSpreadCsv(std::ostream& out, const ConvergenceStats& stats);
void writeRunSummary(std::ostream& out, const SimConfig& cfg, const RunResult& rr);

void writeMcSummary(std::ostream& out, const McSummary& mc);
void writeHistogramCsv(std::ostream& out, const McSummary& mc);

struct BudgetReport {
  double epsilonFaultFree = 0.0;
  double epsilonWithFaults = 0.0;
  double varLower = 0.0;
  double varUpper = 0.0;
  std::vector<std::pair<double, double>> accuracy;  // (p, radius)
};

void writeBudgetReport(std::ostream& out, const BudgetReport& report);

/// Writes trace.csv, spread.csv, run_summary.txt and (when a Byzantine
/// agent exists) byzantine_messages.csv into dir, creating it if needed.
void exportRun(const std::string& dir, const SimConfig& cfg, const RunResult& rr);

/// Writes mc_summary.txt and histogram.csv into dir.
void exportMc(const std::string& dir, const McSummary& mc);

}  // namespace dpmsr
