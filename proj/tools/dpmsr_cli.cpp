// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
//
// Command-line front end over the dpmsr C API.
//
// Exit codes: 0 success; 1 config/invariant error (including a failed
// robustness check); 2 robustness-precondition warnings escalated by
// --strict.
#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpmsr/dpmsr.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitStrictWarning = 2;

int fail(const dpmsr_error& err) {
  std::cerr << "error: " << err.message << "\n";
  return kExitError;
}

struct ExperimentHandle {
  dpmsr_experiment* e = nullptr;
  ~ExperimentHandle() { dpmsr_experiment_free(e); }
};

struct GraphHandle {
  dpmsr_graph* g = nullptr;
  ~GraphHandle() { dpmsr_graph_free(g); }
};

struct CommonFlags {
  std::string configPath;
  uint64_t seed = 0;
  int rounds = 0;
  int runs = 0;
  std::string output;
  bool strict = false;
  bool zeroNoise = false;
  bool noFaults = false;
  int workers = 0;

  CLI::Option* seedOpt = nullptr;
  CLI::Option* roundsOpt = nullptr;
  CLI::Option* runsOpt = nullptr;
  CLI::Option* outputOpt = nullptr;
};

void addCommonFlags(CLI::App* cmd, CommonFlags& flags, bool withRuns) {
  cmd->add_option("--config", flags.configPath, "experiment config file")->required();
  flags.seedOpt = cmd->add_option("--seed", flags.seed, "override the master seed");
  flags.roundsOpt = cmd->add_option("--rounds", flags.rounds, "override the horizon K");
  if (withRuns) {
    flags.runsOpt =
        cmd->add_option("--runs", flags.runs, "override the Monte Carlo run count");
  }
  flags.outputOpt =
      cmd->add_option("--output", flags.output, "override the output directory");
  cmd->add_flag("--strict", flags.strict,
                "treat unmet robustness preconditions as errors (exit 2)");
  cmd->add_flag("--zero-noise", flags.zeroNoise, "test mode: every noise draw is 0");
  cmd->add_flag("--no-faults", flags.noFaults, "drop the faulty agents from the config");
}

// Loads the experiment, applies overrides, prints warnings to stderr.
// Returns an exit code != 0 when the caller should stop.
int prepare(const CommonFlags& flags, ExperimentHandle& handle) {
  dpmsr_error err{};
  if (dpmsr_experiment_load(flags.configPath.c_str(), &handle.e, &err) != DPMSR_OK) {
    return fail(err);
  }
  if (flags.seedOpt && flags.seedOpt->count() > 0) {
    dpmsr_experiment_set_seed(handle.e, flags.seed);
  }
  if (flags.roundsOpt && flags.roundsOpt->count() > 0) {
    dpmsr_experiment_set_rounds(handle.e, flags.rounds);
  }
  if (flags.runsOpt && flags.runsOpt->count() > 0) {
    dpmsr_experiment_set_runs(handle.e, flags.runs);
  }
  if (flags.outputOpt && flags.outputOpt->count() > 0) {
    dpmsr_experiment_set_output_dir(handle.e, flags.output.c_str());
  }
  dpmsr_experiment_set_zero_noise(handle.e, flags.zeroNoise ? 1 : 0);
  dpmsr_experiment_set_no_faults(handle.e, flags.noFaults ? 1 : 0);

  int needed = dpmsr_experiment_warnings(handle.e, nullptr, 0, &err);
  if (needed < 0) return fail(err);
  if (needed > 0) {
    std::string buf(static_cast<size_t>(needed) + 1, '\0');
    dpmsr_experiment_warnings(handle.e, buf.data(), buf.size(), &err);
    buf.resize(static_cast<size_t>(needed));
    std::cerr << "warning:\n" << buf;
    if (flags.strict) {
      std::cerr << "strict mode: unmet robustness preconditions are fatal\n";
      return kExitStrictWarning;
    }
  }
  return kExitOk;
}

int cmdRun(const CommonFlags& flags) {
  ExperimentHandle handle;
  if (int rc = prepare(flags, handle); rc != kExitOk) return rc;
  dpmsr_error err{};
  dpmsr_run_stats stats{};
  if (dpmsr_experiment_run(handle.e, &stats, &err) != DPMSR_OK) return fail(err);
  std::cout << "rounds = " << stats.rounds << "\n"
            << "honest = " << stats.honest << "\n"
            << "faulty = " << stats.faulty << "\n"
            << "final_spread = " << stats.final_spread << "\n"
            << "final_mean = " << stats.final_mean << "\n";
  return kExitOk;
}

int cmdMc(const CommonFlags& flags) {
  ExperimentHandle handle;
  if (int rc = prepare(flags, handle); rc != kExitOk) return rc;
  dpmsr_error err{};
  dpmsr_mc_stats stats{};
  if (dpmsr_experiment_monte_carlo(handle.e, flags.workers, &stats, &err) != DPMSR_OK) {
    return fail(err);
  }
  std::cout << "runs = " << stats.runs << "\n"
            << "mean = " << stats.mean << "\n"
            << "variance = " << stats.variance << "\n"
            << "var_lower_bound = " << stats.var_lower << "\n"
            << "var_upper_bound = " << stats.var_upper << "\n"
            << "hull_min = " << stats.hull_min << "\n"
            << "hull_max = " << stats.hull_max << "\n"
            << "degenerate = " << stats.degenerate << "\n";
  return kExitOk;
}

bool parseIntToken(const std::string& token, int& out) {
  try {
    size_t used = 0;
    out = std::stoi(token, &used);
    return used == token.size();
  } catch (const std::exception&) {
    return false;
  }
}

int makeGraph(const std::vector<std::string>& spec, GraphHandle& handle,
              dpmsr_error& err) {
  int n = 0, k = 0;
  if (spec.size() == 3 && spec[0] == "circulant" && parseIntToken(spec[1], n) &&
      parseIntToken(spec[2], k)) {
    return dpmsr_graph_circulant(n, k, &handle.g, &err);
  }
  if (spec.size() == 2 && spec[0] == "file") {
    return dpmsr_graph_load(spec[1].c_str(), &handle.g, &err);
  }
  if (spec.size() == 1) {
    return dpmsr_graph_load(spec[0].c_str(), &handle.g, &err);
  }
  std::snprintf(err.message, sizeof(err.message),
                "graph spec must be 'circulant N K' or an edge-list file path");
  err.status = DPMSR_ERROR_INVALID_ARGUMENT;
  return DPMSR_ERROR_INVALID_ARGUMENT;
}

void printWitness(const dpmsr_robustness_cert& cert) {
  auto printSet = [](const char* name, const int* ids, int len) {
    std::cout << name << " = {";
    for (int i = 0; i < len; ++i) std::cout << (i ? "," : "") << ids[i];
    std::cout << "}\n";
  };
  printSet("witness_a", cert.witness_a, cert.witness_a_len);
  printSet("witness_b", cert.witness_b, cert.witness_b_len);
}

int cmdRobust(const std::vector<std::string>& spec, bool haveLevel, int level) {
  dpmsr_error err{};
  // Large circulants fall back to the documented generator formula; the
  // formula is a lower bound, so it can certify r <= ceil(k/2) but cannot
  // refute a larger r.
  int specN = 0, specK = 0;
  if (spec.size() == 3 && spec[0] == "circulant" && parseIntToken(spec[1], specN) &&
      parseIntToken(spec[2], specK) && specN > DPMSR_EXHAUSTIVE_ROBUSTNESS_CAP) {
    dpmsr_robustness_cert cert{};
    if (dpmsr_circulant_certificate(specN, specK, &cert, &err) != DPMSR_OK) {
      return fail(err);
    }
    if (!haveLevel) {
      std::cout << "r = " << cert.r << "\nmethod = generator-formula\n";
      return kExitOk;
    }
    if (level <= cert.r) {
      std::cout << "robust = yes (certified lower bound " << cert.r
                << ", method generator-formula)\n";
      return kExitOk;
    }
    std::cerr << "error: cannot certify r = " << level
              << " beyond the documented bound " << cert.r
              << " (graph too large for exhaustive checking)\n";
    return kExitError;
  }

  GraphHandle handle;
  if (makeGraph(spec, handle, err) != DPMSR_OK) return fail(err);
  if (!haveLevel) {
    dpmsr_robustness_cert cert{};
    if (dpmsr_graph_max_robustness(handle.g, &cert, &err) != DPMSR_OK) return fail(err);
    std::cout << "r = " << cert.r << "\nmethod = exhaustive\n";
    if (cert.has_witness) printWitness(cert);
    return kExitOk;
  }
  int robust = 0;
  dpmsr_robustness_cert cert{};
  if (dpmsr_graph_is_r_robust(handle.g, level, &robust, &cert, &err) != DPMSR_OK) {
    return fail(err);
  }
  if (robust) {
    std::cout << "robust = yes (r = " << level << ", method exhaustive)\n";
    return kExitOk;
  }
  std::cout << "robust = no (r = " << level << ", method exhaustive)\n";
  if (cert.has_witness) printWitness(cert);
  return kExitError;
}

struct BudgetFlags {
  double delta = 1.0;
  double deltaBar = 1.0;
  double lambda = 0.0;
  int f = 0;
  int dMaxOut = 0;
  double c = 1.0;
  double q = 0.75;
  bool nonOmniscient = false;
  int n = 2;
  double minWeight = 0.25;
  std::vector<double> pValues;
  std::vector<std::string> graphSpec;
};

int cmdBudget(BudgetFlags& flags) {
  dpmsr_error err{};
  if (!flags.graphSpec.empty()) {
    // Derive n, d_max_out and min weight from an actual topology.
    GraphHandle handle;
    if (makeGraph(flags.graphSpec, handle, err) != DPMSR_OK) return fail(err);
    flags.n = dpmsr_graph_node_count(handle.g);
    flags.dMaxOut = dpmsr_graph_max_out_degree(handle.g);
    int maxInDegree = 0;
    for (int i = 0; i < flags.n; ++i) {
      maxInDegree = std::max(maxInDegree, dpmsr_graph_in_degree(handle.g, i));
    }
    flags.minWeight = 1.0 / (maxInDegree - 2 * flags.f + 1);
  }
  if (flags.pValues.empty()) flags.pValues = {0.1, 0.5};

  dpmsr_budget_params params{};
  params.delta = flags.delta;
  params.delta_bar = flags.deltaBar;
  params.lambda = flags.lambda;
  params.f = flags.f;
  params.d_max_out = flags.dMaxOut;
  params.c = flags.c;
  params.q = flags.q;
  params.non_omniscient = flags.nonOmniscient ? 1 : 0;
  params.n = flags.n;
  params.min_weight = flags.minWeight;
  params.p_values = flags.pValues.data();
  params.p_count = static_cast<int>(flags.pValues.size());

  dpmsr_budget_report report{};
  if (dpmsr_budget_compute(&params, &report, &err) != DPMSR_OK) return fail(err);
  int needed = dpmsr_budget_format(&params, &report, nullptr, 0);
  std::string text(static_cast<size_t>(needed) + 1, '\0');
  dpmsr_budget_format(&params, &report, text.data(), text.size());
  text.resize(static_cast<size_t>(needed));
  std::cout << text;
  return kExitOk;
}

int cmdGenGraph(const std::vector<std::string>& spec, const std::string& output) {
  dpmsr_error err{};
  GraphHandle handle;
  if (makeGraph(spec, handle, err) != DPMSR_OK) return fail(err);
  if (dpmsr_graph_save(handle.g, output.c_str(), &err) != DPMSR_OK) return fail(err);
  std::cout << "wrote " << output << " (" << dpmsr_graph_node_count(handle.g)
            << " nodes, " << dpmsr_graph_edge_count(handle.g) << " edges)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dpmsr: resilient consensus simulator with differentially "
               "private messaging"};
  app.require_subcommand(1);

  CommonFlags runFlags;
  CLI::App* runCmd = app.add_subcommand("run", "one execution; writes trace CSVs");
  addCommonFlags(runCmd, runFlags, false);

  CommonFlags mcFlags;
  CLI::App* mcCmd =
      app.add_subcommand("mc", "Monte Carlo campaign; writes summary + histogram");
  addCommonFlags(mcCmd, mcFlags, true);
  mcCmd->add_option("--workers", mcFlags.workers,
                    "worker threads (0: hardware concurrency); never affects results");

  std::vector<std::string> robustSpec;
  int robustLevel = 0;
  CLI::App* robustCmd =
      app.add_subcommand("robust", "certify graph robustness (exact within cap)");
  robustCmd->add_option("spec", robustSpec, "'circulant N K' | 'file PATH' | PATH")
      ->required()
      ->expected(-1);
  CLI::Option* robustLevelOpt =
      robustCmd->add_option("--r", robustLevel, "check this level instead of maximizing");

  BudgetFlags budgetFlags;
  CLI::App* budgetCmd =
      app.add_subcommand("budget", "closed-form privacy/accuracy budget");
  budgetCmd->add_option("--delta", budgetFlags.delta, "adjacency bound");
  budgetCmd->add_option("--delta-bar", budgetFlags.deltaBar, "attack-shift scale (>= 1)");
  budgetCmd->add_option("--lambda", budgetFlags.lambda, "attack-shift decay (< q)");
  budgetCmd->add_option("--f", budgetFlags.f, "fault tolerance design parameter");
  budgetCmd->add_option("--dmax", budgetFlags.dMaxOut, "max out-degree");
  budgetCmd->add_option("--c", budgetFlags.c, "noise scale");
  budgetCmd->add_option("--q", budgetFlags.q, "noise decay (1/2 < q < 1)");
  budgetCmd->add_flag("--non-omniscient", budgetFlags.nonOmniscient,
                      "faulty agents cannot adapt to initial conditions");
  budgetCmd->add_option("--n", budgetFlags.n, "agent count");
  budgetCmd->add_option("--min-weight", budgetFlags.minWeight,
                        "min over honest agents of 1/(in_degree - 2f + 1)");
  budgetCmd->add_option("--p", budgetFlags.pValues, "accuracy levels (default 0.1 0.5)");
  budgetCmd->add_option("--graph", budgetFlags.graphSpec,
                        "derive n/dmax/min-weight from a topology: 'circulant N K' | PATH")
      ->expected(-1);

  std::vector<std::string> genSpec;
  std::string genOutput;
  CLI::App* genCmd = app.add_subcommand("gen-graph", "write a generator's edge list");
  genCmd->add_option("spec", genSpec, "'circulant N K'")->required()->expected(-1);
  genCmd->add_option("--output", genOutput, "output file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (runCmd->parsed()) return cmdRun(runFlags);
    if (mcCmd->parsed()) return cmdMc(mcFlags);
    if (robustCmd->parsed()) {
      return cmdRobust(robustSpec, robustLevelOpt->count() > 0, robustLevel);
    }
    if (budgetCmd->parsed()) return cmdBudget(budgetFlags);
    if (genCmd->parsed()) return cmdGenGraph(genSpec, genOutput);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
