// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "dpmsr/dpmsr.h"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <string>

#include "engine.hpp"
#include "errors.hpp"
#include "experiment.hpp"
#include "export.hpp"
#include "graph.hpp"
#include "privacy.hpp"

using namespace dpmsr;

struct dpmsr_graph {
  Digraph g;
};

struct dpmsr_experiment {
  ExperimentConfig cfg;
  BuildOptions opt;
};

namespace {

void setError(dpmsr_error* err, dpmsr_status status, const char* message) {
  if (!err) return;
  err->status = status;
  std::snprintf(err->message, sizeof(err->message), "%s", message);
}

template <typename F>
dpmsr_status guarded(dpmsr_error* err, F&& body) {
  try {
    body();
    setError(err, DPMSR_OK, "");
    return DPMSR_OK;
  } catch (const GraphTooLargeError& e) {
    setError(err, DPMSR_ERROR_TOO_LARGE, e.what());
    return DPMSR_ERROR_TOO_LARGE;
  } catch (const IoError& e) {
    setError(err, DPMSR_ERROR_IO, e.what());
    return DPMSR_ERROR_IO;
  } catch (const std::invalid_argument& e) {
    setError(err, DPMSR_ERROR_INVALID_ARGUMENT, e.what());
    return DPMSR_ERROR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    setError(err, DPMSR_ERROR_INTERNAL, e.what());
    return DPMSR_ERROR_INTERNAL;
  } catch (...) {
    setError(err, DPMSR_ERROR_INTERNAL, "unknown error");
    return DPMSR_ERROR_INTERNAL;
  }
}

void fillCert(dpmsr_robustness_cert* out, const RobustnessCertificate& cert) {
  if (!out) return;
  std::memset(out, 0, sizeof(*out));
  out->r = cert.r;
  out->method = cert.method == RobustnessMethod::Exhaustive
                    ? DPMSR_METHOD_EXHAUSTIVE
                    : DPMSR_METHOD_GENERATOR_FORMULA;
  if (cert.witness) {
    out->has_witness = 1;
    out->witness_a_len = static_cast<int>(cert.witness->setA.size());
    out->witness_b_len = static_cast<int>(cert.witness->setB.size());
    std::copy(cert.witness->setA.begin(), cert.witness->setA.end(), out->witness_a);
    std::copy(cert.witness->setB.begin(), cert.witness->setB.end(), out->witness_b);
  }
}

int copyOut(const std::string& text, char* buf, size_t buf_len) {
  if (buf && buf_len > 0) {
    const size_t n = std::min(buf_len - 1, text.size());
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
  }
  return static_cast<int>(text.size());
}

BudgetReport computeBudget(const dpmsr_budget_params& p) {
  PrivacyParams pp;
  pp.delta = p.delta;
  pp.deltaBar = p.delta_bar;
  pp.lambda = p.lambda;
  pp.f = p.f;
  pp.dMaxOut = p.d_max_out;
  pp.c = p.c;
  pp.q = p.q;
  pp.nonOmniscient = p.non_omniscient != 0;

  BudgetReport report;
  report.epsilonFaultFree = epsilonFaultFree(pp);
  report.epsilonWithFaults = epsilonWithFaults(pp);

  AccuracyParams ap;
  ap.n = p.n;
  ap.f = p.f;
  ap.c = p.c;
  ap.q = p.q;
  ap.minWeight = p.min_weight;
  const VarianceBounds vb = varianceBounds(ap);
  report.varLower = vb.lower;
  report.varUpper = vb.upper;
  if (p.p_count < 0 || p.p_count > DPMSR_MAX_ACCURACY_LEVELS) {
    throw std::invalid_argument("p_count out of range");
  }
  for (int i = 0; i < p.p_count; ++i) {
    ap.p = p.p_values[i];
    report.accuracy.emplace_back(ap.p, accuracyRadius(ap));
  }
  return report;
}

}  // namespace

extern "C" {

const char* dpmsr_status_name(dpmsr_status status) {
  switch (status) {
    case DPMSR_OK:
      return "ok";
    case DPMSR_ERROR_INVALID_ARGUMENT:
      return "invalid argument";
    case DPMSR_ERROR_IO:
      return "i/o error";
    case DPMSR_ERROR_TOO_LARGE:
      return "too large for exhaustive enumeration";
    case DPMSR_ERROR_INTERNAL:
      return "internal error";
  }
  return "unknown";
}

const char* dpmsr_version(void) { return "0.1.0"; }

dpmsr_status dpmsr_graph_circulant(int n, int k, dpmsr_graph** out, dpmsr_error* err) {
  return guarded(err, [&] {
    if (!out) throw std::invalid_argument("null output handle");
    *out = new dpmsr_graph{Digraph::circulant(n, k)};
  });
}

dpmsr_status dpmsr_graph_complete(int n, dpmsr_graph** out, dpmsr_error* err) {
  return guarded(err, [&] {
    if (!out) throw std::invalid_argument("null output handle");
    *out = new dpmsr_graph{Digraph::complete(n)};
  });
}

dpmsr_status dpmsr_graph_load(const char* path, dpmsr_graph** out, dpmsr_error* err) {
  return guarded(err, [&] {
    if (!out || !path) throw std::invalid_argument("null argument");
    *out = new dpmsr_graph{Digraph::loadEdgeList(path)};
  });
}

dpmsr_status dpmsr_graph_save(const dpmsr_graph* g, const char* path, dpmsr_error* err) {
  return guarded(err, [&] {
    if (!g || !path) throw std::invalid_argument("null argument");
    g->g.saveEdgeList(path);
  });
}

void dpmsr_graph_free(dpmsr_graph* g) { delete g; }

int dpmsr_graph_node_count(const dpmsr_graph* g) { return g ? g->g.nodeCount() : -1; }

int dpmsr_graph_edge_count(const dpmsr_graph* g) { return g ? g->g.edgeCount() : -1; }

int dpmsr_graph_in_degree(const dpmsr_graph* g, int node) {
  if (!g || node < 0 || node >= g->g.nodeCount()) return -1;
  return g->g.inDegree(node);
}

int dpmsr_graph_out_degree(const dpmsr_graph* g, int node) {
  if (!g || node < 0 || node >= g->g.nodeCount()) return -1;
  return g->g.outDegree(node);
}

int dpmsr_graph_min_in_degree(const dpmsr_graph* g) {
  return g ? g->g.minInDegree() : -1;
}

int dpmsr_graph_max_out_degree(const dpmsr_graph* g) {
  return g ? g->g.maxOutDegree() : -1;
}

int dpmsr_graph_in_neighbors(const dpmsr_graph* g, int node, int* buf, int buf_len) {
  if (!g || node < 0 || node >= g->g.nodeCount()) return -1;
  auto nbrs = g->g.inNeighbors(node);
  const int n = static_cast<int>(nbrs.size());
  if (buf) {
    for (int i = 0; i < std::min(n, buf_len); ++i) buf[i] = nbrs[i];
  }
  return n;
}

dpmsr_status dpmsr_graph_is_r_robust(const dpmsr_graph* g, int r, int* robust,
                                     dpmsr_robustness_cert* cert, dpmsr_error* err) {
  return guarded(err, [&] {
    if (!g || !robust) throw std::invalid_argument("null argument");
    RobustnessWitness witness;
    const bool ok = isRRobust(g->g, r, &witness);
    *robust = ok ? 1 : 0;
    if (cert) {
      RobustnessCertificate c;
      c.r = r;
      c.method = RobustnessMethod::Exhaustive;
      if (!ok) c.witness = witness;
      fillCert(cert, c);
    }
  });
}

dpmsr_status dpmsr_graph_max_robustness(const dpmsr_graph* g,
                                        dpmsr_robustness_cert* out, dpmsr_error* err) {
  return guarded(err, [&] {
    if (!g || !out) throw std::invalid_argument("null argument");
    fillCert(out, maxRobustness(g->g));
  });
}

dpmsr_status dpmsr_circulant_certificate(int n, int k, dpmsr_robustness_cert* out,
                                         dpmsr_error* err) {
  return guarded(err, [&] {
    if (!out) throw std::invalid_argument("null argument");
    fillCert(out, certifyCirculant(n, k));
  });
}

dpmsr_status dpmsr_budget_compute(const dpmsr_budget_params* params,
                                  dpmsr_budget_report* out, dpmsr_error* err) {
  return guarded(err, [&] {
    if (!params || !out) throw std::invalid_argument("null argument");
    const BudgetReport report = computeBudget(*params);
    std::memset(out, 0, sizeof(*out));
    out->epsilon_fault_free = report.epsilonFaultFree;
    out->epsilon_with_faults = report.epsilonWithFaults;
    out->var_lower = report.varLower;
    out->var_upper = report.varUpper;
    out->p_count = static_cast<int>(report.accuracy.size());
    for (size_t i = 0; i < report.accuracy.size(); ++i) {
      out->accuracy_r[i] = report.accuracy[i].second;
    }
  });
}

int dpmsr_budget_format(const dpmsr_budget_params* params,
                        const dpmsr_budget_report* report, char* buf, size_t buf_len) {
  if (!params || !report) return -1;
  BudgetReport r;
  r.epsilonFaultFree = report->epsilon_fault_free;
  r.epsilonWithFaults = report->epsilon_with_faults;
  r.varLower = report->var_lower;
  r.varUpper = report->var_upper;
  for (int i = 0; i < report->p_count && i < params->p_count; ++i) {
    r.accuracy.emplace_back(params->p_values[i], report->accuracy_r[i]);
  }
  std::ostringstream text;
  writeBudgetReport(text, r);
  return copyOut(text.str(), buf, buf_len);
}

dpmsr_status dpmsr_experiment_load(const char* path, dpmsr_experiment** out,
                                   dpmsr_error* err) {
  return guarded(err, [&] {
    if (!out || !path) throw std::invalid_argument("null argument");
    *out = new dpmsr_experiment{loadExperimentConfig(path), {}};
  });
}

dpmsr_status dpmsr_experiment_parse(const char* text, dpmsr_experiment** out,
                                    dpmsr_error* err) {
  return guarded(err, [&] {
    if (!out || !text) throw std::invalid_argument("null argument");
    *out = new dpmsr_experiment{parseExperimentConfig(text), {}};
  });
}

void dpmsr_experiment_free(dpmsr_experiment* e) { delete e; }

void dpmsr_experiment_set_seed(dpmsr_experiment* e, uint64_t seed) {
  if (e) e->cfg.seed = seed;
}

void dpmsr_experiment_set_rounds(dpmsr_experiment* e, int rounds) {
  if (e) e->cfg.rounds = rounds;
}

void dpmsr_experiment_set_runs(dpmsr_experiment* e, int runs) {
  if (e) e->cfg.runs = runs;
}

void dpmsr_experiment_set_output_dir(dpmsr_experiment* e, const char* dir) {
  if (e && dir) e->cfg.outputDir = dir;
}

void dpmsr_experiment_set_zero_noise(dpmsr_experiment* e, int on) {
  if (e) e->opt.zeroNoise = on != 0;
}

void dpmsr_experiment_set_no_faults(dpmsr_experiment* e, int on) {
  if (e) e->opt.noFaults = on != 0;
}

int dpmsr_experiment_warnings(const dpmsr_experiment* e, char* buf, size_t buf_len,
                              dpmsr_error* err) {
  int bytes = -1;
  dpmsr_status status = guarded(err, [&] {
    if (!e) throw std::invalid_argument("null experiment");
    const BuiltExperiment built = buildExperiment(e->cfg, e->opt);
    std::string joined;
    for (const auto& w : built.warnings) {
      joined += w;
      joined += '\n';
    }
    bytes = copyOut(joined, buf, buf_len);
  });
  return status == DPMSR_OK ? bytes : -1;
}

dpmsr_status dpmsr_experiment_run(const dpmsr_experiment* e, dpmsr_run_stats* out,
                                  dpmsr_error* err) {
  return guarded(err, [&] {
    if (!e) throw std::invalid_argument("null experiment");
    const BuiltExperiment built = buildExperiment(e->cfg, e->opt);
    const RunResult rr = run(built.sim);
    exportRun(e->cfg.outputDir, built.sim, rr);
    if (out) {
      out->rounds = built.sim.rounds;
      out->honest = static_cast<int>(rr.trace.honestNodes.size());
      out->faulty = static_cast<int>(rr.trace.faultyNodes.size());
      out->final_spread = rr.stats.finalSpread;
      out->final_mean = rr.stats.finalMean;
    }
  });
}

dpmsr_status dpmsr_experiment_monte_carlo(const dpmsr_experiment* e, int workers,
                                          dpmsr_mc_stats* out, dpmsr_error* err) {
  return guarded(err, [&] {
    if (!e) throw std::invalid_argument("null experiment");
    const BuiltExperiment built = buildExperiment(e->cfg, e->opt);
    McOptions opt;
    opt.runs = e->cfg.runs;
    opt.workers = workers;
    const McSummary mc = monteCarlo(built.sim, opt);
    exportMc(e->cfg.outputDir, mc);
    if (out) {
      out->runs = mc.runs;
      out->mean = mc.mean;
      out->variance = mc.variance;
      out->var_lower = mc.varLower;
      out->var_upper = mc.varUpper;
      out->hull_min = mc.hullMin;
      out->hull_max = mc.hullMax;
      out->degenerate = mc.degenerate ? 1 : 0;
    }
  });
}

dpmsr_status dpmsr_experiment_coupling_test(const dpmsr_experiment* e, int i0,
                                            double delta1, int use_pair,
                                            double delta_bar, double lambda,
                                            dpmsr_coupling_result* out,
                                            dpmsr_error* err) {
  return guarded(err, [&] {
    if (!e || !out) throw std::invalid_argument("null argument");
    const BuiltExperiment built = buildExperiment(e->cfg, e->opt);
    CouplingResult result;
    if (use_pair) {
      AdjacentAttackPair pair(delta_bar, lambda, built.sim.schedule.q());
      result = couplingTest(built.sim, i0, delta1, &pair);
    } else {
      result = couplingTest(built.sim, i0, delta1, nullptr);
    }
    out->max_discrepancy = result.maxObservationDiscrepancy;
    out->trims_equal = result.trimsEqual ? 1 : 0;
    out->max_state_drift_error = result.maxStateIdentityError;
  });
}

}  // extern "C"
