/* Copyright 2026 the dpmsr authors. Licensed under the Apache License,
 * Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
 *
 * dpmsr — resilient consensus simulator with differentially private
 * messaging: trimmed-mean (MSR-style) updates over directed graphs with up
 * to f faulty agents, Laplace-noised broadcasts with geometrically decaying
 * scale, exact r-robustness certification, Monte Carlo campaigns, and
 * closed-form privacy/accuracy budgets.
 *
 * C API conventions:
 *   - opaque handles (dpmsr_graph, dpmsr_experiment) created and freed here;
 *   - every fallible call returns a dpmsr_status and, when a dpmsr_error*
 *     is supplied, fills it with a human-readable message;
 *   - all text I/O is locale-independent; identical inputs (config + seed)
 *     produce byte-identical output files regardless of worker count.
 */
#ifndef DPMSR_H
#define DPMSR_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dpmsr_status {
  DPMSR_OK = 0,
  DPMSR_ERROR_INVALID_ARGUMENT = 1, /* violated invariant or bad parameter */
  DPMSR_ERROR_IO = 2,               /* missing/unreadable/unwritable file  */
  DPMSR_ERROR_TOO_LARGE = 3,        /* exhaustive enumeration refused      */
  DPMSR_ERROR_INTERNAL = 4
} dpmsr_status;

typedef struct dpmsr_error {
  dpmsr_status status;
  char message[240];
} dpmsr_error;

const char* dpmsr_status_name(dpmsr_status status);
const char* dpmsr_version(void);

/* ------------------------------------------------------------------ */
/* Graphs                                                              */

typedef struct dpmsr_graph dpmsr_graph;

/* Node i sends to (i+1)..(i+k) mod n; in-degree = out-degree = k. */
dpmsr_status dpmsr_graph_circulant(int n, int k, dpmsr_graph** out, dpmsr_error* err);
dpmsr_status dpmsr_graph_complete(int n, dpmsr_graph** out, dpmsr_error* err);
/* Edge-list file: first line n, then one "from to" edge per line. */
dpmsr_status dpmsr_graph_load(const char* path, dpmsr_graph** out, dpmsr_error* err);
dpmsr_status dpmsr_graph_save(const dpmsr_graph* g, const char* path, dpmsr_error* err);
void dpmsr_graph_free(dpmsr_graph* g);

int dpmsr_graph_node_count(const dpmsr_graph* g);
int dpmsr_graph_edge_count(const dpmsr_graph* g);
int dpmsr_graph_in_degree(const dpmsr_graph* g, int node);
int dpmsr_graph_out_degree(const dpmsr_graph* g, int node);
int dpmsr_graph_min_in_degree(const dpmsr_graph* g);
int dpmsr_graph_max_out_degree(const dpmsr_graph* g);
/* Writes up to buf_len in-neighbor ids; returns the in-degree (call with
 * buf_len 0 to size the buffer), or -1 for an invalid node. */
int dpmsr_graph_in_neighbors(const dpmsr_graph* g, int node, int* buf, int buf_len);

/* ------------------------------------------------------------------ */
/* Robustness certification                                            */

/* Exhaustive certification is exact but exponential; graphs with more
 * nodes than this are refused (DPMSR_ERROR_TOO_LARGE). */
#define DPMSR_EXHAUSTIVE_ROBUSTNESS_CAP 12

#define DPMSR_METHOD_EXHAUSTIVE 0
#define DPMSR_METHOD_GENERATOR_FORMULA 1

typedef struct dpmsr_robustness_cert {
  int r;
  int method; /* DPMSR_METHOD_* */
  /* Witness falsifying (r+1)-robustness: two disjoint node sets, neither
   * (r+1)-reachable. Exhaustive certificates only. */
  int has_witness;
  int witness_a[DPMSR_EXHAUSTIVE_ROBUSTNESS_CAP];
  int witness_a_len;
  int witness_b[DPMSR_EXHAUSTIVE_ROBUSTNESS_CAP];
  int witness_b_len;
} dpmsr_robustness_cert;

/* Exhaustive check of r-robustness; *robust gets 0/1. On failure the
 * certificate (when given) carries a witness pair at level r. */
dpmsr_status dpmsr_graph_is_r_robust(const dpmsr_graph* g, int r, int* robust,
                                     dpmsr_robustness_cert* cert, dpmsr_error* err);
/* Largest r for which the graph is r-robust (exhaustive, exact). */
dpmsr_status dpmsr_graph_max_robustness(const dpmsr_graph* g,
                                        dpmsr_robustness_cert* out, dpmsr_error* err);
/* Exhaustive within the cap; beyond it, the documented circulant lower
 * bound ceil(k/2) with method = generator formula. */
dpmsr_status dpmsr_circulant_certificate(int n, int k, dpmsr_robustness_cert* out,
                                         dpmsr_error* err);

/* ------------------------------------------------------------------ */
/* Privacy / accuracy budgets                                          */

#define DPMSR_MAX_ACCURACY_LEVELS 8

typedef struct dpmsr_budget_params {
  double delta;     /* adjacency bound on the one differing initial state  */
  double delta_bar; /* attack-shift envelope scale, >= 1                   */
  double lambda;    /* attack-shift decay, must stay below q               */
  int f;
  int d_max_out;
  double c;
  double q;
  /* Non-omniscient degenerate case: the faulty term vanishes. */
  int non_omniscient;
  /* For the variance bounds / accuracy radius. */
  int n;
  double min_weight; /* min over honest agents of 1/(in_degree - 2f + 1)   */
  const double* p_values;
  int p_count; /* at most DPMSR_MAX_ACCURACY_LEVELS */
} dpmsr_budget_params;

typedef struct dpmsr_budget_report {
  double epsilon_fault_free;  /* delta * 2q / (c (2q-1))                   */
  double epsilon_with_faults; /* + delta_bar f d_max q / (c (q - lambda))  */
  double var_lower;
  double var_upper;
  double accuracy_r[DPMSR_MAX_ACCURACY_LEVELS];
  int p_count;
} dpmsr_budget_report;

dpmsr_status dpmsr_budget_compute(const dpmsr_budget_params* params,
                                  dpmsr_budget_report* out, dpmsr_error* err);
/* Renders the structured-text budget report (keys epsilon_fault_free,
 * epsilon_with_faults, var_lower, var_upper, accuracy_p, accuracy_r).
 * Returns the number of bytes needed (excluding the terminator). */
int dpmsr_budget_format(const dpmsr_budget_params* params,
                        const dpmsr_budget_report* report, char* buf, size_t buf_len);

/* ------------------------------------------------------------------ */
/* Experiments                                                         */

typedef struct dpmsr_experiment dpmsr_experiment;

/* Loads a flat key/value experiment config (see the config reference in
 * the README: graph, f, noise.c, noise.q, theta0, rounds, runs, seed,
 * output_dir, faulty.<i>.*). Unknown keys are rejected. */
dpmsr_status dpmsr_experiment_load(const char* path, dpmsr_experiment** out,
                                   dpmsr_error* err);
dpmsr_status dpmsr_experiment_parse(const char* text, dpmsr_experiment** out,
                                    dpmsr_error* err);
void dpmsr_experiment_free(dpmsr_experiment* e);

void dpmsr_experiment_set_seed(dpmsr_experiment* e, uint64_t seed);
void dpmsr_experiment_set_rounds(dpmsr_experiment* e, int rounds);
void dpmsr_experiment_set_runs(dpmsr_experiment* e, int runs);
void dpmsr_experiment_set_output_dir(dpmsr_experiment* e, const char* dir);
void dpmsr_experiment_set_zero_noise(dpmsr_experiment* e, int on);
void dpmsr_experiment_set_no_faults(dpmsr_experiment* e, int on);

/* Robustness-precondition warnings for the realized experiment, one per
 * line (empty string: none). Returns bytes needed, or -1 with err set. */
int dpmsr_experiment_warnings(const dpmsr_experiment* e, char* buf, size_t buf_len,
                              dpmsr_error* err);

typedef struct dpmsr_run_stats {
  int rounds;
  int honest;
  int faulty;
  double final_spread;
  double final_mean;
} dpmsr_run_stats;

/* One execution; writes trace.csv, spread.csv, run_summary.txt (and
 * byzantine_messages.csv when applicable) into the output directory. */
dpmsr_status dpmsr_experiment_run(const dpmsr_experiment* e, dpmsr_run_stats* out,
                                  dpmsr_error* err);

typedef struct dpmsr_mc_stats {
  int runs;
  double mean;
  double variance;
  double var_lower;
  double var_upper;
  double hull_min;
  double hull_max;
  int degenerate;
} dpmsr_mc_stats;

/* Monte Carlo campaign; writes mc_summary.txt and histogram.csv. The
 * sample of each run is the honest mean at the final round. workers <= 0
 * picks the hardware concurrency; results never depend on it. */
dpmsr_status dpmsr_experiment_monte_carlo(const dpmsr_experiment* e, int workers,
                                          dpmsr_mc_stats* out, dpmsr_error* err);

typedef struct dpmsr_coupling_result {
  double max_discrepancy;      /* max |x2 - x1| over all transmitted values */
  int trims_equal;             /* 1 when both executions kept the same senders */
  double max_state_drift_error;
} dpmsr_coupling_result;

/* Runs the two coupled adjacent executions: execution 2 raises honest
 * agent i0's initial state by delta1 and shifts its noise by a^h * delta1;
 * with use_pair, faulty deterministic parts shift up by delta_bar*lambda^k
 * and faulty noise down by the same amount. Observations should agree to
 * floating-point accumulation error. */
dpmsr_status dpmsr_experiment_coupling_test(const dpmsr_experiment* e, int i0,
                                            double delta1, int use_pair,
                                            double delta_bar, double lambda,
                                            dpmsr_coupling_result* out,
                                            dpmsr_error* err);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DPMSR_H */
