#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lssg/generators.hpp"
#include "lssg/graph.hpp"

// Experiment runner: per-edge verification of the spanning-oracle contracts
// (connectivity, sparsity, query-order consistency), query-cost scaling
// studies, and the oracle-indistinguishability experiment. Everything is
// deterministic in (inputs, seeds) and emitted as CSV.

namespace lssg {

struct VerifyParams {
  std::string algorithm;  // centers | kruskal | reduction | boruvka
  double epsilon = 0.5;
  double delta = 0.1;
  // k <= 0 means: derive it (the growth estimators for centers/kruskal, the
  // natural peeled-part bound for reduction); ignored by boruvka.
  int k = 0;
  double c_iter = 4.0;  // boruvka iteration-count constant
  double c2 = 4.0;      // boruvka component-cap constant
  int permutations = 5;  // query orders checked for consistency
};

struct VerificationReport {
  std::string algorithm;
  std::string graph;  // descriptor
  uint64_t seed = 0;
  bool connected = false;
  long long edge_count = 0;    // |E'|
  double sparsity_bound = 0.0;  // (1 + epsilon) * n
  bool weighted = false;        // weight columns populated
  double total_weight = 0.0;    // sum of YES-edge weights
  double mst_weight = 0.0;      // exact minimum spanning tree weight
  uint64_t max_queries_per_edge = 0;
  double avg_queries_per_edge = 0.0;
  bool consistent = false;  // identical YES set across permuted orders
};

// One report per seed: queries the oracle on every edge (canonical sorted
// order), then re-runs with fresh oracle state over permuted orders to check
// consistency. Query counts come from the canonical pass.
std::vector<VerificationReport> run_verification(BoundedDegreeGraph& g,
                                                 const std::string& descriptor,
                                                 const VerifyParams& params,
                                                 const std::vector<uint64_t>& seeds);

// Contract summary over a batch of reports: every run connected and
// consistent, and the per-run sparsity bound holding in at least
// ceil((1-delta) * runs) of them. The bound is each algorithm's own contract:
// total YES weight against (1+epsilon)*mst for the weighted-spanning
// algorithm on weighted graphs, edge count against (1+epsilon)*n otherwise.
bool verification_pass(const std::vector<VerificationReport>& reports,
                       double epsilon, double delta);

// Exact column set, one row per report, header row mandatory; weight columns
// are left empty on unweighted rows. Byte-reproducible for fixed inputs.
void write_reports_csv(const std::vector<VerificationReport>& reports,
                       std::ostream& out);

struct ScalingRow {
  std::string graph;
  int n = 0;
  long long episodes = 0;  // sampled edge queries, fresh oracle state each
  double avg_queries = 0.0;
  uint64_t max_queries = 0;
};

struct ScalingResult {
  std::vector<ScalingRow> rows;        // one per size, pooled over seeds
  double slope = 0.0;                  // least-squares log(avg) vs log(n)
  double residual = 0.0;               // root-mean-square fit residual
};

// Per-edge query cost vs n: for each size and seed, generates the graph,
// samples edges, and answers each with fresh oracle state so the measured
// count is the full cost of one standalone query episode. Needs >= 3 sizes.
ScalingResult scaling_study(const std::vector<GenParams>& sizes,
                            const VerifyParams& params,
                            const std::vector<uint64_t>& seeds, int sample_edges);

void write_scaling_csv(const ScalingResult& result, std::ostream& out);

struct DistinguishResult {
  int n = 0, d = 0, r = 0, trials = 0;
  double p_plus = 0.0;   // fraction of "+" guesses against the plus oracle
  double p_minus = 0.0;  // fraction of "+" guesses against the minus oracle
  double advantage = 0.0;
  double ci_width = 0.0;  // 95% half-width for the difference of proportions
  double collision_plus = 0.0;   // transcript-collision rate per variant
  double collision_minus = 0.0;
  double collision_bound = 0.0;  // 8 r^2 / n
};

// Plays the default BFS strategy (explore from vertex 0 with a budget of r
// incidence queries, skipping slots already revealed by earlier answers,
// then guess "minus" iff vertex 1 was never seen or is separated from vertex 0
// in the explored graph with every (0,1) edge removed) against both lazy
// oracles. trials per variant; r = 0 is allowed and gives advantage 0.
DistinguishResult distinguishing_experiment(int n, int d, int r, int trials,
                                            uint64_t seed);

void write_distinguish_csv(const DistinguishResult& result, std::ostream& out);

}  // namespace lssg
