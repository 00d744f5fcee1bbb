#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lssg/graph.hpp"

// Centers algorithm: pick ell random centers, assign each vertex to its nearest
// center within k hops (ties by center list position), keep the BFS-tree edges
// of each center's region, all edges of unassigned vertices, and one connecting
// edge per qualifying center pair. The edge query answers membership locally;
// centers_global_reference materializes the same edge set from the whole graph.

namespace lssg {

struct CentersConfig {
  double epsilon = 0.5;
  double delta = 0.1;
  int k = 1;
  uint64_t seed = 0;
  int ell = 0;                   // number of center draws (with replacement)
  std::vector<Vertex> centers;   // draw order breaks assignment ties
  std::unordered_map<Vertex, int> center_pos;  // center id -> earliest position

  // ell = ceil(sqrt(epsilon*n/2)) centers drawn uniformly with replacement.
  static CentersConfig make(int n, double epsilon, double delta, int k, uint64_t seed);
  // Fixed center list (tests and worked examples).
  static CentersConfig with_centers(std::vector<Vertex> centers, int k);

  bool is_center(Vertex v) const { return center_pos.count(v) != 0; }
};

// Region-size threshold s(n, epsilon, delta) = sqrt(2n/epsilon) * ln(n/delta)
// used by the k estimator.
double centers_threshold(int n, double epsilon, double delta);

struct CenterAssignment {
  Vertex vertex = kAbsent;
  Vertex center = kAbsent;  // kAbsent = unassigned (no center within k hops)
  int dist = -1;
  int center_pos = -1;

  bool assigned() const { return center != kAbsent; }
};

// Per-run memo of pure query results. Optional: passing nullptr recomputes
// everything; passing a shared run object amortizes repeated sub-queries
// without changing any answer.
struct CentersRun {
  std::unordered_map<Vertex, CenterAssignment> assignments;
  std::map<std::pair<Vertex, Vertex>, std::optional<std::vector<Vertex>>> paths;
};

// BFS to depth k from v; nearest center wins, ties by earliest list position.
CenterAssignment assign_center(CountingAccess& access, const CentersConfig& cfg,
                               Vertex v, CentersRun* run = nullptr);

// Lexicographically smallest shortest u-v path, read from the smaller-id
// endpoint (the returned sequence starts there). Bidirectional BFS capped at
// radius k+1 per side, so any distance <= 2k+2 is found; absent otherwise.
std::optional<std::vector<Vertex>> lex_min_shortest_path(CountingAccess& access,
                                                         Vertex u, Vertex v, int k,
                                                         CentersRun* run = nullptr);

// Per-edge membership decision. (x,y) must be an edge of the queried source.
bool centers_edge_query(CountingAccess& access, const CentersConfig& cfg, Vertex x,
                        Vertex y, CentersRun* run = nullptr);

// Least k such that a (1 - 3*epsilon/(8d)) sample quantile of per-vertex radii
// reaches the s(n, epsilon, delta) threshold; vertices whose component is
// exhausted first contribute k = n.
int estimate_k_centers(CountingAccess& access, int n, int d, double epsilon,
                       double delta, uint64_t seed);

// Whole-graph construction of the same edge set (level-synchronous assignment
// sweep, min-id-parent BFS trees, unassigned edges, center-pair connectors).
std::vector<Edge> centers_global_reference(const BoundedDegreeGraph& g,
                                           const CentersConfig& cfg);

}  // namespace lssg
