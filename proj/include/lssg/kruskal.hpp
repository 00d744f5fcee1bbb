#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "lssg/graph.hpp"

// Rank-Kruskal local oracle: an edge is dropped exactly when it is the
// highest-rank edge of some cycle visible in a radius-k ball around an
// endpoint, which keeps precisely the rank-ordered spanning forest when the
// ball sees enough of the graph. Plus the growth-based k estimator and the
// hyperfinite peeling witness.

namespace lssg {

struct KruskalConfig {
  int k = 1;
  // Scan the ball of both endpoints (symmetric answers); a cycle witness from
  // either ball triggers NO.
  bool check_both_endpoints = true;
};

// YES/NO membership for edge (x,y); throws UsageError if (x,y) is not an edge.
bool kruskal_edge_query(CountingAccess& access, const KruskalConfig& cfg, Vertex x,
                        Vertex y);

// Least k such that at least a (1 - 3*epsilon/(8d)) fraction of sampled
// vertices satisfy |ball_k(v)| <= exp(epsilon*k/(4d)); n if no k qualifies.
int estimate_k_kruskal(CountingAccess& access, int n, int d, double epsilon,
                       double delta, uint64_t seed);

// The unique spanning tree of a connected graph under edge-rank order.
std::vector<Edge> rank_kruskal_reference(const BoundedDegreeGraph& g);

struct HyperfiniteWitness {
  double beta = 0.0;
  int k = 0;                      // exact least k where the growth condition
                                  // holds for a (1-beta) fraction of vertices
  std::vector<Edge> removed;      // separating edge set
  long long max_component = 0;    // measured, includes singletons
  int max_diameter = 0;           // measured exactly per component
  std::vector<std::vector<Vertex>> components;
};

// Constructive separator: strip all edges of vertices whose radius-k ball
// outgrows exp(beta*k/2) with beta = epsilon/(2d), then repeatedly detach the
// min-id vertex's ball at the first radius where one more hop grows the ball
// by a factor below (1+beta). Total: always returns, even where the removed
// count exceeds epsilon*n (reported, not hidden). Test scale only (n <= 5000).
HyperfiniteWitness hyperfinite_witness(const BoundedDegreeGraph& g, double epsilon);

// Stateful wrapper with a whole-graph fast path: once some queried ball covers
// all n vertices and k is at least twice that ball's radius bound, every ball
// is the full graph and answers reduce to rank-spanning-forest membership.
// Answers are identical to kruskal_edge_query on every input.
class KruskalOracle {
 public:
  KruskalOracle(CountingAccess& access, const KruskalConfig& cfg)
      : access_(&access), cfg_(cfg) {}

  bool edge_query(Vertex x, Vertex y);

 private:
  CountingAccess* access_;
  KruskalConfig cfg_;
  bool full_graph_mode_ = false;
  std::set<std::pair<Vertex, Vertex>> forest_;
  std::set<std::pair<Vertex, Vertex>> all_edges_;
};

}  // namespace lssg
