#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lssg/graph.hpp"
#include "lssg/partition.hpp"

// Contraction-based oracle for weighted graphs: repeated rounds of
// minimum-weight-edge star contraction (a component merges into a neighbor
// when the coins say Heads->Tails), with oversized components broken along
// their contracted forest. Contracted edges always belong to the minimum
// spanning tree; the final edge query keeps contracted edges plus the lightest
// edge between each pair of final parts. Coins are keyed hashes of
// (seed, iteration, max-id member), so a local simulation that rediscovers a
// component reproduces the global run exactly.

namespace lssg {

struct BoruvkaConfig {
  double epsilon = 0.5;
  uint64_t seed = 0;
  double w_max = 1.0;         // maximum edge weight W of the input graph
  int d = 1;                  // degree bound of the input graph
  double c_iter = 4.0;        // iteration-count constant
  double c2 = 4.0;            // component-cap constant
  int ell = 1;                // iterations: max(1, ceil(c_iter * ln(W/epsilon)))
  double gamma = 0.0;         // epsilon / (6 * W * ell)
  long long k_cap = 1;        // ceil(c2 * d^2 / gamma^2), saturated
  long long final_cap = 1;    // ceil(3 * c2 * W^2 * d^2 / epsilon^2), saturated

  static BoruvkaConfig make(double w_max, int d, double epsilon, uint64_t seed,
                            double c_iter = 4.0, double c2 = 4.0);
  static BoruvkaConfig make(const BoundedDegreeGraph& g, double epsilon,
                            uint64_t seed, double c_iter = 4.0, double c2 = 4.0);
};

// Upper bound on incidence queries for resolving one level-i component from
// scratch: Q_0 = 0, Q_i = d^2 k^2 + (d k + 1) Q_{i-1}, evaluated in doubles.
double boruvka_query_bound(int d, long long k, int i);

// Coin source; Heads = true. A component is identified by the iteration number
// and its maximum-id original vertex.
class CoinProvider {
 public:
  virtual ~CoinProvider() = default;
  virtual bool heads(int iteration, Vertex max_id) = 0;
};

class HashedCoins final : public CoinProvider {
 public:
  explicit HashedCoins(uint64_t seed) : seed_(seed) {}
  bool heads(int iteration, Vertex max_id) override;

 private:
  uint64_t seed_;
};

// Scripted coins for deterministic traces in tests; unlisted keys fall back to
// the hashed value so partial scripts stay usable.
class FixedCoins final : public CoinProvider {
 public:
  FixedCoins(uint64_t seed, std::map<std::pair<int, Vertex>, bool> values)
      : fallback_(seed), values_(std::move(values)) {}
  bool heads(int iteration, Vertex max_id) override {
    auto it = values_.find({iteration, max_id});
    return it != values_.end() ? it->second : fallback_.heads(iteration, max_id);
  }

 private:
  HashedCoins fallback_;
  std::map<std::pair<int, Vertex>, bool> values_;
};

// ---------------------------------------------------------------------------
// Contraction (quotient graph)

struct ContractedGraph {
  BoundedDegreeGraph graph;  // quotient: vertex i = part i of the partition
  // quotient edge (normalized part pair) -> the original edge realizing its
  // weight: the minimum-weight cut edge, ties by endpoint rank
  std::map<std::pair<int, int>, Edge> realizing;
};

// Quotient of g by p: one vertex per part, one edge per adjacent part pair
// weighted by the cheapest cut edge between them. Throws UsageError if a part
// does not induce a connected subgraph.
ContractedGraph contract(const BoundedDegreeGraph& g, const Partition& p);

// ---------------------------------------------------------------------------
// Component breaking

// Deterministic split of a vertex set into connected pieces of size <= cap,
// along the BFS spanning tree of the supplied induced edges: root at the
// min-id member, min-id parent tie-break, then walk vertices level by level
// (ascending id within a level), packing each vertex into its parent's piece
// while that piece is still open and below cap, otherwise starting a new piece.
std::vector<std::vector<Vertex>> break_component(const std::vector<Vertex>& members,
                                                 const std::vector<Edge>& edges,
                                                 long long cap);

// ---------------------------------------------------------------------------
// Global algorithm (reference for the local simulation)

struct BoruvkaGlobalResult {
  Partition partition;        // final parts, after the final size cap
  Partition level_partition;  // parts after the last iteration, before it
  std::vector<Edge> contracted;  // every edge contracted at any point
};

// Runs ell iterations of coin-gated star contraction with per-iteration
// breaking at k_cap, then breaks parts above final_cap. The contracted set is
// a subset of the minimum spanning tree. Throws UsageError if g is not
// connected. coins == nullptr means hashed coins from cfg.seed.
BoruvkaGlobalResult boruvka_global(const BoundedDegreeGraph& g,
                                   const BoruvkaConfig& cfg,
                                   CoinProvider* coins = nullptr);

// ---------------------------------------------------------------------------
// Local simulation

// Resolves components through incidence queries only, memoizing every
// component (and coin) it reconstructs, so a batch of edge queries shares
// work. Answers are a pure function of (source, cfg, coins) — query order
// never changes them.
class BoruvkaSimulator {
 public:
  BoruvkaSimulator(CountingAccess& access, const BoruvkaConfig& cfg,
                   CoinProvider* coins = nullptr);

  // Component of v after iteration i (post-breaking), 0 <= i <= ell.
  const std::vector<Vertex>& component(Vertex v, int i);
  // Component after iteration ell plus the final size cap.
  const std::vector<Vertex>& final_component(Vertex v);
  // YES/NO membership of edge (u,v) in the spanning subgraph: parts differ ->
  // YES iff (u,v) is the lightest (weight, rank) edge between the two parts;
  // same part -> YES iff (u,v) was contracted at some point.
  bool edge_query(Vertex u, Vertex v);

  // Every contraction event witnessed so far (normalized endpoint pairs).
  const std::set<std::pair<Vertex, Vertex>>& contracted_ever() const {
    return contracted_;
  }

 private:
  struct Comp {
    std::vector<Vertex> members;  // sorted ascending
    Vertex max_id = kAbsent;
    std::vector<Edge> forest;     // contracted spanning tree of members
  };
  using CompPtr = std::shared_ptr<const Comp>;

  CompPtr resolve(Vertex v, int i);
  CompPtr final_resolve(Vertex v);
  // Minimum-(weight, rank) original edge leaving comp; *found = false if the
  // component has no outgoing edge. Memoized per (iteration, component).
  Edge min_outgoing(const CompPtr& comp, int i, bool* found);
  // The full merged cluster of a Tails component at iteration i: tails plus
  // every adjacent Heads component whose lightest edge lands in it.
  CompPtr tails_cluster(const CompPtr& tails, int i);
  void register_pieces(std::unordered_map<Vertex, CompPtr>& memo, const Comp& whole,
                       long long cap);
  // Incident slots of v (self-loops and absent slots dropped), queried once
  // per vertex and remembered for the simulator's lifetime.
  const std::vector<NeighborSlot>& slots(Vertex v);

  CountingAccess* access_;
  BoruvkaConfig cfg_;
  HashedCoins default_coins_;
  CoinProvider* coins_;
  std::vector<std::unordered_map<Vertex, CompPtr>> levels_;  // [i][v]
  std::unordered_map<Vertex, CompPtr> final_;
  std::unordered_map<Vertex, std::vector<NeighborSlot>> adj_;
  std::map<std::pair<int, Vertex>, std::pair<bool, Edge>> outgoing_;  // (i, min member)
  std::set<std::pair<Vertex, Vertex>> contracted_;
};

// One-shot wrappers over a fresh simulator.
std::vector<Vertex> boruvka_local_component(CountingAccess& access,
                                            const BoruvkaConfig& cfg, Vertex v,
                                            int i, CoinProvider* coins = nullptr);
bool mwsg_edge_query(CountingAccess& access, const BoruvkaConfig& cfg, Vertex u,
                     Vertex v, CoinProvider* coins = nullptr);

// ---------------------------------------------------------------------------
// Exact minimum spanning tree (unique under (weight, rank) order)

struct MstResult {
  std::vector<Edge> edges;
  long long total_weight = 0;  // numerator over the graph's weight scale
};

MstResult exact_mst(const BoundedDegreeGraph& g);

}  // namespace lssg
