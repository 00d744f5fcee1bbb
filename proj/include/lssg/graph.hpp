#pragma once

#include <cstdint>
#include <iosfwd>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

// Graph substrate: immutable bounded-degree incidence-list graphs, the counting
// query-access layer every oracle goes through, BFS balls, edge ranking,
// connectivity, and vertex expansion for test-graph characterization.

namespace lssg {

using Vertex = int;
constexpr Vertex kAbsent = -1;

// ---------------------------------------------------------------------------
// Errors

// Caller violated a documented precondition (bad ids, malformed input, ...).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A randomized construction exhausted its retry budget.
struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input is valid but outside what this implementation supports.
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed (a bug, not a caller error).
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Edges and weights
//
// Weights are decimal strings in input files; internally every weight is an
// exact integer numerator over a per-graph power-of-ten scale, so comparisons
// and sums are exact and ties are impossible to misjudge via floating point.

struct Edge {
  Vertex u = kAbsent;
  Vertex v = kAbsent;
  long long w = 1;  // numerator; true weight = w / scale of the owning graph

  Edge() = default;
  Edge(Vertex a, Vertex b, long long weight = 1)
      : u(a < b ? a : b), v(a < b ? b : a), w(weight) {}

  bool same_endpoints(const Edge& o) const { return u == o.u && v == o.v; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Strict total order r(e) on edges with distinct endpoints:
// compare min endpoint ids, then max endpoint ids.
bool edge_rank_less(const Edge& a, const Edge& b);

// Order by (weight, rank): the tie-break that makes all weights distinct.
// Only meaningful for edges of the same graph (same weight scale).
bool edge_weight_rank_less(const Edge& a, const Edge& b);

// ---------------------------------------------------------------------------
// Incidence-query interface
//
// Answers "what is the i-th neighbor of v" for 1 <= i <= d. A slot can be
// absent (vertex == kAbsent) when v has fewer than i neighbors. Sources may be
// stateful (the lazy oracles build the graph as it is queried), hence non-const.

struct NeighborSlot {
  Vertex vertex = kAbsent;
  long long weight = 0;  // numerator over the source's weight scale

  bool absent() const { return vertex == kAbsent; }
};

class IncidenceSource {
 public:
  virtual ~IncidenceSource() = default;
  virtual int vertex_count() const = 0;
  virtual int degree_bound() const = 0;
  virtual bool weighted() const = 0;
  virtual long long weight_scale() const { return 1; }
  virtual NeighborSlot neighbor_slot(Vertex v, int i) = 0;
};

// Counts every incidence query. One instance per logical query episode; not
// shared across concurrent episodes.
class CountingAccess {
 public:
  explicit CountingAccess(IncidenceSource& source) : source_(&source) {}

  NeighborSlot neighbor(Vertex v, int i) {
    if (v < 0 || v >= source_->vertex_count())
      throw UsageError("neighbor: vertex id " + std::to_string(v) + " out of range");
    if (i < 1 || i > source_->degree_bound())
      throw UsageError("neighbor: index " + std::to_string(i) + " outside 1..d");
    ++counter_;
    return source_->neighbor_slot(v, i);
  }

  uint64_t count() const { return counter_; }
  void reset_count() { counter_ = 0; }

  int n() const { return source_->vertex_count(); }
  int d() const { return source_->degree_bound(); }
  bool weighted() const { return source_->weighted(); }
  long long weight_scale() const { return source_->weight_scale(); }
  IncidenceSource& source() { return *source_; }

 private:
  IncidenceSource* source_;
  uint64_t counter_ = 0;
};

// ---------------------------------------------------------------------------
// BoundedDegreeGraph

struct BoundedDegreeGraph final : IncidenceSource {
  int n = 0;
  int d = 0;
  bool is_weighted = false;
  long long scale = 1;  // all edge weights are numerator/scale
  std::vector<std::vector<NeighborSlot>> adj;  // sorted by neighbor id

  // Validates every type invariant (ids, degree bound, no loops/duplicates,
  // weights >= 1) and symmetrizes the edge list into sorted incidence lists.
  static BoundedDegreeGraph build(int n, int d, bool weighted, long long scale,
                                  const std::vector<Edge>& edges);

  int vertex_count() const override { return n; }
  int degree_bound() const override { return d; }
  bool weighted() const override { return is_weighted; }
  long long weight_scale() const override { return scale; }
  NeighborSlot neighbor_slot(Vertex v, int i) override;

  int degree(Vertex v) const { return static_cast<int>(adj[v].size()); }
  bool has_edge(Vertex u, Vertex v) const;
  // Weight numerator of an existing edge; throws UsageError if absent.
  long long edge_weight(Vertex u, Vertex v) const;
  long long max_weight() const;  // numerator of W; scale for empty graphs
  double max_weight_value() const {
    return static_cast<double>(max_weight()) / static_cast<double>(scale);
  }
  long long edge_count() const;
  // All edges, normalized u < v, sorted by (u, v).
  std::vector<Edge> edge_list() const;
};

// Text format: header `n d [weighted]`, then one line per undirected edge
// `u v` or `u v w`; `#` comments and blank lines ignored. Errors cite line numbers.
BoundedDegreeGraph load_graph(std::istream& in);
BoundedDegreeGraph load_graph_file(const std::string& path);
void save_graph(const BoundedDegreeGraph& g, std::ostream& out);
void save_graph_file(const BoundedDegreeGraph& g, const std::string& path);

// ---------------------------------------------------------------------------
// BFS balls

struct Ball {
  Vertex center = kAbsent;
  int radius = 0;
  std::vector<Vertex> members;                // BFS discovery order
  std::unordered_map<Vertex, int> dist;       // member -> hop distance
  std::vector<Edge> edges;                    // induced edges, deduplicated

  bool contains(Vertex v) const { return dist.count(v) != 0; }
};

// Exact hop-distance ball of radius k around v. Queries all d slots of every
// member (and nothing else), so the query cost is exactly d * |members|.
// Tolerates multigraph sources: self-loop answers are dropped and parallel
// edges collapse into one induced edge.
Ball bfs_ball(CountingAccess& access, Vertex v, int k);

// ---------------------------------------------------------------------------
// Connectivity

struct DisjointSets {
  explicit DisjointSets(int n) : parent(n), size(n, 1) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
    return true;
  }
  std::vector<int> parent;
  std::vector<int> size;
};

bool is_connected(int n, const std::vector<Edge>& edges);

// ---------------------------------------------------------------------------
// Vertex expansion (test-graph characterization)

struct Fraction {
  long long num = 0;
  long long den = 1;

  Fraction() = default;
  Fraction(long long n, long long d) : num(n), den(d) { reduce(); }
  void reduce() {
    long long g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator<(const Fraction& a, const Fraction& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num * b.den == b.num * a.den;
  }
};

// Exact h_s(G) = min over nonempty S, |S| <= s, of |N(S)| / |S| where N(S) is
// the set of neighbors of S outside S. Exhaustive subset sweep, gated at
// n <= 24 (capability error above; use vertex_expansion_sampled instead).
Fraction vertex_expansion(const BoundedDegreeGraph& g, int s);

// Sampled upper bound on h_s(G) for larger graphs: evaluates all singletons
// plus randomly grown connected subsets. Deterministic in the seed.
Fraction vertex_expansion_sampled(const BoundedDegreeGraph& g, int s, int samples,
                                  uint64_t seed);

}  // namespace lssg
