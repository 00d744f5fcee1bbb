#pragma once

#include <iosfwd>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lssg/graph.hpp"

// Partition-oracle interface and the reduction from a partition oracle to a
// sparse-spanning-subgraph oracle: cross-part edges are kept, and each part is
// internally spanned by a canonical BFS tree, so the YES set always spans the
// graph and exceeds a spanning forest only by the cut edges. Also: a validator
// for (epsilon, k)-partitions and a global reference oracle for testing.

namespace lssg {

struct Partition {
  std::vector<std::vector<Vertex>> parts;  // each sorted ascending
  std::vector<int> part_of;                // vertex -> index into parts

  // Normalizes (sorts members, orders parts by min member) and checks the
  // parts are disjoint and cover 0..n-1; throws UsageError otherwise.
  static Partition from_parts(int n, std::vector<std::vector<Vertex>> parts);
  static Partition from_assignment(const std::vector<int>& part_of);

  int size() const { return static_cast<int>(parts.size()); }
};

// Consistent local access to one fixed partition: part_of(v) is the full part
// containing v. Implementations must answer consistently across any query
// sequence.
class PartitionOracle {
 public:
  virtual ~PartitionOracle() = default;
  virtual const std::vector<Vertex>& part_of(Vertex v) = 0;
};

struct PartitionReport {
  bool sizes_ok = false;      // every part has size <= k-bound
  bool connected_ok = false;  // every part induces a connected subgraph
  bool cut_ok = false;        // cut-edge count <= epsilon * n
  long long cut_edges = 0;

  bool pass() const { return sizes_ok && connected_ok && cut_ok; }
};

// Checks the three partition conditions against (epsilon, kbound) and counts
// cut edges. Throws UsageError if the parts do not disjointly cover V.
PartitionReport partition_validate(const BoundedDegreeGraph& g, const Partition& p,
                                   double epsilon, int kbound);

// Optional per-episode cache: part spanning trees keyed by the part's min-id
// member, so repeated edge queries against one oracle skip the rebuild.
// Answers are identical with or without it.
struct ReductionRun {
  std::unordered_map<Vertex, std::set<std::pair<Vertex, Vertex>>> trees;
};

// YES/NO membership for edge (u,v) given a partition oracle: different parts
// -> YES; same part -> YES iff (u,v) is an edge of the part's BFS spanning
// tree rooted at its minimum-id member (min-id parent tie-break, BFS
// restricted to the part). Beyond the oracle's own work this spends at most
// d*(|part|+1) <= 2*k*d incidence queries. Throws UsageError if (u,v) is not
// an edge, ContractError if the oracle returns a part not containing its
// vertex (or an internally disconnected one).
bool reduction_edge_query(CountingAccess& access, PartitionOracle& po, Vertex u,
                          Vertex v, ReductionRun* run = nullptr);

// Global reference oracle (reads the whole graph up front; the reduction's
// overhead, not the oracle's, is the object of study). kbound <= 0 means "no
// explicit bound": parts come from the hyperfinite peeling witness and the
// measured max part size becomes the bound. A positive kbound instead packs
// each connected component into BFS-ordered pieces of at most kbound vertices
// (so kbound >= n keeps a connected graph as one part). The build never
// fails: the report says whether (epsilon, kbound) was actually met.
class ReferencePartitionOracle final : public PartitionOracle {
 public:
  static ReferencePartitionOracle build(const BoundedDegreeGraph& g, double epsilon,
                                        int kbound);
  // Wraps an explicit partition (tiles, file input) and validates it.
  static ReferencePartitionOracle wrap(const BoundedDegreeGraph& g, double epsilon,
                                       int kbound, Partition p);

  const std::vector<Vertex>& part_of(Vertex v) override;

  const Partition& partition() const { return partition_; }
  const PartitionReport& report() const { return report_; }
  int kbound() const { return kbound_; }

 private:
  Partition partition_;
  PartitionReport report_;
  int kbound_ = 0;
};

// rows x cols grid (row-major ids) tiled into tile_rows x tile_cols blocks.
Partition grid_tile_partition(int rows, int cols, int tile_rows, int tile_cols);

// Text format: one `vertex part-index` pair per line, `#` comments and blank
// lines ignored; every vertex of 0..n-1 must appear exactly once.
Partition load_partition(std::istream& in, int n);

}  // namespace lssg
