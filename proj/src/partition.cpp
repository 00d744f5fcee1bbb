#include "lssg/partition.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <unordered_set>

#include "lssg/boruvka.hpp"
#include "lssg/kruskal.hpp"

namespace lssg {

Partition Partition::from_parts(int n, std::vector<std::vector<Vertex>> parts) {
  Partition p;
  std::vector<char> seen(static_cast<size_t>(n), 0);
  for (auto& part : parts) {
    if (part.empty()) continue;
    std::sort(part.begin(), part.end());
    for (Vertex v : part) {
      if (v < 0 || v >= n)
        throw UsageError("partition: vertex id " + std::to_string(v) + " out of range");
      if (seen[static_cast<size_t>(v)])
        throw UsageError("partition: vertex " + std::to_string(v) +
                         " appears in two parts");
      seen[static_cast<size_t>(v)] = 1;
    }
    p.parts.push_back(std::move(part));
  }
  for (Vertex v = 0; v < n; ++v)
    if (!seen[static_cast<size_t>(v)])
      throw UsageError("partition: vertex " + std::to_string(v) + " not covered");
  std::sort(p.parts.begin(), p.parts.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  p.part_of.assign(static_cast<size_t>(n), -1);
  for (int i = 0; i < p.size(); ++i)
    for (Vertex v : p.parts[static_cast<size_t>(i)])
      p.part_of[static_cast<size_t>(v)] = i;
  return p;
}

Partition Partition::from_assignment(const std::vector<int>& part_of) {
  int hi = -1;
  for (int idx : part_of) {
    if (idx < 0) throw UsageError("partition: negative part index");
    hi = std::max(hi, idx);
  }
  std::vector<std::vector<Vertex>> buckets(static_cast<size_t>(hi + 1));
  for (Vertex v = 0; v < static_cast<Vertex>(part_of.size()); ++v)
    buckets[static_cast<size_t>(part_of[static_cast<size_t>(v)])].push_back(v);
  return from_parts(static_cast<int>(part_of.size()), std::move(buckets));
}

PartitionReport partition_validate(const BoundedDegreeGraph& g, const Partition& p,
                                   double epsilon, int kbound) {
  if (!(epsilon > 0.0)) throw UsageError("partition_validate: epsilon must be > 0");
  if (kbound < 1) throw UsageError("partition_validate: k-bound must be >= 1");
  // Disjoint cover first (usage error if violated).
  std::vector<char> seen(static_cast<size_t>(g.n), 0);
  for (const auto& part : p.parts)
    for (Vertex v : part) {
      if (v < 0 || v >= g.n)
        throw UsageError("partition_validate: vertex id out of range");
      if (seen[static_cast<size_t>(v)]++)
        throw UsageError("partition_validate: vertex " + std::to_string(v) +
                         " appears in two parts");
    }
  for (Vertex v = 0; v < g.n; ++v)
    if (!seen[static_cast<size_t>(v)])
      throw UsageError("partition_validate: vertex " + std::to_string(v) +
                       " not covered");

  PartitionReport report;
  report.sizes_ok = true;
  report.connected_ok = true;
  for (const auto& part : p.parts) {
    if (part.empty()) continue;
    if (static_cast<int>(part.size()) > kbound) report.sizes_ok = false;
    // BFS inside the induced subgraph.
    std::unordered_set<Vertex> in_part(part.begin(), part.end());
    std::unordered_set<Vertex> visited{part.front()};
    std::vector<Vertex> queue{part.front()};
    for (size_t head = 0; head < queue.size(); ++head)
      for (const NeighborSlot& s : g.adj[queue[head]])
        if (in_part.count(s.vertex) && visited.insert(s.vertex).second)
          queue.push_back(s.vertex);
    if (visited.size() != part.size()) report.connected_ok = false;
  }
  for (const Edge& e : g.edge_list())
    if (p.part_of[static_cast<size_t>(e.u)] != p.part_of[static_cast<size_t>(e.v)])
      ++report.cut_edges;
  report.cut_ok =
      static_cast<double>(report.cut_edges) <= epsilon * static_cast<double>(g.n);
  return report;
}

namespace {

bool part_contains(const std::vector<Vertex>& part, Vertex v) {
  return std::find(part.begin(), part.end(), v) != part.end();
}

// BFS spanning tree of the part, rooted at its min-id member with min-id
// parents; adjacency comes from incidence queries restricted to the part.
std::set<std::pair<Vertex, Vertex>> part_tree(CountingAccess& access,
                                              const std::vector<Vertex>& part) {
  std::unordered_set<Vertex> in_part(part.begin(), part.end());
  std::unordered_map<Vertex, std::vector<Vertex>> adj;
  for (Vertex m : part)
    for (int i = 1; i <= access.d(); ++i) {
      NeighborSlot s = access.neighbor(m, i);
      if (!s.absent() && s.vertex != m && in_part.count(s.vertex))
        adj[m].push_back(s.vertex);
    }

  Vertex root = *std::min_element(part.begin(), part.end());
  std::set<std::pair<Vertex, Vertex>> tree;
  std::unordered_set<Vertex> visited{root};
  std::vector<Vertex> level{root};
  while (!level.empty()) {
    std::unordered_map<Vertex, Vertex> best_parent;
    for (Vertex x : level)
      for (Vertex nb : adj[x]) {
        if (visited.count(nb)) continue;
        auto [it, fresh] = best_parent.emplace(nb, x);
        if (!fresh && x < it->second) it->second = x;
      }
    std::vector<Vertex> next;
    for (const auto& [child, parent] : best_parent) {
      tree.insert({std::min(child, parent), std::max(child, parent)});
      visited.insert(child);
      next.push_back(child);
    }
    level = std::move(next);
  }
  if (visited.size() != part.size())
    throw ContractError("reduction_edge_query: oracle part is not connected");
  return tree;
}

}  // namespace

bool reduction_edge_query(CountingAccess& access, PartitionOracle& po, Vertex u,
                          Vertex v, ReductionRun* run) {
  if (u == v) throw UsageError("reduction_edge_query: endpoints must differ");
  if (u < 0 || u >= access.n() || v < 0 || v >= access.n())
    throw UsageError("reduction_edge_query: vertex id out of range");

  const std::vector<Vertex>& pu = po.part_of(u);
  if (!part_contains(pu, u))
    throw ContractError("reduction_edge_query: oracle part of " + std::to_string(u) +
                        " does not contain it");
  const std::vector<Vertex>& pv = po.part_of(v);
  if (!part_contains(pv, v))
    throw ContractError("reduction_edge_query: oracle part of " + std::to_string(v) +
                        " does not contain it");
  const bool same = part_contains(pu, v);
  if (same != part_contains(pv, u))
    throw ContractError("reduction_edge_query: oracle parts are inconsistent");
  if (same) {
    // One fixed partition means both endpoints must name the same member set.
    std::vector<Vertex> a = pu, b = pv;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b)
      throw ContractError("reduction_edge_query: oracle parts are inconsistent");
  }

  bool edge_found = false;
  for (int i = 1; i <= access.d(); ++i) {
    NeighborSlot s = access.neighbor(u, i);
    if (!s.absent() && s.vertex == v) edge_found = true;
  }
  if (!edge_found)
    throw UsageError("reduction_edge_query: (" + std::to_string(u) + "," +
                     std::to_string(v) + ") is not an edge");

  if (!same) return true;

  Vertex root = *std::min_element(pu.begin(), pu.end());
  const std::set<std::pair<Vertex, Vertex>>* tree = nullptr;
  std::set<std::pair<Vertex, Vertex>> local;
  if (run != nullptr) {
    auto it = run->trees.find(root);
    if (it == run->trees.end())
      it = run->trees.emplace(root, part_tree(access, pu)).first;
    tree = &it->second;
  } else {
    local = part_tree(access, pu);
    tree = &local;
  }
  return tree->count({std::min(u, v), std::max(u, v)}) != 0;
}

ReferencePartitionOracle ReferencePartitionOracle::build(const BoundedDegreeGraph& g,
                                                         double epsilon, int kbound) {
  std::vector<std::vector<Vertex>> parts;
  if (kbound <= 0) {
    // No explicit size bound: let the peeling procedure pick natural pieces
    // and adopt the largest one as the bound.
    HyperfiniteWitness witness = hyperfinite_witness(g, epsilon);
    kbound = static_cast<int>(std::max(1ll, witness.max_component));
    parts = std::move(witness.components);
  } else {
    // Explicit bound: pack each connected component of the graph into
    // BFS-ordered pieces of at most kbound vertices.
    DisjointSets dsu(g.n);
    for (const Edge& e : g.edge_list()) dsu.unite(e.u, e.v);
    std::map<Vertex, std::vector<Vertex>> comps;
    for (Vertex v = 0; v < g.n; ++v) comps[dsu.find(v)].push_back(v);
    for (auto& [root, comp] : comps) {
      (void)root;
      std::unordered_set<Vertex> in_comp(comp.begin(), comp.end());
      std::vector<Edge> induced;
      for (Vertex m : comp)
        for (const NeighborSlot& s : g.adj[m])
          if (s.vertex > m && in_comp.count(s.vertex))
            induced.emplace_back(m, s.vertex, s.weight);
      for (auto& piece : break_component(comp, induced, kbound))
        parts.push_back(std::move(piece));
    }
  }
  return wrap(g, epsilon, kbound, Partition::from_parts(g.n, std::move(parts)));
}

ReferencePartitionOracle ReferencePartitionOracle::wrap(const BoundedDegreeGraph& g,
                                                        double epsilon, int kbound,
                                                        Partition p) {
  if (kbound <= 0) {
    size_t biggest = 1;
    for (const auto& part : p.parts) biggest = std::max(biggest, part.size());
    kbound = static_cast<int>(biggest);
  }
  ReferencePartitionOracle oracle;
  oracle.report_ = partition_validate(g, p, epsilon, kbound);
  oracle.partition_ = std::move(p);
  oracle.kbound_ = kbound;
  return oracle;
}

const std::vector<Vertex>& ReferencePartitionOracle::part_of(Vertex v) {
  if (v < 0 || v >= static_cast<Vertex>(partition_.part_of.size()))
    throw UsageError("part_of: vertex id " + std::to_string(v) + " out of range");
  return partition_.parts[static_cast<size_t>(
      partition_.part_of[static_cast<size_t>(v)])];
}

Partition grid_tile_partition(int rows, int cols, int tile_rows, int tile_cols) {
  if (rows < 1 || cols < 1 || tile_rows < 1 || tile_cols < 1)
    throw UsageError("grid_tile_partition: all dimensions must be >= 1");
  const int tiles_per_row = (cols + tile_cols - 1) / tile_cols;
  std::vector<int> assignment(static_cast<size_t>(rows) * static_cast<size_t>(cols));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      assignment[static_cast<size_t>(r) * cols + c] =
          (r / tile_rows) * tiles_per_row + (c / tile_cols);
  return Partition::from_assignment(assignment);
}

Partition load_partition(std::istream& in, int n) {
  std::vector<int> assignment(static_cast<size_t>(n), -1);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tok;
    std::vector<std::string> toks;
    while (ss >> tok) {
      if (tok[0] == '#') break;
      toks.push_back(tok);
    }
    if (toks.empty()) continue;
    if (toks.size() != 2)
      throw UsageError("partition line " + std::to_string(lineno) +
                       ": expected `vertex part-index`");
    int v = 0, part = 0;
    try {
      v = std::stoi(toks[0]);
      part = std::stoi(toks[1]);
    } catch (const std::exception&) {
      throw UsageError("partition line " + std::to_string(lineno) + ": not an integer");
    }
    if (v < 0 || v >= n)
      throw UsageError("partition line " + std::to_string(lineno) +
                       ": vertex id out of range");
    if (part < 0)
      throw UsageError("partition line " + std::to_string(lineno) +
                       ": negative part index");
    if (assignment[static_cast<size_t>(v)] != -1)
      throw UsageError("partition line " + std::to_string(lineno) + ": vertex " +
                       std::to_string(v) + " assigned twice");
    assignment[static_cast<size_t>(v)] = part;
  }
  for (Vertex v = 0; v < n; ++v)
    if (assignment[static_cast<size_t>(v)] == -1)
      throw UsageError("partition file: vertex " + std::to_string(v) +
                       " has no assignment");
  return Partition::from_assignment(assignment);
}

}  // namespace lssg
