#include "lssg/kruskal.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "lssg/rng.hpp"

namespace lssg {

namespace {

bool ball_has_edge(const Ball& ball, Vertex x, Vertex y) {
  Edge q(x, y);
  for (const Edge& e : ball.edges)
    if (e.same_endpoints(q)) return true;
  return false;
}

// True iff x and y stay connected inside the ball after deleting (x,y) and
// every induced edge of higher rank — i.e. (x,y) is the max-rank edge of a
// cycle visible here.
bool cycle_witness_in_ball(const Ball& ball, Vertex x, Vertex y) {
  const Edge q(x, y);
  std::unordered_map<Vertex, int> idx;
  idx.reserve(ball.members.size());
  for (Vertex m : ball.members) idx.emplace(m, static_cast<int>(idx.size()));
  DisjointSets dsu(static_cast<int>(ball.members.size()));
  for (const Edge& e : ball.edges) {
    if (e.same_endpoints(q)) continue;
    if (edge_rank_less(q, e)) continue;  // higher rank than the query: deleted
    dsu.unite(idx.at(e.u), idx.at(e.v));
  }
  return dsu.find(idx.at(x)) == dsu.find(idx.at(y));
}

}  // namespace

bool kruskal_edge_query(CountingAccess& access, const KruskalConfig& cfg, Vertex x,
                        Vertex y) {
  if (cfg.k < 1) throw UsageError("kruskal_edge_query: k must be >= 1");
  if (x == y) throw UsageError("kruskal_edge_query: endpoints must differ");
  Ball bx = bfs_ball(access, x, cfg.k);
  if (!ball_has_edge(bx, x, y))
    throw UsageError("kruskal_edge_query: (" + std::to_string(x) + "," +
                     std::to_string(y) + ") is not an edge");
  if (cycle_witness_in_ball(bx, x, y)) return false;
  if (cfg.check_both_endpoints) {
    Ball by = bfs_ball(access, y, cfg.k);
    if (cycle_witness_in_ball(by, x, y)) return false;
  }
  return true;
}

int estimate_k_kruskal(CountingAccess& access, int n, int d, double epsilon,
                       double delta, uint64_t seed) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw UsageError("estimate_k_kruskal: epsilon must be in (0,1]");
  if (!(delta > 0.0 && delta < 1.0))
    throw UsageError("estimate_k_kruskal: delta must be in (0,1)");
  const int s_samp =
      static_cast<int>(std::ceil(8.0 / (epsilon * epsilon) * std::log(2.0 / delta)));
  CounterRng rng(hash_words({seed, rng_tag::kEstimator, 2ull}));

  // Cumulative ball sizes per sampled vertex, indexed by radius; after the
  // component is exhausted the size stays constant.
  std::vector<std::vector<long long>> growth;
  growth.reserve(static_cast<size_t>(s_samp));
  for (int t = 0; t < s_samp; ++t) {
    Vertex v = static_cast<Vertex>(rng.below(static_cast<uint64_t>(n)));
    std::unordered_set<Vertex> seen{v};
    std::vector<Vertex> level{v};
    std::vector<long long> sizes{1};
    while (!level.empty()) {
      std::vector<Vertex> next;
      for (Vertex x : level) {
        for (int i = 1; i <= d; ++i) {
          NeighborSlot s = access.neighbor(x, i);
          if (s.absent() || s.vertex == x) continue;
          if (seen.insert(s.vertex).second) next.push_back(s.vertex);
        }
      }
      level = std::move(next);
      if (!level.empty()) sizes.push_back(static_cast<long long>(seen.size()));
    }
    growth.push_back(std::move(sizes));
  }

  const double need = (1.0 - 3.0 * epsilon / (8.0 * d)) * s_samp;
  for (int k = 1; k <= n; ++k) {
    int good = 0;
    for (const auto& sizes : growth) {
      long long size_k =
          sizes[std::min(sizes.size() - 1, static_cast<size_t>(k))];
      if (std::log(static_cast<double>(size_k)) <= epsilon * k / (4.0 * d)) ++good;
    }
    if (static_cast<double>(good) + 1e-9 >= need) return k;
  }
  return n;
}

std::vector<Edge> rank_kruskal_reference(const BoundedDegreeGraph& g) {
  std::vector<Edge> edges = g.edge_list();  // already in rank order
  DisjointSets dsu(g.n);
  std::vector<Edge> tree;
  for (const Edge& e : edges)
    if (dsu.unite(e.u, e.v)) tree.push_back(e);
  if (static_cast<int>(tree.size()) != g.n - 1)
    throw UsageError("rank_kruskal_reference: graph is not connected");
  return tree;
}

HyperfiniteWitness hyperfinite_witness(const BoundedDegreeGraph& g, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw UsageError("hyperfinite_witness: epsilon must be in (0,1]");
  if (g.n > 5000)
    throw CapabilityError("hyperfinite_witness: test scale only (n <= 5000)");

  HyperfiniteWitness w;
  if (g.n == 0) return w;
  if (g.d < 1 || g.edge_count() == 0) {
    // Edgeless graphs are already fully fragmented.
    w.max_component = 1;
    for (Vertex v = 0; v < g.n; ++v) w.components.push_back({v});
    return w;
  }
  const double beta = epsilon / (2.0 * g.d);
  w.beta = beta;

  // Growth tables: cumulative |ball_k(v)| per vertex, capped at the radius
  // beyond which ln(n) <= beta*k/2 makes every vertex satisfy the condition.
  const int k_max =
      std::max(1, static_cast<int>(std::ceil(2.0 * std::log(g.n) / beta)) + 1);
  std::vector<std::vector<int>> sizes(static_cast<size_t>(g.n));
  {
    std::vector<int> dist(static_cast<size_t>(g.n));
    for (Vertex v = 0; v < g.n; ++v) {
      std::fill(dist.begin(), dist.end(), -1);
      dist[static_cast<size_t>(v)] = 0;
      std::vector<Vertex> level{v};
      int reached = 1;
      auto& sv = sizes[static_cast<size_t>(v)];
      sv.push_back(1);
      int depth = 0;
      while (!level.empty() && depth < k_max) {
        std::vector<Vertex> next;
        for (Vertex x : level)
          for (const NeighborSlot& s : g.adj[x])
            if (dist[static_cast<size_t>(s.vertex)] == -1) {
              dist[static_cast<size_t>(s.vertex)] = depth + 1;
              next.push_back(s.vertex);
              ++reached;
            }
        ++depth;
        level = std::move(next);
        if (!level.empty()) sv.push_back(reached);
      }
    }
  }
  auto size_at = [&](Vertex v, int k) {
    const auto& sv = sizes[static_cast<size_t>(v)];
    return sv[std::min(sv.size() - 1, static_cast<size_t>(k))];
  };

  // Exact least k where a (1-beta) fraction of vertices has slow enough growth.
  int kk = g.n;
  for (int k = 1; k <= k_max; ++k) {
    int good = 0;
    for (Vertex v = 0; v < g.n; ++v)
      if (std::log(static_cast<double>(size_at(v, k))) <= beta * k / 2.0) ++good;
    if (static_cast<double>(good) + 1e-9 >= (1.0 - beta) * g.n) {
      kk = k;
      break;
    }
  }
  w.k = kk;

  std::set<std::pair<Vertex, Vertex>> removed;
  std::vector<char> active(static_cast<size_t>(g.n), 1);

  // Phase 1: strip every edge of the fast-growth violators.
  for (Vertex v = 0; v < g.n; ++v) {
    if (std::log(static_cast<double>(size_at(v, kk))) <= beta * kk / 2.0) continue;
    active[static_cast<size_t>(v)] = 0;
    w.components.push_back({v});
    for (const NeighborSlot& s : g.adj[v])
      removed.insert({std::min(v, s.vertex), std::max(v, s.vertex)});
  }

  // Phase 2: peel balls at the first radius where growth stalls below (1+beta).
  std::vector<int> dist(static_cast<size_t>(g.n));
  for (Vertex root = 0; root < g.n; ++root) {
    if (!active[static_cast<size_t>(root)]) continue;
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<size_t>(root)] = 0;
    std::vector<Vertex> order{root};
    std::vector<Vertex> level{root};
    std::vector<long long> cum{1};
    while (!level.empty()) {
      std::vector<Vertex> next;
      for (Vertex x : level)
        for (const NeighborSlot& s : g.adj[x]) {
          if (!active[static_cast<size_t>(s.vertex)]) continue;
          if (dist[static_cast<size_t>(s.vertex)] != -1) continue;
          dist[static_cast<size_t>(s.vertex)] = dist[static_cast<size_t>(x)] + 1;
          next.push_back(s.vertex);
          order.push_back(s.vertex);
        }
      cum.push_back(static_cast<long long>(order.size()));
      level = std::move(next);
    }
    auto cum_at = [&](int k) {
      return cum[std::min(cum.size() - 1, static_cast<size_t>(k))];
    };
    // A stall must appear before radius k: the root passed the growth test, so
    // (1+beta)^k growth for k straight steps would overshoot exp(beta*k/2).
    // Exhausting the component counts as a stall (the ball stops growing).
    int cut_radius = -1;
    for (int k = 0; k < kk; ++k)
      if (static_cast<double>(cum_at(k + 1)) <
          (1.0 + beta) * static_cast<double>(cum_at(k))) {
        cut_radius = k;
        break;
      }
    if (cut_radius == -1)
      throw ContractError("hyperfinite_witness: no growth stall below k");

    std::vector<Vertex> comp;
    for (Vertex x : order) {
      if (dist[static_cast<size_t>(x)] > cut_radius) break;
      comp.push_back(x);
    }
    for (Vertex x : comp) {
      for (const NeighborSlot& s : g.adj[x]) {
        if (!active[static_cast<size_t>(s.vertex)]) continue;
        if (dist[static_cast<size_t>(s.vertex)] != -1 &&
            dist[static_cast<size_t>(s.vertex)] <= cut_radius)
          continue;  // internal edge
        removed.insert({std::min(x, s.vertex), std::max(x, s.vertex)});
      }
    }
    for (Vertex x : comp) active[static_cast<size_t>(x)] = 0;
    w.components.push_back(std::move(comp));
  }

  for (const auto& [a, b] : removed) w.removed.emplace_back(a, b);

  // Exact component size and diameter measurements.
  for (const auto& comp : w.components) {
    w.max_component = std::max(w.max_component, static_cast<long long>(comp.size()));
    if (comp.size() <= 1) continue;
    std::unordered_set<Vertex> in_comp(comp.begin(), comp.end());
    std::unordered_map<Vertex, int> dcomp;
    for (Vertex src : comp) {
      dcomp.clear();
      dcomp.emplace(src, 0);
      std::vector<Vertex> queue{src};
      for (size_t head = 0; head < queue.size(); ++head) {
        Vertex x = queue[head];
        int dx = dcomp[x];
        for (const NeighborSlot& s : g.adj[x]) {
          if (!in_comp.count(s.vertex)) continue;
          if (dcomp.emplace(s.vertex, dx + 1).second) queue.push_back(s.vertex);
        }
      }
      for (const auto& [z, dz] : dcomp) w.max_diameter = std::max(w.max_diameter, dz);
    }
  }
  return w;
}

bool KruskalOracle::edge_query(Vertex x, Vertex y) {
  if (cfg_.k < 1) throw UsageError("kruskal_edge_query: k must be >= 1");
  if (x == y) throw UsageError("kruskal_edge_query: endpoints must differ");
  if (full_graph_mode_) {
    auto key = std::make_pair(std::min(x, y), std::max(x, y));
    if (!all_edges_.count(key))
      throw UsageError("kruskal_edge_query: (" + std::to_string(x) + "," +
                       std::to_string(y) + ") is not an edge");
    return forest_.count(key) != 0;
  }

  Ball bx = bfs_ball(*access_, x, cfg_.k);
  int max_dist = 0;
  for (const auto& [z, dz] : bx.dist) max_dist = std::max(max_dist, dz);
  if (static_cast<int>(bx.members.size()) == access_->n() &&
      cfg_.k >= 2 * max_dist) {
    // x's ball covers everything within half of k, so every vertex's ball is
    // the whole graph too and answers reduce to rank-forest membership.
    DisjointSets dsu(access_->n());
    for (const Edge& e : bx.edges) all_edges_.insert({e.u, e.v});
    std::vector<Edge> edges = bx.edges;
    std::sort(edges.begin(), edges.end(), edge_rank_less);
    for (const Edge& e : edges)
      if (dsu.unite(e.u, e.v)) forest_.insert({e.u, e.v});
    full_graph_mode_ = true;
    return edge_query(x, y);
  }

  if (!ball_has_edge(bx, x, y))
    throw UsageError("kruskal_edge_query: (" + std::to_string(x) + "," +
                     std::to_string(y) + ") is not an edge");
  if (cycle_witness_in_ball(bx, x, y)) return false;
  if (cfg_.check_both_endpoints) {
    Ball by = bfs_ball(*access_, y, cfg_.k);
    if (cycle_witness_in_ball(by, x, y)) return false;
  }
  return true;
}

}  // namespace lssg
