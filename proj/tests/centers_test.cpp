#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "lssg/centers.hpp"
#include "lssg/generators.hpp"
#include "lssg/graph.hpp"

using namespace lssg;

namespace {

// Independent distance oracle: plain BFS over the adjacency lists.
std::vector<int> dists_from(const BoundedDegreeGraph& g, Vertex src) {
  std::vector<int> dist(g.n, -1);
  std::queue<Vertex> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    for (const NeighborSlot& s : g.adj[v]) {
      if (s.absent() || dist[s.vertex] != -1) continue;
      dist[s.vertex] = dist[v] + 1;
      q.push(s.vertex);
    }
  }
  return dist;
}

// Independent nearest-center rule: min distance within k, ties by earliest
// position in the center list.
CenterAssignment brute_assign(const BoundedDegreeGraph& g, const CentersConfig& cfg,
                              Vertex v) {
  std::vector<int> dist = dists_from(g, v);
  CenterAssignment best;
  best.vertex = v;
  for (const auto& [c, pos] : cfg.center_pos) {
    if (dist[c] < 0 || dist[c] > cfg.k) continue;
    if (!best.assigned() || dist[c] < best.dist ||
        (dist[c] == best.dist && pos < best.center_pos)) {
      best.center = c;
      best.dist = dist[c];
      best.center_pos = pos;
    }
  }
  return best;
}

// Independent lexicographically smallest shortest path, built greedily from
// full single-source distances at both endpoints.
std::optional<std::vector<Vertex>> brute_lex_path(const BoundedDegreeGraph& g,
                                                  Vertex u, Vertex v) {
  Vertex a = std::min(u, v), b = std::max(u, v);
  std::vector<int> da = dists_from(g, a), db = dists_from(g, b);
  if (da[b] < 0) return std::nullopt;
  int total = da[b];
  std::vector<Vertex> path = {a};
  Vertex cur = a;
  while (cur != b) {
    Vertex next = kAbsent;
    for (const NeighborSlot& s : g.adj[cur]) {
      if (s.absent()) continue;
      Vertex w = s.vertex;
      if (da[w] == da[cur] + 1 && db[w] >= 0 && da[w] + db[w] == total)
        if (next == kAbsent || w < next) next = w;
    }
    REQUIRE(next != kAbsent);
    path.push_back(next);
    cur = next;
  }
  return path;
}

std::set<std::pair<Vertex, Vertex>> yes_set(const BoundedDegreeGraph& g,
                                            const CentersConfig& cfg,
                                            CentersRun* run) {
  BoundedDegreeGraph copy = g;  // non-const access for queries
  CountingAccess access(copy);
  std::set<std::pair<Vertex, Vertex>> out;
  for (const Edge& e : g.edge_list())
    if (centers_edge_query(access, cfg, e.u, e.v, run)) out.insert({e.u, e.v});
  return out;
}

std::set<std::pair<Vertex, Vertex>> to_set(const std::vector<Edge>& edges) {
  std::set<std::pair<Vertex, Vertex>> out;
  for (const Edge& e : edges) out.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  return out;
}

}  // namespace

TEST_SUITE("centers") {

TEST_CASE("config: center draws, positions, and threshold formula") {
  CentersConfig cfg = CentersConfig::make(200, 0.5, 0.1, 3, 42);
  CHECK(cfg.ell == static_cast<int>(std::ceil(std::sqrt(0.5 * 200 / 2.0))));
  CHECK(cfg.centers.size() == static_cast<size_t>(cfg.ell));
  for (Vertex c : cfg.centers) {
    CHECK(c >= 0);
    CHECK(c < 200);
  }
  CentersConfig again = CentersConfig::make(200, 0.5, 0.1, 3, 42);
  CHECK(cfg.centers == again.centers);
  CentersConfig other = CentersConfig::make(200, 0.5, 0.1, 3, 43);
  CHECK(cfg.centers != other.centers);

  // duplicate draws keep the earliest position
  CentersConfig fixed = CentersConfig::with_centers({4, 4, 1}, 2);
  CHECK(fixed.center_pos.at(4) == 0);
  CHECK(fixed.center_pos.at(1) == 2);
  CHECK(fixed.is_center(4));
  CHECK_FALSE(fixed.is_center(0));

  CHECK(centers_threshold(2000, 0.5, 0.1) ==
        doctest::Approx(std::sqrt(2.0 * 2000 / 0.5) * std::log(2000 / 0.1)));
}

TEST_CASE("assignment on a path: radius controls who reaches the center") {
  BoundedDegreeGraph g = gen_path(5);
  CountingAccess access(g);
  CentersConfig cfg = CentersConfig::with_centers({2}, 2);
  for (Vertex v = 0; v < 5; ++v) {
    CenterAssignment a = assign_center(access, cfg, v);
    CHECK(a.assigned());
    CHECK(a.center == 2);
    CHECK(a.dist == std::abs(v - 2));
    CHECK(a.center_pos == 0);
  }
  CentersConfig tight = CentersConfig::with_centers({2}, 1);
  CHECK_FALSE(assign_center(access, tight, 0).assigned());
  CHECK_FALSE(assign_center(access, tight, 4).assigned());
  CHECK(assign_center(access, tight, 1).assigned());
}

TEST_CASE("assignment ties break toward the earlier center in the list") {
  BoundedDegreeGraph g = gen_cycle(6);
  CountingAccess access(g);
  // vertex 1 is at distance 1 from both centers; 0 is listed first
  CentersConfig cfg = CentersConfig::with_centers({0, 2}, 3);
  CenterAssignment a = assign_center(access, cfg, 1);
  CHECK(a.center == 0);
  CHECK(a.dist == 1);
  CHECK(a.center_pos == 0);
  // reversing the list flips the winner
  CentersConfig rev = CentersConfig::with_centers({2, 0}, 3);
  CenterAssignment b = assign_center(access, rev, 1);
  CHECK(b.center == 2);
  CHECK(b.center_pos == 0);
}

TEST_CASE("assignment agrees with an independent nearest-center computation") {
  std::vector<BoundedDegreeGraph> graphs;
  graphs.push_back(gen_grid(5, 5));
  graphs.push_back(gen_cycle(11));
  graphs.push_back(gen_regular(40, 4, 3));
  for (BoundedDegreeGraph& g : graphs) {
    for (uint64_t seed : {1u, 2u, 9u}) {
      for (int k : {1, 2, 4}) {
        CentersConfig cfg = CentersConfig::make(g.n, 0.5, 0.1, k, seed);
        CountingAccess access(g);
        for (Vertex v = 0; v < g.n; ++v) {
          CenterAssignment got = assign_center(access, cfg, v);
          CenterAssignment want = brute_assign(g, cfg, v);
          CHECK(got.assigned() == want.assigned());
          if (want.assigned()) {
            CHECK(got.center == want.center);
            CHECK(got.dist == want.dist);
            CHECK(got.center_pos == want.center_pos);
          }
        }
      }
    }
  }
}

TEST_CASE("assignment stops early: cost bounded by the k-ball, not the graph") {
  BoundedDegreeGraph g = gen_cycle(5000);
  CountingAccess access(g);
  CentersConfig cfg = CentersConfig::with_centers({0}, 3);
  assign_center(access, cfg, 2500);  // far from the center
  CHECK(access.count() <= static_cast<uint64_t>(g.d * (2 * 3 + 1) + g.d));
}

TEST_CASE("lex-min shortest path: worked examples") {
  BoundedDegreeGraph path = gen_path(6);
  CountingAccess pa(path);
  auto p = lex_min_shortest_path(pa, 1, 4, 3);
  REQUIRE(p.has_value());
  CHECK(*p == std::vector<Vertex>{1, 2, 3, 4});

  BoundedDegreeGraph cyc = gen_cycle(4);
  CountingAccess ca(cyc);
  auto q = lex_min_shortest_path(ca, 1, 3, 2);
  REQUIRE(q.has_value());
  CHECK(*q == std::vector<Vertex>{1, 0, 3});
  // argument order does not matter; the sequence starts at the smaller id
  auto r = lex_min_shortest_path(ca, 3, 1, 2);
  REQUIRE(r.has_value());
  CHECK(*r == *q);

  // adjacent endpoints
  auto s = lex_min_shortest_path(ca, 2, 1, 1);
  REQUIRE(s.has_value());
  CHECK(*s == std::vector<Vertex>{1, 2});
}

TEST_CASE("lex-min shortest path: the radius cap finds distances up to 2k+2") {
  BoundedDegreeGraph g = gen_path(8);  // endpoints at distance 7
  CountingAccess access(g);
  CHECK_FALSE(lex_min_shortest_path(access, 0, 7, 2).has_value());  // 7 > 6
  auto p = lex_min_shortest_path(access, 0, 7, 3);                  // 7 <= 8
  REQUIRE(p.has_value());
  CHECK(p->size() == 8);
}

TEST_CASE("lex-min shortest path matches exhaustive enumeration") {
  BoundedDegreeGraph g = gen_grid(3, 4);
  CountingAccess access(g);
  for (Vertex u = 0; u < g.n; ++u) {
    for (Vertex v = u + 1; v < g.n; ++v) {
      auto got = lex_min_shortest_path(access, u, v, g.n);
      auto want = brute_lex_path(g, u, v);
      REQUIRE(got.has_value() == want.has_value());
      if (want) CHECK(*got == *want);
    }
  }
}

TEST_CASE("edge query: path region keeps its full BFS tree") {
  BoundedDegreeGraph g = gen_path(5);
  CountingAccess access(g);
  CentersConfig cfg = CentersConfig::with_centers({2}, 2);
  for (const Edge& e : g.edge_list()) CHECK(centers_edge_query(access, cfg, e.u, e.v));
}

TEST_CASE("edge query: cycle drops exactly the edge between equal-depth leaves") {
  BoundedDegreeGraph g = gen_cycle(4);
  CountingAccess access(g);
  CentersConfig cfg = CentersConfig::with_centers({0}, 2);
  CHECK(centers_edge_query(access, cfg, 0, 1));
  CHECK(centers_edge_query(access, cfg, 0, 3));
  CHECK(centers_edge_query(access, cfg, 1, 2));
  CHECK_FALSE(centers_edge_query(access, cfg, 2, 3));
  // answers are symmetric in the endpoints
  CHECK(centers_edge_query(access, cfg, 1, 0));
  CHECK_FALSE(centers_edge_query(access, cfg, 3, 2));
}

TEST_CASE("edge query: unassigned endpoints keep all their edges") {
  BoundedDegreeGraph g = gen_cycle(4);
  CountingAccess access(g);
  CentersConfig cfg = CentersConfig::with_centers({0}, 0);  // only 0 assigned
  int yes = 0;
  for (const Edge& e : g.edge_list())
    if (centers_edge_query(access, cfg, e.u, e.v)) ++yes;
  CHECK(yes == 4);
}

TEST_CASE("edge query rejects non-edges") {
  BoundedDegreeGraph g = gen_path(5);
  CountingAccess access(g);
  CentersConfig cfg = CentersConfig::with_centers({2}, 2);
  CHECK_THROWS_AS(centers_edge_query(access, cfg, 0, 2), UsageError);
  CHECK_THROWS_AS(centers_edge_query(access, cfg, 1, 1), UsageError);
}

TEST_CASE("local answers equal the global construction and span the graph") {
  std::vector<BoundedDegreeGraph> graphs;
  graphs.push_back(gen_grid(5, 5));
  graphs.push_back(gen_cycle(12));
  graphs.push_back(gen_path(9));
  graphs.push_back(gen_regular(60, 4, 2));
  graphs.push_back(gen_regular(200, 4, 5));
  for (BoundedDegreeGraph& g : graphs) {
    for (uint64_t seed : {1u, 2u, 3u}) {
      for (int k : {2, 3, 6}) {
        CentersConfig cfg = CentersConfig::make(g.n, 0.5, 0.1, k, seed);
        CentersRun run;
        auto local = yes_set(g, cfg, &run);
        auto global = to_set(centers_global_reference(g, cfg));
        CHECK(local == global);
        std::vector<Edge> kept(local.size());
        std::transform(local.begin(), local.end(), kept.begin(),
                       [](const std::pair<Vertex, Vertex>& p) {
                         return Edge{p.first, p.second, 1};
                       });
        CHECK(is_connected(g.n, kept));
      }
    }
  }
}

TEST_CASE("a shared run memo changes the cost, never the answers") {
  BoundedDegreeGraph g = gen_grid(6, 6);
  CentersConfig cfg = CentersConfig::make(g.n, 0.5, 0.1, 4, 7);

  CountingAccess fresh(g);
  std::set<std::pair<Vertex, Vertex>> without;
  for (const Edge& e : g.edge_list())
    if (centers_edge_query(fresh, cfg, e.u, e.v)) without.insert({e.u, e.v});

  CountingAccess shared(g);
  CentersRun run;
  std::set<std::pair<Vertex, Vertex>> with;
  for (const Edge& e : g.edge_list())
    if (centers_edge_query(shared, cfg, e.u, e.v, &run)) with.insert({e.u, e.v});

  CHECK(with == without);
  CHECK(shared.count() < fresh.count());
}

TEST_CASE("k estimator: complete graph needs a single hop") {
  const int n = 300;
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) es.push_back({u, v, 1});
  BoundedDegreeGraph g = BoundedDegreeGraph::build(n, n - 1, false, 1, es);
  CountingAccess access(g);
  CHECK(estimate_k_centers(access, g.n, g.d, 0.5, 0.1, 11) == 1);
}

TEST_CASE("k estimator: cycle needs the threshold's worth of hops") {
  BoundedDegreeGraph g = gen_cycle(2000);
  CountingAccess access(g);
  double s = centers_threshold(2000, 0.5, 0.1);
  int expected = static_cast<int>(std::ceil((s - 1.0) / 2.0));
  CHECK(estimate_k_centers(access, g.n, g.d, 0.5, 0.1, 4) == expected);
}

TEST_CASE("k estimator: exhausted components contribute k = n") {
  // two disjoint paths; every ball exhausts its component before reaching the
  // threshold, so the estimate snaps to n
  std::vector<Edge> es;
  for (int v = 0; v + 1 < 30; ++v) es.push_back({v, v + 1, 1});
  for (int v = 30; v + 1 < 60; ++v) es.push_back({v, v + 1, 1});
  BoundedDegreeGraph g = BoundedDegreeGraph::build(60, 2, false, 1, es);
  CountingAccess access(g);
  CHECK(estimate_k_centers(access, g.n, g.d, 0.5, 0.1, 2) == 60);
}

TEST_CASE("k estimator: the estimated radius covers most vertices of a random regular graph") {
  BoundedDegreeGraph g = gen_regular(2000, 4, 3);
  CountingAccess access(g);
  double eps = 0.5, delta = 0.1;
  int k_est = estimate_k_centers(access, g.n, g.d, eps, delta, 17);
  REQUIRE(k_est >= 1);
  double s = centers_threshold(g.n, eps, delta);
  int covered = 0;
  for (Vertex v = 0; v < g.n; ++v) {
    // exact radius at which v's ball reaches the threshold
    std::vector<int> dist = dists_from(g, v);
    int within = 0;
    for (int x : dist)
      if (x >= 0 && x <= k_est) ++within;
    if (within >= s) ++covered;
  }
  double frac = static_cast<double>(covered) / g.n;
  CHECK(frac >= 1.0 - eps / (2.0 * g.d));
}

}  // TEST_SUITE
