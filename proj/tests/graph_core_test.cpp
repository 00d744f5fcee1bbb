#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "lssg/generators.hpp"
#include "lssg/graph.hpp"

namespace {

using namespace lssg;

// Reference distance oracle: Floyd-Warshall over the stored adjacency.
std::vector<std::vector<int>> fw_dists(const BoundedDegreeGraph& g) {
  const int inf = 1 << 28;
  std::vector<std::vector<int>> d(static_cast<size_t>(g.n),
                                  std::vector<int>(static_cast<size_t>(g.n), inf));
  for (Vertex v = 0; v < g.n; ++v) {
    d[v][v] = 0;
    for (const NeighborSlot& s : g.adj[v]) d[v][s.vertex] = 1;
  }
  for (int m = 0; m < g.n; ++m)
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b)
        d[a][b] = std::min(d[a][b], d[a][m] + d[m][b]);
  return d;
}

// Reference expansion oracle: direct sweep over all subsets of size <= s.
Fraction brute_expansion(const BoundedDegreeGraph& g, int s) {
  Fraction best(1 << 20, 1);
  for (unsigned mask = 1; mask < (1u << g.n); ++mask) {
    std::vector<Vertex> set;
    for (int v = 0; v < g.n; ++v)
      if (mask & (1u << v)) set.push_back(v);
    if (static_cast<int>(set.size()) > s) continue;
    std::set<Vertex> out;
    for (Vertex v : set)
      for (const NeighborSlot& nb : g.adj[v])
        if (!(mask & (1u << nb.vertex))) out.insert(nb.vertex);
    Fraction ratio(static_cast<long long>(out.size()),
                   static_cast<long long>(set.size()));
    if (ratio < best) best = ratio;
  }
  return best;
}

// Reference reachability oracle: DFS.
bool dfs_connected(int n, const std::vector<Edge>& edges) {
  if (n == 0) return true;
  std::vector<std::vector<int>> adj(static_cast<size_t>(n));
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == n;
}

TEST_SUITE("graph-core") {

TEST_CASE("edge normalization and rank order") {
  Edge e(5, 2, 7);
  CHECK(e.u == 2);
  CHECK(e.v == 5);
  CHECK(e.w == 7);
  CHECK(Edge(1, 2).same_endpoints(Edge(2, 1)));

  CHECK(edge_rank_less(Edge(0, 1), Edge(0, 2)));
  CHECK(edge_rank_less(Edge(1, 5), Edge(2, 3)));
  CHECK_FALSE(edge_rank_less(Edge(2, 7), Edge(2, 5)));

  // Totality: exactly one direction holds for each distinct pair.
  BoundedDegreeGraph g = gen_grid(3, 3);
  const auto edges = g.edge_list();
  for (size_t i = 0; i < edges.size(); ++i)
    for (size_t j = 0; j < edges.size(); ++j) {
      if (i == j) continue;
      CHECK(edge_rank_less(edges[i], edges[j]) != edge_rank_less(edges[j], edges[i]));
    }
}

TEST_CASE("build validates type invariants") {
  CHECK_THROWS_AS(BoundedDegreeGraph::build(3, 2, false, 1, {Edge(1, 1)}),
                  UsageError);
  CHECK_THROWS_AS(
      BoundedDegreeGraph::build(3, 2, false, 1, {Edge(0, 1), Edge(1, 0)}),
      UsageError);
  CHECK_THROWS_AS(
      BoundedDegreeGraph::build(4, 2, false, 1,
                                {Edge(0, 1), Edge(0, 2), Edge(0, 3)}),
      UsageError);  // degree of 0 exceeds bound
  CHECK_THROWS_AS(BoundedDegreeGraph::build(3, 2, false, 1, {Edge(0, 5)}),
                  UsageError);
  CHECK_THROWS_AS(
      BoundedDegreeGraph::build(2, 1, true, 10, {Edge(0, 1, 5)}),
      UsageError);  // weight numerator below scale means weight < 1

  BoundedDegreeGraph ok = BoundedDegreeGraph::build(
      3, 2, true, 10, {Edge(0, 1, 10), Edge(1, 2, 25)});
  CHECK(ok.edge_weight(0, 1) == 10);
  CHECK(ok.edge_weight(2, 1) == 25);
  CHECK(ok.max_weight() == 25);
  CHECK(ok.max_weight_value() == doctest::Approx(2.5));
  CHECK_THROWS_AS(ok.edge_weight(0, 2), UsageError);

  // Empty graphs are representable.
  BoundedDegreeGraph empty = BoundedDegreeGraph::build(0, 0, false, 1, {});
  CHECK(empty.edge_count() == 0);
}

TEST_CASE("incidence access counts every query and validates input") {
  BoundedDegreeGraph g = gen_path(4);
  CountingAccess access(g);
  CHECK(access.count() == 0);
  NeighborSlot s = access.neighbor(1, 1);
  CHECK(s.vertex == 0);
  CHECK(access.neighbor(1, 2).vertex == 2);
  CHECK(access.neighbor(0, 2).absent());  // endpoint has only one neighbor
  CHECK(access.count() == 3);

  CHECK_THROWS_AS(access.neighbor(-1, 1), UsageError);
  CHECK_THROWS_AS(access.neighbor(4, 1), UsageError);
  CHECK_THROWS_AS(access.neighbor(0, 0), UsageError);
  CHECK_THROWS_AS(access.neighbor(0, 3), UsageError);
  CHECK(access.count() == 3);  // rejected queries are not counted
}

TEST_CASE("bfs_ball worked examples and exact query cost") {
  BoundedDegreeGraph path = gen_path(5);
  CountingAccess access(path);
  Ball b = bfs_ball(access, 2, 1);
  std::vector<Vertex> members = b.members;
  std::sort(members.begin(), members.end());
  CHECK(members == std::vector<Vertex>{1, 2, 3});
  CHECK(b.dist.at(2) == 0);
  CHECK(b.dist.at(1) == 1);
  CHECK(b.dist.at(3) == 1);
  REQUIRE(b.edges.size() == 2);
  CHECK(access.count() == static_cast<uint64_t>(path.d) * b.members.size());

  access.reset_count();
  Ball b0 = bfs_ball(access, 3, 0);
  CHECK(b0.members == std::vector<Vertex>{3});
  CHECK(b0.edges.empty());

  BoundedDegreeGraph grid = gen_grid(3, 3);
  CountingAccess ga(grid);
  Ball center = bfs_ball(ga, 4, 2);
  CHECK(center.members.size() == 9);
  CHECK(ga.count() == static_cast<uint64_t>(grid.d) * 9);
}

TEST_CASE("bfs_ball distances equal Floyd-Warshall truncated at k") {
  std::vector<BoundedDegreeGraph> graphs;
  graphs.push_back(gen_grid(4, 5));
  graphs.push_back(gen_cycle(9));
  graphs.push_back(gen_regular(30, 4, 1));
  for (auto& g : graphs) {
    const auto fw = fw_dists(g);
    CountingAccess access(g);
    for (int k : {0, 1, 2, 3, 7}) {
      for (Vertex v = 0; v < g.n; v += 3) {
        Ball b = bfs_ball(access, v, k);
        size_t expect = 0;
        for (Vertex u = 0; u < g.n; ++u)
          if (fw[v][u] <= k) {
            ++expect;
            REQUIRE(b.contains(u));
            CHECK(b.dist.at(u) == fw[v][u]);
          }
        CHECK(b.members.size() == expect);
      }
    }
  }
}

TEST_CASE("is_connected worked examples and DFS agreement") {
  CHECK(is_connected(3, {Edge(0, 1), Edge(1, 2)}));
  CHECK_FALSE(is_connected(3, {Edge(0, 1)}));
  CHECK_FALSE(is_connected(4, {Edge(0, 1), Edge(2, 3)}));

  // Agreement with an independent DFS on edge subsets of a fixed graph.
  BoundedDegreeGraph g = gen_grid(4, 4);
  const auto all = g.edge_list();
  for (uint64_t pick = 1; pick <= 40; ++pick) {
    std::vector<Edge> subset;
    for (size_t i = 0; i < all.size(); ++i)
      if (((pick * 2654435761u) >> (i % 13)) & 1) subset.push_back(all[i]);
    CHECK(is_connected(g.n, subset) == dfs_connected(g.n, subset));
  }
}

TEST_CASE("vertex_expansion worked examples match subset enumeration") {
  BoundedDegreeGraph c6 = gen_cycle(6);
  CHECK(vertex_expansion(c6, 1) == Fraction(2, 1));
  CHECK(vertex_expansion(c6, 2) == Fraction(1, 1));
  CHECK(vertex_expansion(c6, 3) == brute_expansion(c6, 3));

  BoundedDegreeGraph k4 = BoundedDegreeGraph::build(
      4, 3, false, 1,
      {Edge(0, 1), Edge(0, 2), Edge(0, 3), Edge(1, 2), Edge(1, 3), Edge(2, 3)});
  CHECK(vertex_expansion(k4, 2) == Fraction(1, 1));
  CHECK(vertex_expansion(k4, 2) == brute_expansion(k4, 2));

  BoundedDegreeGraph grid = gen_grid(3, 3);
  for (int s = 1; s <= 4; ++s)
    CHECK(vertex_expansion(grid, s) == brute_expansion(grid, s));

  CHECK_THROWS_AS(vertex_expansion(c6, 0), UsageError);
  CHECK_THROWS_AS(vertex_expansion(c6, 4), UsageError);
  CHECK_THROWS_AS(vertex_expansion(gen_grid(5, 5), 2), CapabilityError);

  // The sampler never reports below the exact minimum.
  Fraction exact = vertex_expansion(grid, 3);
  Fraction sampled = vertex_expansion_sampled(grid, 3, 200, 9);
  CHECK_FALSE(sampled < exact);
}

TEST_CASE("graph file round trip and loader diagnostics") {
  BoundedDegreeGraph g = gen_weighted_grid(3, 3, 8, 5);
  std::ostringstream first;
  save_graph(g, first);
  std::istringstream back(first.str());
  BoundedDegreeGraph reloaded = load_graph(back);
  CHECK(reloaded.n == g.n);
  CHECK(reloaded.d == g.d);
  CHECK(reloaded.scale == g.scale);
  std::ostringstream second;
  save_graph(reloaded, second);
  CHECK(first.str() == second.str());

  std::istringstream commented("# test\n3 2\n0 1\n\n1 2 # tail comment\n");
  BoundedDegreeGraph small = load_graph(commented);
  CHECK(small.edge_count() == 2);

  auto load_fails = [](const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    try {
      load_graph(in);
      return false;
    } catch (const UsageError& e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
  };
  CHECK(load_fails("", "missing header"));
  CHECK(load_fails("3 2\n0 0\n", "line 2"));
  CHECK(load_fails("3 2\n0 1\n0 1\n", "duplicate"));
  CHECK(load_fails("3 2\n0 9\n", "out of range"));
  CHECK(load_fails("3 2 weighted\n0 1\n", "expected `u v w`"));
  CHECK(load_fails("3 2 weighted\n0 1 0.5\n", "below 1"));

  // Fractional weights load to a shared power-of-ten scale.
  std::istringstream frac("3 2 weighted\n0 1 1.25\n1 2 3\n");
  BoundedDegreeGraph wf = load_graph(frac);
  CHECK(wf.scale == 100);
  CHECK(wf.edge_weight(0, 1) == 125);
  CHECK(wf.edge_weight(1, 2) == 300);
}

TEST_CASE("fraction ordering") {
  CHECK(Fraction(1, 2) < Fraction(2, 3));
  CHECK(Fraction(2, 4) == Fraction(1, 2));
  CHECK_FALSE(Fraction(3, 2) < Fraction(3, 2));
}

}  // TEST_SUITE

}  // namespace
