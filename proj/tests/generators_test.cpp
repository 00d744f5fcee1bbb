#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "lssg/generators.hpp"
#include "lssg/graph.hpp"

namespace {

using namespace lssg;

TEST_SUITE("generators") {

TEST_CASE("paths, cycles, grids have the advertised shape") {
  BoundedDegreeGraph path = gen_path(5);
  CHECK(path.n == 5);
  CHECK(path.d == 2);
  CHECK(path.edge_list() ==
        std::vector<Edge>{Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(3, 4)});

  BoundedDegreeGraph cycle = gen_cycle(6);
  CHECK(cycle.edge_count() == 6);
  for (Vertex v = 0; v < 6; ++v) CHECK(cycle.degree(v) == 2);

  BoundedDegreeGraph grid = gen_grid(3, 3);
  CHECK(grid.n == 9);
  CHECK(grid.d == 4);
  CHECK(grid.edge_count() == 12);  // 2*r*c - r - c
  CHECK(grid.degree(0) == 2);
  CHECK(grid.degree(4) == 4);
  CHECK(grid.has_edge(0, 1));
  CHECK(grid.has_edge(0, 3));
  CHECK_FALSE(grid.has_edge(0, 4));

  CHECK_THROWS_AS(gen_path(1), UsageError);
  CHECK_THROWS_AS(gen_cycle(2), UsageError);
  CHECK_THROWS_AS(gen_grid(1, 5), UsageError);
}

TEST_CASE("regular generator produces simple d-regular graphs") {
  BoundedDegreeGraph g = gen_regular(50, 4, 7);
  CHECK(g.n == 50);
  CHECK(g.d == 4);
  CHECK(g.edge_count() == 100);
  for (Vertex v = 0; v < g.n; ++v) CHECK(g.degree(v) == 4);
  // build() already rejects loops and duplicates, so reaching here means the
  // graph is simple.

  CHECK_THROWS_AS(gen_regular(5, 3, 0), UsageError);   // odd n*d
  CHECK_THROWS_AS(gen_regular(4, 4, 0), UsageError);   // d >= n
  CHECK_THROWS_AS(gen_regular(4, -1, 0), UsageError);
}

TEST_CASE("generation is deterministic per seed") {
  BoundedDegreeGraph a = gen_regular(50, 4, 7);
  BoundedDegreeGraph b = gen_regular(50, 4, 7);
  CHECK(a.edge_list() == b.edge_list());

  std::ostringstream sa, sb;
  save_graph(a, sa);
  save_graph(b, sb);
  CHECK(sa.str() == sb.str());

  BoundedDegreeGraph c = gen_regular(50, 4, 8);
  CHECK(a.edge_list() != c.edge_list());

  BoundedDegreeGraph w1 = gen_weighted_grid(4, 4, 8, 3);
  BoundedDegreeGraph w2 = gen_weighted_grid(4, 4, 8, 3);
  CHECK(w1.edge_list() == w2.edge_list());
}

TEST_CASE("weighted grid draws integer weights in 1..max") {
  BoundedDegreeGraph g = gen_weighted_grid(5, 5, 8, 11);
  CHECK(g.is_weighted);
  CHECK(g.scale == 1);
  std::set<long long> seen;
  for (const Edge& e : g.edge_list()) {
    CHECK(e.w >= 1);
    CHECK(e.w <= 8);
    seen.insert(e.w);
  }
  CHECK(seen.size() > 2);  // 40 draws from 1..8 should hit several values
}

TEST_CASE("gen_graph dispatches families and labels them") {
  GenParams p;
  p.family = "grid";
  p.rows = 4;
  p.cols = 5;
  CHECK(gen_graph(p, 0).n == 20);
  CHECK(gen_descriptor(p) == "grid-4x5");

  p.family = "regular";
  p.n = 20;
  p.d = 4;
  CHECK(gen_graph(p, 1).edge_count() == 40);
  CHECK(gen_descriptor(p) == "regular-n20-d4");

  p.family = "weighted-grid";
  p.rows = 3;
  p.cols = 3;
  p.max_weight = 5;
  CHECK(gen_graph(p, 2).is_weighted);
  CHECK(gen_descriptor(p) == "wgrid-3x3-W5");

  p.family = "path";
  p.n = 7;
  CHECK(gen_descriptor(p) == "path-7");
  p.family = "cycle";
  CHECK(gen_graph(p, 0).edge_count() == 7);

  p.family = "moebius";
  CHECK_THROWS_AS(gen_graph(p, 0), UsageError);
}

}  // TEST_SUITE

}  // namespace
