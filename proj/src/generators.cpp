#include "lssg/generators.hpp"

#include <algorithm>
#include <unordered_set>

#include "lssg/rng.hpp"

namespace lssg {

namespace {

// One full pairing attempt. Returns the edge list on success, empty on a dead
// end (remaining cells admit no simple edge).
bool try_pairing(int n, int d, CounterRng& rng, std::vector<Edge>& out) {
  const int total = n * d;
  std::vector<int> unmatched(static_cast<size_t>(total));
  for (int c = 0; c < total; ++c) unmatched[static_cast<size_t>(c)] = c;
  std::unordered_set<long long> present;
  present.reserve(static_cast<size_t>(total));
  out.clear();
  out.reserve(static_cast<size_t>(total / 2));

  auto edge_key = [n](int u, int v) {
    return static_cast<long long>(std::min(u, v)) * n + std::max(u, v);
  };

  while (unmatched.size() >= 2) {
    const size_t sz = unmatched.size();
    bool matched = false;
    int a = -1, b = -1;
    size_t ia = 0, ib = 0;
    for (int tries = 0; tries < 200 && !matched; ++tries) {
      ia = static_cast<size_t>(rng.below(sz));
      ib = static_cast<size_t>(rng.below(sz - 1));
      if (ib >= ia) ++ib;
      a = unmatched[ia];
      b = unmatched[ib];
      int va = a / d, vb = b / d;
      if (va == vb) continue;
      if (present.count(edge_key(va, vb))) continue;
      matched = true;
    }
    if (!matched) {
      // Random probing stalled: scan the (small) remainder for any legal pair.
      for (size_t i = 0; i < sz && !matched; ++i)
        for (size_t j = i + 1; j < sz && !matched; ++j) {
          int va = unmatched[i] / d, vb = unmatched[j] / d;
          if (va == vb || present.count(edge_key(va, vb))) continue;
          ia = i;
          ib = j;
          a = unmatched[i];
          b = unmatched[j];
          matched = true;
        }
      if (!matched) return false;  // dead end, restart the whole graph
    }
    int va = a / d, vb = b / d;
    present.insert(edge_key(va, vb));
    out.emplace_back(va, vb);
    // Remove both cells (larger position first so the swap stays valid).
    if (ia < ib) std::swap(ia, ib);
    unmatched[ia] = unmatched.back();
    unmatched.pop_back();
    unmatched[ib] = unmatched.back();
    unmatched.pop_back();
  }
  return true;
}

}  // namespace

BoundedDegreeGraph gen_regular(int n, int d, uint64_t seed) {
  if (n < 2) throw UsageError("regular: need n >= 2");
  if (d < 1) throw UsageError("regular: need d >= 1");
  if (d >= n) throw UsageError("regular: need d < n");
  if ((static_cast<long long>(n) * d) % 2 != 0)
    throw UsageError("regular: n*d must be even");

  CounterRng rng(hash_words({seed, rng_tag::kRegularGen,
                             static_cast<uint64_t>(n), static_cast<uint64_t>(d)}));
  std::vector<Edge> edges;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    if (try_pairing(n, d, rng, edges))
      return BoundedDegreeGraph::build(n, d, false, 1, edges);
  }
  throw GenerationError("regular: exceeded 1000 sampling attempts for n=" +
                        std::to_string(n) + " d=" + std::to_string(d));
}

namespace {

std::vector<Edge> grid_edges(int rows, int cols) {
  if (rows < 2 || cols < 2) throw UsageError("grid: need rows, cols >= 2");
  std::vector<Edge> edges;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  return edges;
}

}  // namespace

BoundedDegreeGraph gen_grid(int rows, int cols) {
  return BoundedDegreeGraph::build(rows * cols, 4, false, 1, grid_edges(rows, cols));
}

BoundedDegreeGraph gen_path(int n) {
  if (n < 2) throw UsageError("path: need n >= 2");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return BoundedDegreeGraph::build(n, 2, false, 1, edges);
}

BoundedDegreeGraph gen_cycle(int n) {
  if (n < 3) throw UsageError("cycle: need n >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(n - 1, 0);
  return BoundedDegreeGraph::build(n, 2, false, 1, edges);
}

BoundedDegreeGraph gen_weighted_grid(int rows, int cols, long long max_weight,
                                     uint64_t seed) {
  if (max_weight < 1) throw UsageError("weighted-grid: need max weight >= 1");
  std::vector<Edge> edges = grid_edges(rows, cols);
  CounterRng rng(hash_words({seed, rng_tag::kWeightedGrid,
                             static_cast<uint64_t>(rows), static_cast<uint64_t>(cols)}));
  for (Edge& e : edges)
    e.w = 1 + static_cast<long long>(rng.below(static_cast<uint64_t>(max_weight)));
  return BoundedDegreeGraph::build(rows * cols, 4, true, 1, edges);
}

BoundedDegreeGraph gen_graph(const GenParams& p, uint64_t seed) {
  if (p.family == "regular") return gen_regular(p.n, p.d, seed);
  if (p.family == "grid") return gen_grid(p.rows, p.cols);
  if (p.family == "path") return gen_path(p.n);
  if (p.family == "cycle") return gen_cycle(p.n);
  if (p.family == "weighted-grid")
    return gen_weighted_grid(p.rows, p.cols, p.max_weight, seed);
  throw UsageError("unknown graph family: " + p.family);
}

std::string gen_descriptor(const GenParams& p) {
  if (p.family == "regular")
    return "regular-n" + std::to_string(p.n) + "-d" + std::to_string(p.d);
  if (p.family == "grid")
    return "grid-" + std::to_string(p.rows) + "x" + std::to_string(p.cols);
  if (p.family == "path") return "path-" + std::to_string(p.n);
  if (p.family == "cycle") return "cycle-" + std::to_string(p.n);
  if (p.family == "weighted-grid")
    return "wgrid-" + std::to_string(p.rows) + "x" + std::to_string(p.cols) + "-W" +
           std::to_string(p.max_weight);
  return p.family;
}

}  // namespace lssg
