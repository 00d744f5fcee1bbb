#include "lssg/centers.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <set>
#include <unordered_set>

#include "lssg/rng.hpp"

namespace lssg {

CentersConfig CentersConfig::make(int n, double epsilon, double delta, int k,
                                  uint64_t seed) {
  if (n < 1) throw UsageError("centers: need n >= 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw UsageError("centers: epsilon must be in (0,1]");
  if (!(delta > 0.0 && delta < 1.0)) throw UsageError("centers: delta must be in (0,1)");
  if (k < 0) throw UsageError("centers: k must be >= 0");
  CentersConfig cfg;
  cfg.epsilon = epsilon;
  cfg.delta = delta;
  cfg.k = k;
  cfg.seed = seed;
  cfg.ell = std::max(1, static_cast<int>(std::ceil(std::sqrt(epsilon * n / 2.0))));
  CounterRng rng(hash_words({seed, rng_tag::kCenters, static_cast<uint64_t>(n)}));
  cfg.centers.reserve(static_cast<size_t>(cfg.ell));
  for (int i = 0; i < cfg.ell; ++i) {
    Vertex c = static_cast<Vertex>(rng.below(static_cast<uint64_t>(n)));
    cfg.centers.push_back(c);
    cfg.center_pos.emplace(c, i);  // emplace keeps the earliest position
  }
  return cfg;
}

CentersConfig CentersConfig::with_centers(std::vector<Vertex> centers, int k) {
  if (centers.empty()) throw UsageError("centers: need at least one center");
  if (k < 0) throw UsageError("centers: k must be >= 0");
  CentersConfig cfg;
  cfg.k = k;
  cfg.ell = static_cast<int>(centers.size());
  cfg.centers = std::move(centers);
  for (int i = 0; i < cfg.ell; ++i)
    cfg.center_pos.emplace(cfg.centers[static_cast<size_t>(i)], i);
  return cfg;
}

double centers_threshold(int n, double epsilon, double delta) {
  return std::sqrt(2.0 * n / epsilon) * std::log(n / delta);
}

CenterAssignment assign_center(CountingAccess& access, const CentersConfig& cfg,
                               Vertex v, CentersRun* run) {
  if (run) {
    auto it = run->assignments.find(v);
    if (it != run->assignments.end()) return it->second;
  }
  if (v < 0 || v >= access.n()) throw UsageError("assign_center: invalid vertex");

  CenterAssignment res;
  res.vertex = v;
  std::unordered_map<Vertex, int> dist;
  dist.emplace(v, 0);
  std::vector<Vertex> level{v};
  const int d = access.d();

  // Level-synchronous BFS; the first level containing a center decides the
  // assignment, so deeper levels are never explored (same answer, fewer queries).
  for (int depth = 0; depth <= cfg.k && !level.empty(); ++depth) {
    for (Vertex u : level) {
      auto it = cfg.center_pos.find(u);
      if (it != cfg.center_pos.end() &&
          (res.center_pos == -1 || it->second < res.center_pos)) {
        res.center = u;
        res.dist = depth;
        res.center_pos = it->second;
      }
    }
    if (res.assigned() || depth == cfg.k) break;
    std::vector<Vertex> next;
    for (Vertex u : level) {
      for (int i = 1; i <= d; ++i) {
        NeighborSlot s = access.neighbor(u, i);
        if (s.absent() || s.vertex == u) continue;
        if (dist.emplace(s.vertex, depth + 1).second) next.push_back(s.vertex);
      }
    }
    level = std::move(next);
  }
  if (run) run->assignments.emplace(v, res);
  return res;
}

// ---------------------------------------------------------------------------
// Lexicographically minimal shortest path
//
// Bidirectional level-synchronous BFS from both endpoints, growing the smaller
// side, until the best known connection length L satisfies L <= radiusA +
// radiusB. At that point every shortest a-b path lies inside the union of the
// two balls, so the greedy min-id walk certified by distance labels computed
// inside that union equals the global lexicographic minimum.

namespace {

struct SearchSide {
  std::unordered_map<Vertex, int> dist;
  std::vector<Vertex> frontier;
  int radius = 0;
  bool capped = false;
};

}  // namespace

std::optional<std::vector<Vertex>> lex_min_shortest_path(CountingAccess& access,
                                                         Vertex u, Vertex v, int k,
                                                         CentersRun* run) {
  if (u == v) throw UsageError("lex_min_shortest_path: endpoints must differ");
  if (u < 0 || u >= access.n() || v < 0 || v >= access.n())
    throw UsageError("lex_min_shortest_path: invalid vertex");
  const Vertex a = std::min(u, v);
  const Vertex b = std::max(u, v);
  const std::pair<Vertex, Vertex> key{a, b};
  if (run) {
    auto it = run->paths.find(key);
    if (it != run->paths.end()) return it->second;
  }

  const int d = access.d();
  const int cap = k + 1;  // per-side radius; covers distances up to 2k+2
  SearchSide A, B;
  A.dist.emplace(a, 0);
  A.frontier = {a};
  B.dist.emplace(b, 0);
  B.frontier = {b};

  std::unordered_map<Vertex, std::vector<Vertex>> adj_known;
  auto query_all = [&](Vertex x) {
    if (adj_known.count(x)) return;
    auto& list = adj_known[x];
    for (int i = 1; i <= d; ++i) {
      NeighborSlot s = access.neighbor(x, i);
      if (s.absent() || s.vertex == x) continue;
      list.push_back(s.vertex);
    }
  };

  auto expand = [&](SearchSide& side) {
    for (Vertex x : side.frontier) query_all(x);
    std::vector<Vertex> next;
    for (Vertex x : side.frontier)
      for (Vertex w : adj_known[x])
        if (side.dist.emplace(w, side.radius + 1).second) next.push_back(w);
    side.radius += 1;
    side.frontier = std::move(next);
    if (side.frontier.empty() || side.radius >= cap) side.capped = true;
  };

  // Best connection length over everything queried so far: shared vertices and
  // known edges with one endpoint in each ball.
  auto recompute_meet = [&]() {
    int best = INT_MAX;
    const auto& small = A.dist.size() <= B.dist.size() ? A.dist : B.dist;
    const auto& large = A.dist.size() <= B.dist.size() ? B.dist : A.dist;
    for (const auto& [z, dz] : small) {
      auto it = large.find(z);
      if (it != large.end()) best = std::min(best, dz + it->second);
    }
    for (const auto& [x, list] : adj_known) {
      auto ax = A.dist.find(x);
      auto bx = B.dist.find(x);
      for (Vertex w : list) {
        if (ax != A.dist.end()) {
          auto bw = B.dist.find(w);
          if (bw != B.dist.end()) best = std::min(best, ax->second + 1 + bw->second);
        }
        if (bx != B.dist.end()) {
          auto aw = A.dist.find(w);
          if (aw != A.dist.end()) best = std::min(best, aw->second + 1 + bx->second);
        }
      }
    }
    return best;
  };

  int meet;
  for (;;) {
    meet = recompute_meet();
    if (meet <= A.radius + B.radius) break;
    if (A.capped && B.capped) break;
    SearchSide* side;
    if (A.capped)
      side = &B;
    else if (B.capped)
      side = &A;
    else
      side = A.dist.size() <= B.dist.size() ? &A : &B;
    expand(*side);
  }

  if (meet == INT_MAX || meet > A.radius + B.radius) {
    if (run) run->paths.emplace(key, std::nullopt);
    return std::nullopt;
  }
  const int L = meet;

  // Certified: every shortest a-b path lies in the ball union H. Query the
  // remaining member lists so H's induced edges are complete, then re-derive
  // both distance labelings inside H.
  std::vector<Vertex> members;
  members.reserve(A.dist.size() + B.dist.size());
  for (const auto& [z, dz] : A.dist) members.push_back(z);
  for (const auto& [z, dz] : B.dist)
    if (!A.dist.count(z)) members.push_back(z);
  for (Vertex z : members) query_all(z);
  std::unordered_set<Vertex> member_set(members.begin(), members.end());

  auto bfs_in_union = [&](Vertex src) {
    std::unordered_map<Vertex, int> dist;
    dist.emplace(src, 0);
    std::vector<Vertex> queue{src};
    for (size_t head = 0; head < queue.size(); ++head) {
      Vertex x = queue[head];
      int dx = dist[x];
      for (Vertex w : adj_known[x]) {
        if (!member_set.count(w)) continue;
        if (dist.emplace(w, dx + 1).second) queue.push_back(w);
      }
    }
    return dist;
  };
  auto da = bfs_in_union(a);
  auto db = bfs_in_union(b);
  auto itb = da.find(b);
  if (itb == da.end() || itb->second != L)
    throw ContractError("lex_min_shortest_path: ball union misses the shortest path");

  std::vector<Vertex> path{a};
  Vertex cur = a;
  for (int i = 0; i < L; ++i) {
    Vertex best = kAbsent;
    for (Vertex w : adj_known[cur]) {
      if (!member_set.count(w)) continue;
      auto aw = da.find(w);
      auto bw = db.find(w);
      if (aw == da.end() || bw == db.end()) continue;
      if (aw->second == i + 1 && bw->second == L - i - 1 &&
          (best == kAbsent || w < best))
        best = w;
    }
    if (best == kAbsent)
      throw ContractError("lex_min_shortest_path: greedy step has no successor");
    path.push_back(best);
    cur = best;
  }
  if (path.back() != b) throw ContractError("lex_min_shortest_path: walk missed b");
  if (run) run->paths.emplace(key, path);
  return path;
}

bool centers_edge_query(CountingAccess& access, const CentersConfig& cfg, Vertex x,
                        Vertex y, CentersRun* run) {
  if (x == y) throw UsageError("centers_edge_query: endpoints must differ");
  bool is_edge = false;
  for (int i = 1, d = access.d(); i <= d; ++i) {
    NeighborSlot s = access.neighbor(x, i);
    if (!s.absent() && s.vertex == y) {
      is_edge = true;
      break;
    }
  }
  if (!is_edge)
    throw UsageError("centers_edge_query: (" + std::to_string(x) + "," +
                     std::to_string(y) + ") is not an edge");

  CenterAssignment ax = assign_center(access, cfg, x, run);
  CenterAssignment ay = assign_center(access, cfg, y, run);
  if (!ax.assigned() || !ay.assigned()) return true;

  if (ax.center == ay.center) {
    if (ax.dist == ay.dist) return false;
    const CenterAssignment& child = ax.dist > ay.dist ? ax : ay;
    const CenterAssignment& parent = ax.dist > ay.dist ? ay : ax;
    if (child.dist != parent.dist + 1)
      throw ContractError("centers_edge_query: adjacent vertices with hop gap > 1");
    // Tree edge iff the shallower endpoint is the min-id candidate parent:
    // a neighbor one hop closer to the center and assigned to it.
    Vertex best = kAbsent;
    for (int i = 1, d = access.d(); i <= d; ++i) {
      NeighborSlot s = access.neighbor(child.vertex, i);
      if (s.absent() || s.vertex == child.vertex) continue;
      CenterAssignment aw = assign_center(access, cfg, s.vertex, run);
      if (aw.assigned() && aw.center == child.center && aw.dist == child.dist - 1 &&
          (best == kAbsent || s.vertex < best))
        best = s.vertex;
    }
    return best == parent.vertex;
  }

  // Different centers: the connecting edge for this center pair is the unique
  // assignment switch on the pair's lex-min shortest path; (x,y) is it exactly
  // when both endpoints lie on that path.
  auto path = lex_min_shortest_path(access, ax.center, ay.center, cfg.k, run);
  if (!path) return false;
  bool has_x = false, has_y = false;
  for (Vertex z : *path) {
    has_x = has_x || z == x;
    has_y = has_y || z == y;
  }
  return has_x && has_y;
}

int estimate_k_centers(CountingAccess& access, int n, int d, double epsilon,
                       double delta, uint64_t seed) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw UsageError("estimate_k_centers: epsilon must be in (0,1]");
  if (!(delta > 0.0 && delta < 1.0))
    throw UsageError("estimate_k_centers: delta must be in (0,1)");
  const double thr = centers_threshold(n, epsilon, delta);
  const int s_samp =
      static_cast<int>(std::ceil(8.0 / (epsilon * epsilon) * std::log(2.0 / delta)));
  CounterRng rng(hash_words({seed, rng_tag::kEstimator, 1ull}));

  std::vector<int> ks;
  ks.reserve(static_cast<size_t>(s_samp));
  for (int t = 0; t < s_samp; ++t) {
    Vertex v = static_cast<Vertex>(rng.below(static_cast<uint64_t>(n)));
    std::unordered_set<Vertex> seen{v};
    std::vector<Vertex> level{v};
    int kv = static_cast<double>(seen.size()) >= thr ? 0 : n;
    int depth = 0;
    while (kv == n && !level.empty()) {
      std::vector<Vertex> next;
      for (Vertex x : level) {
        for (int i = 1; i <= d; ++i) {
          NeighborSlot s = access.neighbor(x, i);
          if (s.absent() || s.vertex == x) continue;
          if (seen.insert(s.vertex).second) next.push_back(s.vertex);
        }
      }
      ++depth;
      level = std::move(next);
      if (static_cast<double>(seen.size()) >= thr) kv = depth;
    }
    ks.push_back(kv);
  }
  std::sort(ks.begin(), ks.end());
  int idx = static_cast<int>(std::ceil((1.0 - 3.0 * epsilon / (8.0 * d)) * s_samp));
  idx = std::clamp(idx, 1, s_samp);
  return ks[static_cast<size_t>(idx - 1)];
}

std::vector<Edge> centers_global_reference(const BoundedDegreeGraph& g,
                                           const CentersConfig& cfg) {
  const int n = g.n;
  // Exact BFS distances from every distinct center.
  std::vector<std::pair<Vertex, int>> center_ids(cfg.center_pos.begin(),
                                                 cfg.center_pos.end());
  std::sort(center_ids.begin(), center_ids.end());
  std::unordered_map<Vertex, std::vector<int>> dist_from;
  for (const auto& [c, pos] : center_ids) {
    std::vector<int>& dist = dist_from[c];
    dist.assign(static_cast<size_t>(n), -1);
    dist[static_cast<size_t>(c)] = 0;
    std::vector<Vertex> queue{c};
    for (size_t head = 0; head < queue.size(); ++head) {
      Vertex x = queue[head];
      for (const NeighborSlot& s : g.adj[x])
        if (dist[static_cast<size_t>(s.vertex)] == -1) {
          dist[static_cast<size_t>(s.vertex)] = dist[static_cast<size_t>(x)] + 1;
          queue.push_back(s.vertex);
        }
    }
  }

  // Assignment: nearest center within k, ties by earliest list position.
  std::vector<Vertex> ctr(static_cast<size_t>(n), kAbsent);
  std::vector<int> cdist(static_cast<size_t>(n), -1);
  std::vector<int> cpos(static_cast<size_t>(n), -1);
  for (Vertex v = 0; v < n; ++v) {
    for (const auto& [c, pos] : center_ids) {
      int dv = dist_from[c][static_cast<size_t>(v)];
      if (dv < 0 || dv > cfg.k) continue;
      if (ctr[static_cast<size_t>(v)] == kAbsent || dv < cdist[static_cast<size_t>(v)] ||
          (dv == cdist[static_cast<size_t>(v)] && pos < cpos[static_cast<size_t>(v)])) {
        ctr[static_cast<size_t>(v)] = c;
        cdist[static_cast<size_t>(v)] = dv;
        cpos[static_cast<size_t>(v)] = pos;
      }
    }
  }

  std::set<std::pair<Vertex, Vertex>> out;
  // All edges incident to an unassigned vertex.
  for (const Edge& e : g.edge_list())
    if (ctr[static_cast<size_t>(e.u)] == kAbsent || ctr[static_cast<size_t>(e.v)] == kAbsent)
      out.insert({e.u, e.v});

  // BFS-tree edges: min-id parent among same-region neighbors one hop closer.
  for (Vertex v = 0; v < n; ++v) {
    if (ctr[static_cast<size_t>(v)] == kAbsent || cdist[static_cast<size_t>(v)] == 0)
      continue;
    Vertex c = ctr[static_cast<size_t>(v)];
    Vertex parent = kAbsent;
    for (const NeighborSlot& s : g.adj[v]) {  // ascending ids
      if (dist_from[c][static_cast<size_t>(s.vertex)] ==
              cdist[static_cast<size_t>(v)] - 1 &&
          ctr[static_cast<size_t>(s.vertex)] == c) {
        parent = s.vertex;
        break;
      }
    }
    if (parent == kAbsent)
      throw ContractError("centers_global_reference: assigned vertex has no parent");
    out.insert({std::min(v, parent), std::max(v, parent)});
  }

  // Connector edges for qualifying center pairs.
  for (size_t i = 0; i < center_ids.size(); ++i) {
    for (size_t j = i + 1; j < center_ids.size(); ++j) {
      Vertex c1 = center_ids[i].first;
      Vertex c2 = center_ids[j].first;
      const std::vector<int>& d1 = dist_from[c1];
      const std::vector<int>& d2 = dist_from[c2];
      if (d1[static_cast<size_t>(c2)] < 0) continue;
      int len = d1[static_cast<size_t>(c2)];
      // Global lex-min shortest path from the smaller id c1.
      std::vector<Vertex> path{c1};
      Vertex cur = c1;
      for (int t = 0; t < len; ++t) {
        Vertex step = kAbsent;
        for (const NeighborSlot& s : g.adj[cur]) {  // ascending ids
          if (d1[static_cast<size_t>(s.vertex)] == t + 1 &&
              d2[static_cast<size_t>(s.vertex)] == len - t - 1) {
            step = s.vertex;
            break;
          }
        }
        if (step == kAbsent)
          throw ContractError("centers_global_reference: broken shortest path");
        path.push_back(step);
        cur = step;
      }
      bool qualifies = true;
      for (Vertex z : path)
        if (ctr[static_cast<size_t>(z)] != c1 && ctr[static_cast<size_t>(z)] != c2) {
          qualifies = false;
          break;
        }
      if (!qualifies) continue;
      // The path splits into a c1-assigned prefix and a c2-assigned suffix;
      // the switch edge is the pair's connector.
      size_t last = 0;
      while (last + 1 < path.size() && ctr[static_cast<size_t>(path[last + 1])] == c1)
        ++last;
      for (size_t t = 0; t <= last; ++t)
        if (ctr[static_cast<size_t>(path[t])] != c1)
          throw ContractError("centers_global_reference: non-contiguous region prefix");
      for (size_t t = last + 1; t < path.size(); ++t)
        if (ctr[static_cast<size_t>(path[t])] != c2)
          throw ContractError("centers_global_reference: non-contiguous region suffix");
      Vertex pu = path[last];
      Vertex pv = path[last + 1];
      out.insert({std::min(pu, pv), std::max(pu, pv)});
    }
  }

  std::vector<Edge> edges;
  edges.reserve(out.size());
  for (const auto& [eu, ev] : out) edges.emplace_back(eu, ev);
  return edges;
}

}  // namespace lssg
