#include "lssg/graph.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "lssg/rng.hpp"

namespace lssg {

bool edge_rank_less(const Edge& a, const Edge& b) {
  if (a.u != b.u) return a.u < b.u;
  return a.v < b.v;
}

bool edge_weight_rank_less(const Edge& a, const Edge& b) {
  if (a.w != b.w) return a.w < b.w;
  return edge_rank_less(a, b);
}

// ---------------------------------------------------------------------------
// BoundedDegreeGraph

BoundedDegreeGraph BoundedDegreeGraph::build(int n, int d, bool weighted,
                                             long long scale,
                                             const std::vector<Edge>& edges) {
  if (n < 0) throw UsageError("graph: negative vertex count");
  if (d < 0) throw UsageError("graph: negative degree bound");
  if (scale < 1) throw UsageError("graph: weight scale must be >= 1");
  BoundedDegreeGraph g;
  g.n = n;
  g.d = d;
  g.is_weighted = weighted;
  g.scale = weighted ? scale : 1;
  g.adj.assign(static_cast<size_t>(n), {});

  std::set<std::pair<Vertex, Vertex>> seen;
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw UsageError("graph: edge endpoint out of range");
    if (e.u == e.v) throw UsageError("graph: self-loop at vertex " + std::to_string(e.u));
    if (!seen.insert({e.u, e.v}).second)
      throw UsageError("graph: duplicate edge (" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + ")");
    long long w = weighted ? e.w : 1;
    if (weighted && w < g.scale)
      throw UsageError("graph: edge weight below 1");
    g.adj[e.u].push_back({e.v, w});
    g.adj[e.v].push_back({e.u, w});
  }
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) > d)
      throw UsageError("graph: degree of vertex " + std::to_string(v) +
                       " exceeds bound " + std::to_string(d));
    std::sort(g.adj[v].begin(), g.adj[v].end(),
              [](const NeighborSlot& a, const NeighborSlot& b) {
                return a.vertex < b.vertex;
              });
  }
  return g;
}

NeighborSlot BoundedDegreeGraph::neighbor_slot(Vertex v, int i) {
  const auto& list = adj[v];
  if (i < 1 || static_cast<size_t>(i) > list.size()) return {};
  return list[static_cast<size_t>(i) - 1];
}

bool BoundedDegreeGraph::has_edge(Vertex u, Vertex v) const {
  const auto& list = adj[u];
  auto it = std::lower_bound(list.begin(), list.end(), v,
                             [](const NeighborSlot& s, Vertex x) { return s.vertex < x; });
  return it != list.end() && it->vertex == v;
}

long long BoundedDegreeGraph::edge_weight(Vertex u, Vertex v) const {
  const auto& list = adj[u];
  auto it = std::lower_bound(list.begin(), list.end(), v,
                             [](const NeighborSlot& s, Vertex x) { return s.vertex < x; });
  if (it == list.end() || it->vertex != v)
    throw UsageError("edge_weight: no edge (" + std::to_string(u) + "," +
                     std::to_string(v) + ")");
  return it->weight;
}

long long BoundedDegreeGraph::max_weight() const {
  long long w = scale;
  for (Vertex v = 0; v < n; ++v)
    for (const NeighborSlot& s : adj[v]) w = std::max(w, s.weight);
  return w;
}

long long BoundedDegreeGraph::edge_count() const {
  long long twice = 0;
  for (Vertex v = 0; v < n; ++v) twice += degree(v);
  return twice / 2;
}

std::vector<Edge> BoundedDegreeGraph::edge_list() const {
  std::vector<Edge> out;
  for (Vertex u = 0; u < n; ++u)
    for (const NeighborSlot& s : adj[u])
      if (s.vertex > u) out.emplace_back(u, s.vertex, s.weight);
  return out;  // adjacency is sorted, so this is sorted by (u, v)
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

[[noreturn]] void line_error(int line_no, const std::string& msg) {
  throw UsageError("line " + std::to_string(line_no) + ": " + msg);
}

long long parse_int(const std::string& tok, int line_no, const char* what) {
  if (tok.empty()) line_error(line_no, std::string("empty ") + what);
  for (char c : tok)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      line_error(line_no, std::string("invalid ") + what + " '" + tok + "'");
  if (tok.size() > 12) line_error(line_no, std::string(what) + " too large");
  return std::stoll(tok);
}

// Decimal weight "123" or "123.45" -> (numerator, decimal digit count).
std::pair<long long, int> parse_weight(const std::string& tok, int line_no) {
  auto dot = tok.find('.');
  std::string ip = dot == std::string::npos ? tok : tok.substr(0, dot);
  std::string fp = dot == std::string::npos ? "" : tok.substr(dot + 1);
  if (ip.empty() || (dot != std::string::npos && fp.empty()))
    line_error(line_no, "invalid weight '" + tok + "'");
  if (ip.size() > 12) line_error(line_no, "weight too large");
  if (fp.size() > 9) line_error(line_no, "weight has more than 9 decimal places");
  for (char c : ip + fp)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      line_error(line_no, "invalid weight '" + tok + "'");
  long long num = std::stoll(ip);
  long long pow10 = 1;
  for (char c : fp) {
    num = num * 10 + (c - '0');
    pow10 *= 10;
  }
  if (num < pow10) line_error(line_no, "edge weight below 1");
  return {num, static_cast<int>(fp.size())};
}

}  // namespace

BoundedDegreeGraph load_graph(std::istream& in) {
  std::string line;
  int line_no = 0;
  bool have_header = false;
  long long n = 0, d = 0;
  bool weighted = false;

  struct RawEdge {
    Vertex u, v;
    long long num;
    int dec;
    int line;
  };
  std::vector<RawEdge> raw;
  std::set<std::pair<Vertex, Vertex>> seen;
  std::vector<int> deg;
  int max_dec = 0;

  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto toks = tokenize(line);
    if (toks.empty()) continue;

    if (!have_header) {
      if (toks.size() != 2 && toks.size() != 3)
        line_error(line_no, "header must be `n d [weighted]`");
      n = parse_int(toks[0], line_no, "vertex count");
      d = parse_int(toks[1], line_no, "degree bound");
      if (n > 50'000'000) line_error(line_no, "vertex count too large");
      if (toks.size() == 3) {
        if (toks[2] != "weighted")
          line_error(line_no, "unknown header flag '" + toks[2] + "'");
        weighted = true;
      }
      deg.assign(static_cast<size_t>(n), 0);
      have_header = true;
      continue;
    }

    size_t want = weighted ? 3 : 2;
    if (toks.size() != want)
      line_error(line_no, weighted ? "expected `u v w`" : "expected `u v`");
    long long u = parse_int(toks[0], line_no, "vertex id");
    long long v = parse_int(toks[1], line_no, "vertex id");
    if (u >= n || v >= n) line_error(line_no, "vertex id out of range");
    if (u == v) line_error(line_no, "self-loop");
    Vertex a = static_cast<Vertex>(std::min(u, v));
    Vertex b = static_cast<Vertex>(std::max(u, v));
    if (!seen.insert({a, b}).second) line_error(line_no, "duplicate edge");
    if (++deg[static_cast<size_t>(a)] > d)
      line_error(line_no, "degree of vertex " + std::to_string(a) + " exceeds bound");
    if (++deg[static_cast<size_t>(b)] > d)
      line_error(line_no, "degree of vertex " + std::to_string(b) + " exceeds bound");
    long long num = 1;
    int dec = 0;
    if (weighted) {
      auto [wn, wd] = parse_weight(toks[2], line_no);
      num = wn;
      dec = wd;
      max_dec = std::max(max_dec, dec);
    }
    raw.push_back({a, b, num, dec, line_no});
  }
  if (!have_header) throw UsageError("empty graph file: missing header");

  long long scale = 1;
  for (int i = 0; i < max_dec; ++i) scale *= 10;
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const RawEdge& r : raw) {
    long long factor = 1;
    for (int i = r.dec; i < max_dec; ++i) factor *= 10;
    edges.emplace_back(r.u, r.v, r.num * factor);
  }
  return BoundedDegreeGraph::build(static_cast<int>(n), static_cast<int>(d), weighted,
                                   scale, edges);
}

BoundedDegreeGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open graph file: " + path);
  return load_graph(in);
}

void save_graph(const BoundedDegreeGraph& g, std::ostream& out) {
  out << g.n << ' ' << g.d;
  if (g.is_weighted) out << " weighted";
  out << '\n';
  int dec = 0;
  for (long long s = g.scale; s > 1; s /= 10) ++dec;
  for (const Edge& e : g.edge_list()) {
    out << e.u << ' ' << e.v;
    if (g.is_weighted) {
      out << ' ' << e.w / g.scale;
      if (dec > 0) {
        std::string frac = std::to_string(e.w % g.scale);
        out << '.' << std::string(static_cast<size_t>(dec) - frac.size(), '0') << frac;
      }
    }
    out << '\n';
  }
}

void save_graph_file(const BoundedDegreeGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open output file: " + path);
  save_graph(g, out);
  if (!out.flush()) throw UsageError("failed writing graph file: " + path);
}

// ---------------------------------------------------------------------------
// BFS balls

Ball bfs_ball(CountingAccess& access, Vertex v, int k) {
  if (v < 0 || v >= access.n()) throw UsageError("bfs_ball: invalid vertex");
  if (k < 0) throw UsageError("bfs_ball: negative radius");
  Ball ball;
  ball.center = v;
  ball.radius = k;
  ball.dist[v] = 0;
  ball.members.push_back(v);

  struct RawPair {
    Vertex a, b;
    long long w;
  };
  std::vector<RawPair> raw;
  std::vector<Vertex> frontier{v};
  const int d = access.d();

  for (int depth = 0; depth <= k && !frontier.empty(); ++depth) {
    std::vector<Vertex> next;
    for (Vertex u : frontier) {
      for (int i = 1; i <= d; ++i) {
        NeighborSlot s = access.neighbor(u, i);
        // Lists from plain graphs are packed, but lazy-oracle sentinels can
        // leave absent slots in the middle, so keep scanning.
        if (s.absent()) continue;
        if (s.vertex == u) continue;  // multigraph self-loop
        raw.push_back({std::min(u, s.vertex), std::max(u, s.vertex), s.weight});
        if (depth < k && !ball.dist.count(s.vertex)) {
          ball.dist[s.vertex] = depth + 1;
          ball.members.push_back(s.vertex);
          next.push_back(s.vertex);
        }
      }
    }
    frontier = std::move(next);
  }

  std::sort(raw.begin(), raw.end(), [](const RawPair& x, const RawPair& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  for (size_t i = 0; i < raw.size(); ++i) {
    if (i > 0 && raw[i].a == raw[i - 1].a && raw[i].b == raw[i - 1].b) continue;
    if (!ball.dist.count(raw[i].a) || !ball.dist.count(raw[i].b)) continue;
    ball.edges.emplace_back(raw[i].a, raw[i].b, raw[i].w);
  }
  return ball;
}

// ---------------------------------------------------------------------------
// Connectivity

bool is_connected(int n, const std::vector<Edge>& edges) {
  if (n <= 1) return true;
  DisjointSets dsu(n);
  int components = n;
  for (const Edge& e : edges)
    if (dsu.unite(e.u, e.v)) --components;
  return components == 1;
}

// ---------------------------------------------------------------------------
// Vertex expansion

Fraction vertex_expansion(const BoundedDegreeGraph& g, int s) {
  if (s < 1 || 2 * s > g.n) throw UsageError("vertex_expansion: need 1 <= s <= n/2");
  if (g.n > 24)
    throw CapabilityError(
        "vertex_expansion: exhaustive subset sweep limited to n <= 24; "
        "use vertex_expansion_sampled for larger graphs");

  std::vector<uint32_t> adj_mask(static_cast<size_t>(g.n), 0);
  for (Vertex v = 0; v < g.n; ++v)
    for (const NeighborSlot& nb : g.adj[v])
      adj_mask[v] |= 1u << nb.vertex;

  Fraction best(1'000'000, 1);
  const uint32_t all = g.n == 32 ? ~0u : (1u << g.n) - 1;
  for (uint32_t mask = 1; mask <= all; ++mask) {
    int sz = std::popcount(mask);
    if (sz > s) continue;
    uint32_t nb = 0;
    for (uint32_t m = mask; m != 0; m &= m - 1)
      nb |= adj_mask[static_cast<size_t>(std::countr_zero(m))];
    nb &= ~mask;
    Fraction ratio(std::popcount(nb), sz);
    if (ratio < best) best = ratio;
  }
  return best;
}

Fraction vertex_expansion_sampled(const BoundedDegreeGraph& g, int s, int samples,
                                  uint64_t seed) {
  if (s < 1 || 2 * s > g.n) throw UsageError("vertex_expansion: need 1 <= s <= n/2");
  std::vector<char> in_set(static_cast<size_t>(g.n), 0);
  std::vector<char> marked(static_cast<size_t>(g.n), 0);

  auto ratio_of = [&](const std::vector<Vertex>& set) {
    for (Vertex v : set) in_set[v] = 1;
    int nb = 0;
    for (Vertex v : set)
      for (const NeighborSlot& x : g.adj[v])
        if (!in_set[x.vertex] && !marked[x.vertex]) {
          marked[x.vertex] = 1;
          ++nb;
        }
    for (Vertex v : set) {
      in_set[v] = 0;
      for (const NeighborSlot& x : g.adj[v]) marked[x.vertex] = 0;
    }
    return Fraction(nb, static_cast<long long>(set.size()));
  };

  Fraction best(1'000'000, 1);
  for (Vertex v = 0; v < g.n; ++v) {
    Fraction r = ratio_of({v});
    if (r < best) best = r;
  }

  CounterRng rng(hash_words({seed, rng_tag::kExpansion}));
  for (int it = 0; it < samples; ++it) {
    int target = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(s)));
    Vertex start = static_cast<Vertex>(rng.below(static_cast<uint64_t>(g.n)));
    // Connected subsets found by a BFS prefix tend to minimize the ratio.
    std::vector<Vertex> set{start};
    std::vector<char> vis(static_cast<size_t>(g.n), 0);
    vis[start] = 1;
    for (size_t head = 0; head < set.size() && set.size() < static_cast<size_t>(target);
         ++head) {
      for (const NeighborSlot& x : g.adj[set[head]]) {
        if (vis[x.vertex]) continue;
        vis[x.vertex] = 1;
        set.push_back(x.vertex);
        if (set.size() == static_cast<size_t>(target)) break;
      }
    }
    Fraction r = ratio_of(set);
    if (r < best) best = r;
  }
  return best;
}

}  // namespace lssg
