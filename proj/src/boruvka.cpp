#include "lssg/boruvka.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "lssg/rng.hpp"

namespace lssg {

namespace {

long long saturate_cap(double x) {
  double c = std::ceil(x);
  if (!(c >= 1.0)) return 1;
  if (c >= 4.0e18) return static_cast<long long>(4.0e18);
  return static_cast<long long>(c);
}

bool member_of(const std::vector<Vertex>& sorted_members, Vertex v) {
  return std::binary_search(sorted_members.begin(), sorted_members.end(), v);
}

}  // namespace

BoruvkaConfig BoruvkaConfig::make(double w_max, int d, double epsilon, uint64_t seed,
                                  double c_iter, double c2) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw UsageError("boruvka: epsilon must be in (0,1]");
  if (w_max < 1.0) throw UsageError("boruvka: max weight must be >= 1");
  if (d < 1) throw UsageError("boruvka: degree bound must be >= 1");
  if (!(c_iter > 0.0) || !(c2 > 0.0))
    throw UsageError("boruvka: constants must be positive");
  BoruvkaConfig cfg;
  cfg.epsilon = epsilon;
  cfg.seed = seed;
  cfg.w_max = w_max;
  cfg.d = d;
  cfg.c_iter = c_iter;
  cfg.c2 = c2;
  cfg.ell = std::max(1, static_cast<int>(std::ceil(c_iter * std::log(w_max / epsilon))));
  cfg.gamma = epsilon / (6.0 * w_max * cfg.ell);
  cfg.k_cap = saturate_cap(c2 * d * d / (cfg.gamma * cfg.gamma));
  cfg.final_cap = saturate_cap(3.0 * c2 * w_max * w_max * d * d / (epsilon * epsilon));
  return cfg;
}

BoruvkaConfig BoruvkaConfig::make(const BoundedDegreeGraph& g, double epsilon,
                                  uint64_t seed, double c_iter, double c2) {
  return make(g.max_weight_value(), g.d, epsilon, seed, c_iter, c2);
}

double boruvka_query_bound(int d, long long k, int i) {
  double q = 0.0;
  const double dd = static_cast<double>(d);
  const double kk = static_cast<double>(k);
  for (int level = 1; level <= i; ++level) q = dd * dd * kk * kk + (dd * kk + 1.0) * q;
  return q;
}

bool HashedCoins::heads(int iteration, Vertex max_id) {
  return (hash_words({seed_, rng_tag::kCoins, static_cast<uint64_t>(iteration),
                      static_cast<uint64_t>(max_id)}) &
          1ULL) != 0;
}

// ---------------------------------------------------------------------------
// Contraction

ContractedGraph contract(const BoundedDegreeGraph& g, const Partition& p) {
  if (static_cast<int>(p.part_of.size()) != g.n)
    throw UsageError("contract: partition does not match the graph");
  for (const auto& part : p.parts) {
    if (part.empty()) continue;
    std::unordered_set<Vertex> in_part(part.begin(), part.end());
    std::unordered_set<Vertex> visited{part.front()};
    std::vector<Vertex> queue{part.front()};
    for (size_t head = 0; head < queue.size(); ++head)
      for (const NeighborSlot& s : g.adj[queue[head]])
        if (in_part.count(s.vertex) && visited.insert(s.vertex).second)
          queue.push_back(s.vertex);
    if (visited.size() != part.size())
      throw UsageError("contract: a part does not induce a connected subgraph");
  }

  ContractedGraph out;
  for (const Edge& e : g.edge_list()) {
    int pa = p.part_of[static_cast<size_t>(e.u)];
    int pb = p.part_of[static_cast<size_t>(e.v)];
    if (pa == pb) continue;
    auto key = std::make_pair(std::min(pa, pb), std::max(pa, pb));
    auto [it, fresh] = out.realizing.emplace(key, e);
    if (!fresh && edge_weight_rank_less(e, it->second)) it->second = e;
  }
  std::vector<Edge> qedges;
  std::vector<int> qdeg(static_cast<size_t>(p.size()), 0);
  for (const auto& [key, real] : out.realizing) {
    qedges.emplace_back(key.first, key.second, real.w);
    ++qdeg[static_cast<size_t>(key.first)];
    ++qdeg[static_cast<size_t>(key.second)];
  }
  int dq = 0;
  for (int deg : qdeg) dq = std::max(dq, deg);
  out.graph = BoundedDegreeGraph::build(p.size(), dq, g.is_weighted, g.scale, qedges);
  return out;
}

// ---------------------------------------------------------------------------
// Component breaking

std::vector<std::vector<Vertex>> break_component(const std::vector<Vertex>& members,
                                                 const std::vector<Edge>& edges,
                                                 long long cap) {
  if (cap < 1) throw UsageError("break_component: cap must be >= 1");
  std::vector<Vertex> ms(members);
  std::sort(ms.begin(), ms.end());
  if (static_cast<long long>(ms.size()) <= cap) return {std::move(ms)};

  std::unordered_set<Vertex> in(ms.begin(), ms.end());
  std::unordered_map<Vertex, std::vector<Vertex>> adj;
  for (const Edge& e : edges) {
    if (e.u == e.v || !in.count(e.u) || !in.count(e.v)) continue;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }

  // BFS forest: roots in ascending id order, min-id parents, level-by-level
  // order with ids ascending inside each level.
  std::vector<Vertex> order;
  order.reserve(ms.size());
  std::unordered_map<Vertex, Vertex> parent;
  std::unordered_set<Vertex> visited;
  for (Vertex root : ms) {
    if (visited.count(root)) continue;
    visited.insert(root);
    parent[root] = kAbsent;
    std::vector<Vertex> level{root};
    while (!level.empty()) {
      order.insert(order.end(), level.begin(), level.end());
      std::map<Vertex, Vertex> best;  // child -> min-id parent, keys ascending
      for (Vertex x : level)
        for (Vertex nb : adj[x]) {
          if (visited.count(nb)) continue;
          auto [it, fresh] = best.emplace(nb, x);
          if (!fresh && x < it->second) it->second = x;
        }
      std::vector<Vertex> next;
      next.reserve(best.size());
      for (const auto& [child, par] : best) {
        visited.insert(child);
        parent[child] = par;
        next.push_back(child);
      }
      level = std::move(next);
    }
  }

  // Greedy packing along the tree order: stay with the parent's piece while it
  // is still the open one and has room, otherwise start a new piece.
  std::vector<std::vector<Vertex>> pieces;
  std::vector<Vertex> acc;
  std::unordered_set<Vertex> in_acc;
  auto flush = [&] {
    if (acc.empty()) return;
    std::sort(acc.begin(), acc.end());
    pieces.push_back(acc);
    acc.clear();
    in_acc.clear();
  };
  for (Vertex v : order) {
    Vertex par = parent.at(v);
    if (!acc.empty() && par != kAbsent && in_acc.count(par) &&
        static_cast<long long>(acc.size()) < cap) {
      acc.push_back(v);
      in_acc.insert(v);
    } else {
      flush();
      acc.push_back(v);
      in_acc.insert(v);
    }
  }
  flush();
  return pieces;
}

// ---------------------------------------------------------------------------
// Global run

namespace {

struct CompG {
  std::vector<Vertex> members;  // sorted
  std::vector<Edge> forest;
};

CompG induced_piece(std::vector<Vertex> piece, const std::vector<Edge>& forest) {
  CompG out;
  out.members = std::move(piece);
  for (const Edge& e : forest)
    if (member_of(out.members, e.u) && member_of(out.members, e.v))
      out.forest.push_back(e);
  return out;
}

}  // namespace

BoruvkaGlobalResult boruvka_global(const BoundedDegreeGraph& g,
                                   const BoruvkaConfig& cfg, CoinProvider* coins) {
  if (g.n < 1) throw UsageError("boruvka_global: empty graph");
  if (!is_connected(g.n, g.edge_list()))
    throw UsageError("boruvka_global: graph must be connected");
  HashedCoins hashed(cfg.seed);
  CoinProvider* cp = coins != nullptr ? coins : &hashed;

  std::vector<CompG> comps(static_cast<size_t>(g.n));
  std::vector<int> comp_of(static_cast<size_t>(g.n));
  for (Vertex v = 0; v < g.n; ++v) {
    comps[static_cast<size_t>(v)].members = {v};
    comp_of[static_cast<size_t>(v)] = v;
  }
  std::set<std::pair<Vertex, Vertex>> contracted;

  auto reindex = [&](std::vector<CompG> next) {
    comps = std::move(next);
    for (int c = 0; c < static_cast<int>(comps.size()); ++c)
      for (Vertex m : comps[static_cast<size_t>(c)].members)
        comp_of[static_cast<size_t>(m)] = c;
  };

  for (int iter = 1; iter <= cfg.ell; ++iter) {
    const int m = static_cast<int>(comps.size());
    std::vector<char> heads(static_cast<size_t>(m));
    for (int c = 0; c < m; ++c)
      heads[static_cast<size_t>(c)] =
          cp->heads(iter, comps[static_cast<size_t>(c)].members.back());

    // Minimum-(weight, rank) outgoing original edge per component.
    std::vector<Edge> sel(static_cast<size_t>(m));
    std::vector<char> has_sel(static_cast<size_t>(m), 0);
    for (int c = 0; c < m; ++c)
      for (Vertex mb : comps[static_cast<size_t>(c)].members)
        for (const NeighborSlot& s : g.adj[mb]) {
          if (comp_of[static_cast<size_t>(s.vertex)] == c) continue;
          Edge e(mb, s.vertex, s.weight);
          if (!has_sel[static_cast<size_t>(c)] ||
              edge_weight_rank_less(e, sel[static_cast<size_t>(c)])) {
            sel[static_cast<size_t>(c)] = e;
            has_sel[static_cast<size_t>(c)] = 1;
          }
        }

    // Heads components pour into the Tails component their lightest edge hits.
    std::vector<std::vector<int>> into(static_cast<size_t>(m));
    for (int c = 0; c < m; ++c) {
      if (!heads[static_cast<size_t>(c)] || !has_sel[static_cast<size_t>(c)]) continue;
      const Edge& e = sel[static_cast<size_t>(c)];
      Vertex out = comp_of[static_cast<size_t>(e.u)] == c ? e.v : e.u;
      int t = comp_of[static_cast<size_t>(out)];
      if (heads[static_cast<size_t>(t)]) continue;
      into[static_cast<size_t>(t)].push_back(c);
    }

    std::vector<CompG> next;
    std::vector<char> consumed(static_cast<size_t>(m), 0);
    for (int t = 0; t < m; ++t) {
      if (into[static_cast<size_t>(t)].empty()) continue;
      CompG merged = comps[static_cast<size_t>(t)];
      consumed[static_cast<size_t>(t)] = 1;
      for (int c : into[static_cast<size_t>(t)]) {
        consumed[static_cast<size_t>(c)] = 1;
        const CompG& piece = comps[static_cast<size_t>(c)];
        merged.members.insert(merged.members.end(), piece.members.begin(),
                              piece.members.end());
        merged.forest.insert(merged.forest.end(), piece.forest.begin(),
                             piece.forest.end());
        merged.forest.push_back(sel[static_cast<size_t>(c)]);
        contracted.insert({sel[static_cast<size_t>(c)].u, sel[static_cast<size_t>(c)].v});
      }
      std::sort(merged.members.begin(), merged.members.end());
      if (merged.forest.size() + 1 != merged.members.size())
        throw ContractError("boruvka_global: contracted forest is not a tree");
      if (static_cast<long long>(merged.members.size()) > cfg.k_cap)
        for (auto& piece : break_component(merged.members, merged.forest, cfg.k_cap))
          next.push_back(induced_piece(std::move(piece), merged.forest));
      else
        next.push_back(std::move(merged));
    }
    for (int c = 0; c < m; ++c)
      if (!consumed[static_cast<size_t>(c)]) next.push_back(comps[static_cast<size_t>(c)]);
    reindex(std::move(next));
  }

  BoruvkaGlobalResult result;
  {
    std::vector<std::vector<Vertex>> parts;
    parts.reserve(comps.size());
    for (const CompG& c : comps) parts.push_back(c.members);
    result.level_partition = Partition::from_parts(g.n, std::move(parts));
  }
  {
    std::vector<CompG> finals;
    for (CompG& c : comps) {
      if (static_cast<long long>(c.members.size()) > cfg.final_cap)
        for (auto& piece : break_component(c.members, c.forest, cfg.final_cap))
          finals.push_back(induced_piece(std::move(piece), c.forest));
      else
        finals.push_back(std::move(c));
    }
    std::vector<std::vector<Vertex>> parts;
    parts.reserve(finals.size());
    for (CompG& c : finals) parts.push_back(std::move(c.members));
    result.partition = Partition::from_parts(g.n, std::move(parts));
  }
  result.contracted.reserve(contracted.size());
  for (const auto& [a, b] : contracted)
    result.contracted.emplace_back(a, b, g.edge_weight(a, b));
  return result;
}

// ---------------------------------------------------------------------------
// Local simulation

BoruvkaSimulator::BoruvkaSimulator(CountingAccess& access, const BoruvkaConfig& cfg,
                                   CoinProvider* coins)
    : access_(&access),
      cfg_(cfg),
      default_coins_(cfg.seed),
      coins_(coins != nullptr ? coins : &default_coins_),
      levels_(static_cast<size_t>(cfg.ell) + 1) {}

const std::vector<NeighborSlot>& BoruvkaSimulator::slots(Vertex v) {
  auto it = adj_.find(v);
  if (it != adj_.end()) return it->second;
  std::vector<NeighborSlot> list;
  for (int i = 1; i <= access_->d(); ++i) {
    NeighborSlot s = access_->neighbor(v, i);
    if (!s.absent() && s.vertex != v) list.push_back(s);
  }
  return adj_.emplace(v, std::move(list)).first->second;
}

Edge BoruvkaSimulator::min_outgoing(const CompPtr& comp, int i, bool* found) {
  auto key = std::make_pair(i, comp->members.front());
  auto it = outgoing_.find(key);
  if (it == outgoing_.end()) {
    bool has = false;
    Edge best;
    for (Vertex m : comp->members)
      for (const NeighborSlot& s : slots(m)) {
        if (member_of(comp->members, s.vertex)) continue;
        Edge e(m, s.vertex, s.weight);
        if (!has || edge_weight_rank_less(e, best)) {
          best = e;
          has = true;
        }
      }
    it = outgoing_.emplace(key, std::make_pair(has, best)).first;
  }
  *found = it->second.first;
  return it->second.second;
}

void BoruvkaSimulator::register_pieces(std::unordered_map<Vertex, CompPtr>& memo,
                                       const Comp& whole, long long cap) {
  if (static_cast<long long>(whole.members.size()) <= cap) {
    CompPtr ptr = std::make_shared<const Comp>(whole);
    for (Vertex m : ptr->members) memo.emplace(m, ptr);
    return;
  }
  for (auto& piece : break_component(whole.members, whole.forest, cap)) {
    Comp pc;
    pc.members = std::move(piece);  // sorted by break_component
    pc.max_id = pc.members.back();
    for (const Edge& e : whole.forest)
      if (member_of(pc.members, e.u) && member_of(pc.members, e.v))
        pc.forest.push_back(e);
    CompPtr ptr = std::make_shared<const Comp>(std::move(pc));
    for (Vertex m : ptr->members) memo.emplace(m, ptr);
  }
}

BoruvkaSimulator::CompPtr BoruvkaSimulator::tails_cluster(const CompPtr& tails, int i) {
  Comp merged;
  merged.members = tails->members;
  merged.forest = tails->forest;

  std::set<Vertex> gathered;  // neighbor comps already examined, by min member
  for (Vertex m : tails->members)
    for (const NeighborSlot& s : slots(m)) {
      if (member_of(tails->members, s.vertex)) continue;
      CompPtr nb = resolve(s.vertex, i - 1);
      if (!gathered.insert(nb->members.front()).second) continue;
      if (!coins_->heads(i, nb->max_id)) continue;
      bool found = false;
      Edge e = min_outgoing(nb, i - 1, &found);
      if (!found) continue;
      Vertex out = member_of(nb->members, e.u) ? e.v : e.u;
      if (!member_of(tails->members, out)) continue;
      merged.members.insert(merged.members.end(), nb->members.begin(),
                            nb->members.end());
      merged.forest.insert(merged.forest.end(), nb->forest.begin(), nb->forest.end());
      merged.forest.push_back(e);
      contracted_.insert({e.u, e.v});
    }

  std::sort(merged.members.begin(), merged.members.end());
  merged.max_id = merged.members.back();
  if (merged.forest.size() + 1 != merged.members.size())
    throw ContractError("boruvka simulation: contracted forest is not a tree");
  register_pieces(levels_[static_cast<size_t>(i)], merged, cfg_.k_cap);
  return levels_[static_cast<size_t>(i)].at(tails->members.front());
}

BoruvkaSimulator::CompPtr BoruvkaSimulator::resolve(Vertex v, int i) {
  if (i < 0 || i > cfg_.ell)
    throw UsageError("boruvka_local_component: level outside 0..ell");
  if (v < 0 || v >= access_->n())
    throw UsageError("boruvka_local_component: vertex id out of range");
  auto& memo = levels_[static_cast<size_t>(i)];
  if (auto it = memo.find(v); it != memo.end()) return it->second;
  if (i == 0) {
    auto comp = std::make_shared<Comp>();
    comp->members = {v};
    comp->max_id = v;
    memo.emplace(v, comp);
    return memo.at(v);
  }

  CompPtr prev = resolve(v, i - 1);
  if (!coins_->heads(i, prev->max_id)) {
    tails_cluster(prev, i);
  } else {
    bool carried = true;
    bool found = false;
    Edge e = min_outgoing(prev, i - 1, &found);
    if (found) {
      Vertex out = member_of(prev->members, e.u) ? e.v : e.u;
      CompPtr target = resolve(out, i - 1);
      if (!coins_->heads(i, target->max_id)) {
        tails_cluster(target, i);  // the cluster contains prev (its edge lands there)
        carried = false;
      }
    }
    if (carried)
      for (Vertex m : prev->members) memo.emplace(m, prev);
  }
  return memo.at(v);
}

BoruvkaSimulator::CompPtr BoruvkaSimulator::final_resolve(Vertex v) {
  if (auto it = final_.find(v); it != final_.end()) return it->second;
  CompPtr top = resolve(v, cfg_.ell);
  register_pieces(final_, *top, cfg_.final_cap);
  return final_.at(v);
}

const std::vector<Vertex>& BoruvkaSimulator::component(Vertex v, int i) {
  return resolve(v, i)->members;
}

const std::vector<Vertex>& BoruvkaSimulator::final_component(Vertex v) {
  return final_resolve(v)->members;
}

bool BoruvkaSimulator::edge_query(Vertex u, Vertex v) {
  if (u == v) throw UsageError("mwsg_edge_query: endpoints must differ");
  bool present = false;
  for (const NeighborSlot& s : slots(u))
    if (s.vertex == v) present = true;
  if (!present)
    throw UsageError("mwsg_edge_query: (" + std::to_string(u) + "," +
                     std::to_string(v) + ") is not an edge");

  CompPtr pu = final_resolve(u);
  CompPtr pv = final_resolve(v);
  if (pu == pv)
    return contracted_.count({std::min(u, v), std::max(u, v)}) != 0;

  const CompPtr& small = pu->members.size() <= pv->members.size() ? pu : pv;
  const CompPtr& other = pu->members.size() <= pv->members.size() ? pv : pu;
  bool has = false;
  Edge best;
  for (Vertex m : small->members)
    for (const NeighborSlot& s : slots(m)) {
      if (!member_of(other->members, s.vertex)) continue;
      Edge e(m, s.vertex, s.weight);
      if (!has || edge_weight_rank_less(e, best)) {
        best = e;
        has = true;
      }
    }
  if (!has)
    throw ContractError("mwsg_edge_query: adjacent parts with no cut edge found");
  return best.same_endpoints(Edge(u, v));
}

std::vector<Vertex> boruvka_local_component(CountingAccess& access,
                                            const BoruvkaConfig& cfg, Vertex v, int i,
                                            CoinProvider* coins) {
  BoruvkaSimulator sim(access, cfg, coins);
  return sim.component(v, i);
}

bool mwsg_edge_query(CountingAccess& access, const BoruvkaConfig& cfg, Vertex u,
                     Vertex v, CoinProvider* coins) {
  BoruvkaSimulator sim(access, cfg, coins);
  return sim.edge_query(u, v);
}

// ---------------------------------------------------------------------------
// Exact MST

MstResult exact_mst(const BoundedDegreeGraph& g) {
  std::vector<Edge> edges = g.edge_list();
  std::sort(edges.begin(), edges.end(), edge_weight_rank_less);
  DisjointSets dsu(g.n);
  MstResult result;
  for (const Edge& e : edges)
    if (dsu.unite(e.u, e.v)) {
      result.edges.push_back(e);
      result.total_weight += e.w;
    }
  if (static_cast<int>(result.edges.size()) != g.n - 1)
    throw UsageError("exact_mst: graph is not connected");
  return result;
}

}  // namespace lssg
