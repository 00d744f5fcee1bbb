#include "lssg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <utility>

#include "lssg/boruvka.hpp"
#include "lssg/centers.hpp"
#include "lssg/kruskal.hpp"
#include "lssg/lazy_oracle.hpp"
#include "lssg/partition.hpp"
#include "lssg/rng.hpp"

namespace lssg {

namespace {

enum class Alg { kCenters, kKruskal, kReduction, kBoruvka };

Alg parse_alg(const std::string& id) {
  if (id == "centers") return Alg::kCenters;
  if (id == "kruskal") return Alg::kKruskal;
  if (id == "reduction") return Alg::kReduction;
  if (id == "boruvka") return Alg::kBoruvka;
  throw UsageError("unknown algorithm `" + id +
                   "` (expected centers|kruskal|reduction|boruvka)");
}

void check_params(const VerifyParams& params) {
  if (!(params.epsilon > 0.0 && params.epsilon <= 1.0))
    throw UsageError("epsilon must be in (0,1]");
  if (!(params.delta > 0.0 && params.delta < 1.0))
    throw UsageError("delta must be in (0,1)");
  if (params.permutations < 0)
    throw UsageError("permutation count must be non-negative");
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

struct PassStats {
  std::set<std::pair<Vertex, Vertex>> yes;
  uint64_t max_delta = 0;
  double avg_delta = 0.0;
};

template <typename Query>
PassStats measure_pass(const std::vector<Edge>& order, CountingAccess& access,
                       Query&& query) {
  PassStats st;
  uint64_t total = 0;
  for (const Edge& e : order) {
    const uint64_t before = access.count();
    const bool yes = query(e.u, e.v);
    const uint64_t delta = access.count() - before;
    st.max_delta = std::max(st.max_delta, delta);
    total += delta;
    if (yes) st.yes.insert({e.u, e.v});
  }
  if (!order.empty())
    st.avg_delta = static_cast<double>(total) / static_cast<double>(order.size());
  return st;
}

}  // namespace

std::vector<VerificationReport> run_verification(BoundedDegreeGraph& g,
                                                 const std::string& descriptor,
                                                 const VerifyParams& params,
                                                 const std::vector<uint64_t>& seeds) {
  const Alg alg = parse_alg(params.algorithm);
  check_params(params);
  if (seeds.empty()) throw UsageError("verify: no seeds given");
  if (g.n < 2) throw UsageError("verify: graph needs at least 2 vertices");

  const std::vector<Edge> edges = g.edge_list();

  // Seed-independent setup.
  std::optional<ReferencePartitionOracle> poracle;
  if (alg == Alg::kReduction)
    poracle.emplace(ReferencePartitionOracle::build(g, params.epsilon, params.k));
  double mstw = 0.0;
  if (g.is_weighted)
    mstw = static_cast<double>(exact_mst(g).total_weight) /
           static_cast<double>(g.scale);

  std::vector<VerificationReport> reports;
  reports.reserve(seeds.size());
  for (uint64_t seed : seeds) {
    CentersConfig ccfg;
    KruskalConfig kcfg;
    BoruvkaConfig bcfg;
    switch (alg) {
      case Alg::kCenters: {
        int k = params.k;
        if (k <= 0) {
          CountingAccess est(g);
          k = estimate_k_centers(est, g.n, g.d, params.epsilon, params.delta, seed);
        }
        ccfg = CentersConfig::make(g.n, params.epsilon, params.delta, k, seed);
        break;
      }
      case Alg::kKruskal: {
        int k = params.k;
        if (k <= 0) {
          CountingAccess est(g);
          k = estimate_k_kruskal(est, g.n, g.d, params.epsilon, params.delta, seed);
        }
        kcfg.k = k;
        break;
      }
      case Alg::kBoruvka:
        bcfg = BoruvkaConfig::make(g, params.epsilon, seed, params.c_iter, params.c2);
        break;
      case Alg::kReduction:
        break;
    }

    auto pass = [&](const std::vector<Edge>& order) -> PassStats {
      CountingAccess access(g);
      switch (alg) {
        case Alg::kCenters: {
          CentersRun run;
          return measure_pass(order, access, [&](Vertex a, Vertex b) {
            return centers_edge_query(access, ccfg, a, b, &run);
          });
        }
        case Alg::kKruskal: {
          KruskalOracle oracle(access, kcfg);
          return measure_pass(order, access, [&](Vertex a, Vertex b) {
            return oracle.edge_query(a, b);
          });
        }
        case Alg::kReduction: {
          ReductionRun run;
          return measure_pass(order, access, [&](Vertex a, Vertex b) {
            return reduction_edge_query(access, *poracle, a, b, &run);
          });
        }
        case Alg::kBoruvka: {
          BoruvkaSimulator sim(access, bcfg);
          return measure_pass(order, access, [&](Vertex a, Vertex b) {
            return sim.edge_query(a, b);
          });
        }
      }
      throw ContractError("run_verification: unhandled algorithm");
    };

    const PassStats canonical = pass(edges);
    bool consistent = true;
    for (int p = 1; p <= params.permutations; ++p) {
      std::vector<Edge> order = edges;
      keyed_shuffle(order,
                    hash_words({seed, rng_tag::kHarness, static_cast<uint64_t>(p)}));
      if (pass(order).yes != canonical.yes) consistent = false;
    }

    VerificationReport rep;
    rep.algorithm = params.algorithm;
    rep.graph = descriptor;
    rep.seed = seed;
    std::vector<Edge> yes_edges;
    yes_edges.reserve(canonical.yes.size());
    double total_w = 0.0;
    for (const auto& [a, b] : canonical.yes) {
      yes_edges.emplace_back(a, b);
      if (g.is_weighted)
        total_w += static_cast<double>(g.edge_weight(a, b)) /
                   static_cast<double>(g.scale);
    }
    rep.connected = is_connected(g.n, yes_edges);
    rep.edge_count = static_cast<long long>(yes_edges.size());
    rep.sparsity_bound = (1.0 + params.epsilon) * static_cast<double>(g.n);
    rep.weighted = g.is_weighted;
    rep.total_weight = total_w;
    rep.mst_weight = mstw;
    rep.max_queries_per_edge = canonical.max_delta;
    rep.avg_queries_per_edge = canonical.avg_delta;
    rep.consistent = consistent;
    reports.push_back(std::move(rep));
  }
  return reports;
}

bool verification_pass(const std::vector<VerificationReport>& reports, double epsilon,
                       double delta) {
  if (reports.empty()) return false;
  long long within_bound = 0;
  for (const VerificationReport& r : reports) {
    if (!r.connected || !r.consistent) return false;
    // Each algorithm is held to its own contract: only the weighted-spanning
    // algorithm promises total-weight sparsity; the others promise edge-count
    // sparsity whether or not the graph carries weights.
    const bool weight_rule = r.weighted && r.algorithm == "boruvka";
    const bool ok =
        weight_rule
            ? r.total_weight <= (1.0 + epsilon) * r.mst_weight + 1e-9
            : static_cast<double>(r.edge_count) <= r.sparsity_bound + 1e-9;
    if (ok) ++within_bound;
  }
  const long long need = static_cast<long long>(
      std::ceil((1.0 - delta) * static_cast<double>(reports.size())));
  return within_bound >= need;
}

void write_reports_csv(const std::vector<VerificationReport>& reports,
                       std::ostream& out) {
  out << "algorithm,graph,seed,connected,edgeCount,sparsityBound,totalWeight,"
         "mstWeight,maxQueriesPerEdge,avgQueriesPerEdge,consistent\n";
  for (const VerificationReport& r : reports) {
    out << r.algorithm << ',' << r.graph << ',' << r.seed << ','
        << (r.connected ? "true" : "false") << ',' << r.edge_count << ','
        << fmt(r.sparsity_bound) << ',' << (r.weighted ? fmt(r.total_weight) : "")
        << ',' << (r.weighted ? fmt(r.mst_weight) : "") << ','
        << r.max_queries_per_edge << ',' << fmt(r.avg_queries_per_edge) << ','
        << (r.consistent ? "true" : "false") << '\n';
  }
}

// ---------------------------------------------------------------------------
// Scaling study

ScalingResult scaling_study(const std::vector<GenParams>& sizes,
                            const VerifyParams& params,
                            const std::vector<uint64_t>& seeds, int sample_edges) {
  if (sizes.size() < 3)
    throw UsageError("scaling_study: need at least 3 sizes for a slope");
  if (sample_edges < 1) throw UsageError("scaling_study: sample budget must be >= 1");
  if (seeds.empty()) throw UsageError("scaling_study: no seeds given");
  const Alg alg = parse_alg(params.algorithm);
  check_params(params);

  ScalingResult result;
  for (const GenParams& gp : sizes) {
    ScalingRow row;
    row.graph = gen_descriptor(gp);
    double total_q = 0.0;
    for (uint64_t seed : seeds) {
      BoundedDegreeGraph g = gen_graph(gp, seed);
      row.n = g.n;

      std::vector<Edge> sample = g.edge_list();
      keyed_shuffle(sample, hash_words({seed, rng_tag::kHarness,
                                        static_cast<uint64_t>(g.n), 0x5Cull}));
      if (static_cast<int>(sample.size()) > sample_edges)
        sample.resize(static_cast<size_t>(sample_edges));

      CentersConfig ccfg;
      KruskalConfig kcfg;
      BoruvkaConfig bcfg;
      std::optional<ReferencePartitionOracle> poracle;
      switch (alg) {
        case Alg::kCenters: {
          int k = params.k;
          if (k <= 0) {
            CountingAccess est(g);
            k = estimate_k_centers(est, g.n, g.d, params.epsilon, params.delta, seed);
          }
          ccfg = CentersConfig::make(g.n, params.epsilon, params.delta, k, seed);
          break;
        }
        case Alg::kKruskal: {
          int k = params.k;
          if (k <= 0) {
            CountingAccess est(g);
            k = estimate_k_kruskal(est, g.n, g.d, params.epsilon, params.delta, seed);
          }
          kcfg.k = k;
          break;
        }
        case Alg::kBoruvka:
          bcfg = BoruvkaConfig::make(g, params.epsilon, seed, params.c_iter, params.c2);
          break;
        case Alg::kReduction:
          poracle.emplace(
              ReferencePartitionOracle::build(g, params.epsilon, params.k));
          break;
      }

      for (const Edge& e : sample) {
        CountingAccess access(g);
        switch (alg) {
          case Alg::kCenters: {
            CentersRun run;
            centers_edge_query(access, ccfg, e.u, e.v, &run);
            break;
          }
          case Alg::kKruskal: {
            KruskalOracle oracle(access, kcfg);
            oracle.edge_query(e.u, e.v);
            break;
          }
          case Alg::kReduction: {
            ReductionRun run;
            reduction_edge_query(access, *poracle, e.u, e.v, &run);
            break;
          }
          case Alg::kBoruvka: {
            BoruvkaSimulator sim(access, bcfg);
            sim.edge_query(e.u, e.v);
            break;
          }
        }
        const uint64_t q = access.count();
        ++row.episodes;
        total_q += static_cast<double>(q);
        row.max_queries = std::max(row.max_queries, q);
      }
    }
    if (row.episodes > 0)
      row.avg_queries = total_q / static_cast<double>(row.episodes);
    result.rows.push_back(std::move(row));
  }

  // Least squares of log(avg) on log(n).
  const size_t m = result.rows.size();
  std::vector<double> xs(m), ys(m);
  for (size_t i = 0; i < m; ++i) {
    if (result.rows[i].avg_queries <= 0.0)
      throw ContractError("scaling_study: zero-cost row");
    xs[i] = std::log(static_cast<double>(result.rows[i].n));
    ys[i] = std::log(result.rows[i].avg_queries);
  }
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < m; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw UsageError("scaling_study: sizes must differ");
  result.slope = sxy / sxx;
  const double intercept = my - result.slope * mx;
  double ss = 0.0;
  for (size_t i = 0; i < m; ++i) {
    const double err = ys[i] - (intercept + result.slope * xs[i]);
    ss += err * err;
  }
  result.residual = std::sqrt(ss / static_cast<double>(m));
  return result;
}

void write_scaling_csv(const ScalingResult& result, std::ostream& out) {
  out << "graph,n,episodes,avgQueries,maxQueries,slope,residual\n";
  for (const ScalingRow& r : result.rows)
    out << r.graph << ',' << r.n << ',' << r.episodes << ',' << fmt(r.avg_queries)
        << ',' << r.max_queries << ',' << fmt(result.slope) << ','
        << fmt(result.residual) << '\n';
}

// ---------------------------------------------------------------------------
// Distinguishing experiment

namespace {

// Default adversary: breadth-first exploration from v0 with a budget of r
// oracle queries; slots already revealed by earlier answers are reused for
// free. Returns true for a "+" guess: v1 was reached and stays connected to
// v0 after removing every explored (v0,v1) edge.
bool bfs_strategy_guess_plus(LazyRegularOracle& oracle, int budget) {
  const Vertex v0 = oracle.v0();
  const Vertex v1 = oracle.v1();
  const int d = oracle.degree_bound();

  std::map<std::pair<Vertex, int>, LazyRegularOracle::Answer> known;
  std::set<std::pair<Vertex, Vertex>> edges;
  std::set<Vertex> discovered{v0};
  std::deque<Vertex> queue{v0};
  std::set<Vertex> enqueued{v0};
  bool out_of_budget = false;

  while (!queue.empty() && !out_of_budget) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (int i = 1; i <= d; ++i) {
      LazyRegularOracle::Answer a;
      auto it = known.find({v, i});
      if (it != known.end()) {
        a = it->second;
      } else {
        if (budget == 0) {
          out_of_budget = true;
          break;
        }
        --budget;
        a = oracle.oracle_query(v, i);
        known[{v, i}] = a;
        if (!a.absent()) known[{a.vertex, a.index}] = {v, i};
      }
      if (a.absent()) continue;
      discovered.insert(a.vertex);
      edges.insert({std::min(v, a.vertex), std::max(v, a.vertex)});
      if (enqueued.insert(a.vertex).second) queue.push_back(a.vertex);
    }
  }

  if (!discovered.count(v1)) return false;
  edges.erase({v0, v1});
  std::map<Vertex, int> idx;
  for (Vertex w : discovered) idx.emplace(w, static_cast<int>(idx.size()));
  DisjointSets dsu(static_cast<int>(idx.size()));
  for (const auto& [a, b] : edges) dsu.unite(idx.at(a), idx.at(b));
  return dsu.find(idx.at(v0)) == dsu.find(idx.at(v1));
}

}  // namespace

DistinguishResult distinguishing_experiment(int n, int d, int r, int trials,
                                            uint64_t seed) {
  if (n < 4) throw UsageError("distinguish: n must be >= 4");
  if (d < 1 || d >= n) throw UsageError("distinguish: need 1 <= d < n");
  if (r < 0) throw UsageError("distinguish: negative query budget");
  if (trials < 100) throw UsageError("distinguish: need at least 100 trials");

  DistinguishResult res;
  res.n = n;
  res.d = d;
  res.r = r;
  res.trials = trials;
  res.collision_bound =
      8.0 * static_cast<double>(r) * static_cast<double>(r) / static_cast<double>(n);

  for (int variant = 0; variant < 2; ++variant) {
    const auto kind = variant == 0 ? LazyRegularOracle::Variant::kPlus
                                   : LazyRegularOracle::Variant::kMinus;
    long long plus_guesses = 0;
    long long collisions = 0;
    for (int t = 0; t < trials; ++t) {
      LazyRegularOracle oracle(
          kind, n, d,
          hash_words({seed, rng_tag::kDistinguish, static_cast<uint64_t>(variant),
                      static_cast<uint64_t>(t)}));
      if (bfs_strategy_guess_plus(oracle, r)) ++plus_guesses;
      if (oracle.transcript_collision()) ++collisions;
    }
    const double p = static_cast<double>(plus_guesses) / static_cast<double>(trials);
    const double c = static_cast<double>(collisions) / static_cast<double>(trials);
    if (variant == 0) {
      res.p_plus = p;
      res.collision_plus = c;
    } else {
      res.p_minus = p;
      res.collision_minus = c;
    }
  }
  res.advantage = std::abs(res.p_plus - res.p_minus);
  const double var_plus = res.p_plus * (1.0 - res.p_plus);
  const double var_minus = res.p_minus * (1.0 - res.p_minus);
  res.ci_width =
      1.96 * std::sqrt((var_plus + var_minus) / static_cast<double>(trials));
  return res;
}

void write_distinguish_csv(const DistinguishResult& result, std::ostream& out) {
  out << "n,d,r,trials,pPlus,pMinus,advantage,ciWidth,collisionPlus,"
         "collisionMinus,collisionBound\n";
  out << result.n << ',' << result.d << ',' << result.r << ',' << result.trials
      << ',' << fmt(result.p_plus) << ',' << fmt(result.p_minus) << ','
      << fmt(result.advantage) << ',' << fmt(result.ci_width) << ','
      << fmt(result.collision_plus) << ',' << fmt(result.collision_minus) << ','
      << fmt(result.collision_bound) << '\n';
}

}  // namespace lssg
