#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lssg/generators.hpp"
#include "lssg/graph.hpp"
#include "lssg/harness.hpp"

namespace {

uint64_t parse_u64(const std::string& token, const std::string& what) {
  try {
    size_t pos = 0;
    const uint64_t value = std::stoull(token, &pos);
    if (pos != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw lssg::UsageError("bad " + what + ": `" + token + "`");
  }
}

uint64_t env_seed() {
  if (const char* s = std::getenv("LSSG_SEED"))
    return parse_u64(s, "LSSG_SEED value");
  return 0;
}

// Accepts "7", "1,4,9", or an inclusive range "0..49".
std::vector<uint64_t> parse_seeds(const std::string& text) {
  std::vector<uint64_t> seeds;
  const size_t dots = text.find("..");
  if (dots != std::string::npos) {
    const uint64_t lo = parse_u64(text.substr(0, dots), "seed range start");
    const uint64_t hi = parse_u64(text.substr(dots + 2), "seed range end");
    if (lo > hi) throw lssg::UsageError("seed range start exceeds end: " + text);
    if (hi - lo >= 1000000) throw lssg::UsageError("seed range too large: " + text);
    for (uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ','))
    if (!token.empty()) seeds.push_back(parse_u64(token, "seed"));
  if (seeds.empty()) throw lssg::UsageError("no seeds in `" + text + "`");
  return seeds;
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ','))
    if (!token.empty())
      sizes.push_back(static_cast<int>(parse_u64(token, "size")));
  if (sizes.empty()) throw lssg::UsageError("no sizes in `" + text + "`");
  return sizes;
}

lssg::GenParams size_params(const std::string& family, int n, int d,
                            long long max_weight) {
  lssg::GenParams p;
  p.family = family;
  p.max_weight = max_weight;
  if (family == "grid" || family == "weighted-grid") {
    const int side = static_cast<int>(std::llround(std::sqrt(double(n))));
    if (side * side != n)
      throw lssg::UsageError("grid size must be a perfect square, got " +
                             std::to_string(n));
    p.rows = side;
    p.cols = side;
  } else {
    p.n = n;
    p.d = d;
  }
  return p;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw lssg::UsageError("cannot open output file: " + path);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lssg: local construction of sparse spanning subgraphs"};
  app.require_subcommand(1);

  // --- gen ------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Generate a test graph file");
  std::string gen_family, gen_out;
  int gen_n = 0, gen_d = 0, gen_rows = 0, gen_cols = 0;
  long long gen_maxw = 8;
  uint64_t gen_seed = env_seed();
  gen->add_option("--family", gen_family,
                  "regular | grid | path | cycle | weighted-grid")
      ->required();
  gen->add_option("--n", gen_n, "vertex count (regular/path/cycle)");
  gen->add_option("--d", gen_d, "degree (regular)");
  gen->add_option("--rows", gen_rows, "grid rows");
  gen->add_option("--cols", gen_cols, "grid cols");
  gen->add_option("--max-weight", gen_maxw, "max edge weight (weighted-grid)");
  gen->add_option("--seed", gen_seed, "generator seed (default $LSSG_SEED or 0)");
  gen->add_option("--out", gen_out, "output graph file")->required();

  // --- verify ----------------------------------------------------------
  auto* verify = app.add_subcommand(
      "verify", "Query an oracle on every edge and check the subgraph contract");
  std::string v_graph, v_alg, v_seeds, v_out;
  lssg::VerifyParams vp;
  verify->add_option("--graph", v_graph, "input graph file")->required();
  verify->add_option("--alg", v_alg, "centers | kruskal | reduction | boruvka")
      ->required();
  verify->add_option("--eps", vp.epsilon, "sparsity epsilon (default 0.5)");
  verify->add_option("--delta", vp.delta, "failure budget delta (default 0.1)");
  verify->add_option("--k", vp.k,
                     "locality radius / part bound; <=0 derives it per seed");
  verify->add_option("--c-iter", vp.c_iter, "boruvka iteration constant");
  verify->add_option("--c2", vp.c2, "boruvka cap constant");
  verify->add_option("--permutations", vp.permutations,
                     "extra query orders for the consistency check");
  verify->add_option("--seeds", v_seeds, "seed, list, or range e.g. 0..49");
  verify->add_option("--out", v_out, "report CSV path")->required();

  // --- scale -----------------------------------------------------------
  auto* scale = app.add_subcommand(
      "scale", "Per-edge query cost vs n with a fitted log-log slope");
  std::string s_alg, s_family, s_sizes, s_seeds, s_out;
  int s_d = 0, s_samples = 50;
  long long s_maxw = 8;
  lssg::VerifyParams sp;
  scale->add_option("--alg", s_alg, "centers | kruskal | reduction | boruvka")
      ->required();
  scale->add_option("--family", s_family,
                    "regular | grid | path | cycle | weighted-grid")
      ->required();
  scale->add_option("--sizes", s_sizes, "comma list of n, e.g. 2000,8000,32000")
      ->required();
  scale->add_option("--d", s_d, "degree (regular family)");
  scale->add_option("--max-weight", s_maxw, "max edge weight (weighted-grid)");
  scale->add_option("--eps", sp.epsilon, "sparsity epsilon");
  scale->add_option("--delta", sp.delta, "failure budget delta");
  scale->add_option("--k", sp.k, "fixed locality radius; <=0 derives it");
  scale->add_option("--c-iter", sp.c_iter, "boruvka iteration constant");
  scale->add_option("--c2", sp.c2, "boruvka cap constant");
  scale->add_option("--samples", s_samples, "sampled edges per (size, seed)");
  scale->add_option("--seeds", s_seeds, "seed, list, or range");
  scale->add_option("--out", s_out, "CSV path")->required();

  // --- distinguish -------------------------------------------------------
  auto* dist = app.add_subcommand(
      "distinguish",
      "Budgeted adversary vs the two lazy regular-graph oracles");
  int di_n = 0, di_d = 0, di_r = 0, di_trials = 200;
  uint64_t di_seed = env_seed();
  std::string di_out;
  dist->add_option("--n", di_n, "vertex count")->required();
  dist->add_option("--d", di_d, "degree")->required();
  dist->add_option("--r", di_r, "query budget")->required();
  dist->add_option("--trials", di_trials, "trials per oracle (>= 100)");
  dist->add_option("--seed", di_seed, "base seed (default $LSSG_SEED or 0)");
  dist->add_option("--out", di_out, "CSV path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      lssg::GenParams p;
      p.family = gen_family;
      p.n = gen_n;
      p.d = gen_d;
      p.rows = gen_rows;
      p.cols = gen_cols;
      p.max_weight = gen_maxw;
      lssg::BoundedDegreeGraph g = lssg::gen_graph(p, gen_seed);
      lssg::save_graph_file(g, gen_out);
      std::cout << lssg::gen_descriptor(p) << ": n=" << g.n
                << " edges=" << g.edge_count() << " -> " << gen_out << "\n";
      return 0;
    }

    if (verify->parsed()) {
      vp.algorithm = v_alg;
      lssg::BoundedDegreeGraph g = lssg::load_graph_file(v_graph);
      const std::string descriptor =
          std::filesystem::path(v_graph).filename().string();
      const std::vector<uint64_t> seeds =
          v_seeds.empty() ? std::vector<uint64_t>{env_seed()}
                          : parse_seeds(v_seeds);
      const auto reports = lssg::run_verification(g, descriptor, vp, seeds);
      auto out = open_out(v_out);
      lssg::write_reports_csv(reports, out);
      const bool pass = lssg::verification_pass(reports, vp.epsilon, vp.delta);
      std::cout << "verify alg=" << v_alg << " graph=" << descriptor
                << " runs=" << reports.size() << " pass="
                << (pass ? "true" : "false") << " -> " << v_out << "\n";
      return pass ? 0 : 1;
    }

    if (scale->parsed()) {
      sp.algorithm = s_alg;
      std::vector<lssg::GenParams> sizes;
      for (int n : parse_sizes(s_sizes))
        sizes.push_back(size_params(s_family, n, s_d, s_maxw));
      const std::vector<uint64_t> seeds =
          s_seeds.empty() ? std::vector<uint64_t>{env_seed()}
                          : parse_seeds(s_seeds);
      const lssg::ScalingResult result =
          lssg::scaling_study(sizes, sp, seeds, s_samples);
      auto out = open_out(s_out);
      lssg::write_scaling_csv(result, out);
      std::cout << "scale alg=" << s_alg << " family=" << s_family
                << " slope=" << result.slope << " residual=" << result.residual
                << " -> " << s_out << "\n";
      return 0;
    }

    if (dist->parsed()) {
      const lssg::DistinguishResult result =
          lssg::distinguishing_experiment(di_n, di_d, di_r, di_trials, di_seed);
      if (di_out.empty()) {
        lssg::write_distinguish_csv(result, std::cout);
      } else {
        auto out = open_out(di_out);
        lssg::write_distinguish_csv(result, out);
        std::cout << "distinguish n=" << di_n << " r=" << di_r
                  << " advantage=" << result.advantage << " ci="
                  << result.ci_width << " -> " << di_out << "\n";
      }
      return 0;
    }
  } catch (const lssg::ContractError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
