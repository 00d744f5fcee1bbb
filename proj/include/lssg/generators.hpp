#pragma once

#include <cstdint>
#include <string>

#include "lssg/graph.hpp"

// Deterministic-by-seed test-graph construction. Same (family, params, seed)
// always yields a byte-identical graph file.

namespace lssg {

// Simple d-regular graph on n vertices. Random pairing of vertex slots with
// self-loops/parallel edges rejected pair-by-pair; a stuck partial pairing
// restarts the whole graph, up to 1000 restarts (then GenerationError).
// Requires n*d even and d < n.
BoundedDegreeGraph gen_regular(int n, int d, uint64_t seed);

// rows x cols grid, row-major ids, degree bound 4. Requires rows, cols >= 2.
BoundedDegreeGraph gen_grid(int rows, int cols);

BoundedDegreeGraph gen_path(int n);   // n >= 2, degree bound 2
BoundedDegreeGraph gen_cycle(int n);  // n >= 3, degree bound 2

// Grid with integer edge weights drawn uniformly from 1..max_weight.
BoundedDegreeGraph gen_weighted_grid(int rows, int cols, long long max_weight,
                                     uint64_t seed);

struct GenParams {
  std::string family;  // regular | grid | path | cycle | weighted-grid
  int n = 0;
  int d = 0;
  int rows = 0;
  int cols = 0;
  long long max_weight = 8;
};

BoundedDegreeGraph gen_graph(const GenParams& p, uint64_t seed);

// Short label used in reports, e.g. "grid-20x20" or "regular-n2000-d8".
std::string gen_descriptor(const GenParams& p);

}  // namespace lssg
