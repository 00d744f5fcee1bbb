#include "lssg/lazy_oracle.hpp"

#include <unordered_set>

namespace lssg {

LazyRegularOracle::LazyRegularOracle(Variant variant, int n, int d, uint64_t seed)
    : variant_(variant),
      n_(n),
      d_(d),
      rng_(hash_words({seed, rng_tag::kLazyOracle,
                       variant == Variant::kPlus ? 0ull : 1ull,
                       static_cast<uint64_t>(n), static_cast<uint64_t>(d)})) {
  if (n < 2) throw UsageError("lazy oracle: need n >= 2");
  if (d < 1) throw UsageError("lazy oracle: need d >= 1");
  total_real_ = n * d;
  match_.assign(static_cast<size_t>(total_real_) + 2, -1);

  if (variant_ == Variant::kPlus) {
    rows0_ = n;
    cells0_ = total_real_;
    sentinel_[0] = (total_real_ % 2) == 1;  // keep the matchable cell count even
    // Plant the edge (v0, v1): match cells (v0, t0) and (v1, t1).
    int t0 = 1 + static_cast<int>(rng_.below(static_cast<uint64_t>(d)));
    int t1 = 1 + static_cast<int>(rng_.below(static_cast<uint64_t>(d)));
    int c0 = v0() * d_ + (t0 - 1);
    int c1 = v1() * d_ + (t1 - 1);
    match_[static_cast<size_t>(c0)] = c1;
    match_[static_cast<size_t>(c1)] = c0;
  } else {
    rows0_ = n / 2;
    cells0_ = rows0_ * d;
    // Each matrix pairs its own cells internally except for the one cell used
    // by the planted cross edge, so its pool must be odd: add a sentinel
    // exactly when the real cell count is even.
    sentinel_[0] = (cells0_ % 2) == 0;
    sentinel_[1] = ((total_real_ - cells0_) % 2) == 0;
    vertex_of_row_.assign(static_cast<size_t>(n), kAbsent);
    row_of_vertex_.assign(static_cast<size_t>(n), -1);
    // Allocate v0 into matrix 0 and v1 into matrix 1, then plant (v0, v1) as
    // the unique cross-matrix pair. Draw order: row0, row1, t0, t1.
    int rows1 = n - rows0_;
    int i0 = static_cast<int>(rng_.below(static_cast<uint64_t>(rows0_)));
    int i1 = rows0_ + static_cast<int>(rng_.below(static_cast<uint64_t>(rows1)));
    allocate_row_to(i0, v0());
    allocate_row_to(i1, v1());
    int t0 = 1 + static_cast<int>(rng_.below(static_cast<uint64_t>(d)));
    int t1 = 1 + static_cast<int>(rng_.below(static_cast<uint64_t>(d)));
    int c0 = i0 * d_ + (t0 - 1);
    int c1 = i1 * d_ + (t1 - 1);
    match_[static_cast<size_t>(c0)] = c1;
    match_[static_cast<size_t>(c1)] = c0;
  }
}

int LazyRegularOracle::cell_of(Vertex v, int i) const {
  int row = variant_ == Variant::kPlus ? v : row_of_vertex_[static_cast<size_t>(v)];
  return row * d_ + (i - 1);
}

int LazyRegularOracle::matrix_of_cell(int cell) const {
  if (variant_ == Variant::kPlus) return 0;
  if (cell >= total_real_) return cell - total_real_;  // sentinel ids
  return cell < cells0_ ? 0 : 1;
}

LazyRegularOracle::Answer LazyRegularOracle::answer_for(int cell) const {
  if (is_sentinel(cell)) return {};
  int row = cell / d_;
  int col = cell % d_;
  Vertex v = variant_ == Variant::kPlus ? row : vertex_of_row_[static_cast<size_t>(row)];
  if (v == kAbsent)
    throw ContractError("lazy oracle: matched cell in an unallocated row");
  return {v, col + 1};
}

void LazyRegularOracle::allocate_row_to(int row, Vertex v) {
  vertex_of_row_[static_cast<size_t>(row)] = v;
  row_of_vertex_[static_cast<size_t>(v)] = row;
}

void LazyRegularOracle::ensure_row(Vertex w) {
  if (row_of_vertex_[static_cast<size_t>(w)] != -1) return;
  // Uniform over free rows of both matrices; a free row exists because rows
  // and vertices are in bijection and w is unallocated.
  for (;;) {
    int r = static_cast<int>(rng_.below(static_cast<uint64_t>(n_)));
    if (vertex_of_row_[static_cast<size_t>(r)] == kAbsent) {
      allocate_row_to(r, w);
      return;
    }
  }
}

void LazyRegularOracle::ensure_mate_row_owner(int mate) {
  if (is_sentinel(mate)) return;
  int row = mate / d_;
  if (vertex_of_row_[static_cast<size_t>(row)] != kAbsent) return;
  for (;;) {
    Vertex u = static_cast<Vertex>(rng_.below(static_cast<uint64_t>(n_)));
    if (row_of_vertex_[static_cast<size_t>(u)] == -1) {
      allocate_row_to(row, u);
      return;
    }
  }
}

int LazyRegularOracle::draw_empty_mate(int cell) {
  // Pool = empty cells of cell's matrix (plus variant: the whole matrix),
  // including that matrix's sentinel, excluding the queried cell itself. The
  // pool always has even many empties, so a mate exists and rejection halts.
  int first, count;
  int sentinel_id;
  if (variant_ == Variant::kPlus) {
    first = 0;
    count = total_real_;
    sentinel_id = sentinel_[0] ? total_real_ : -1;
  } else if (matrix_of_cell(cell) == 0) {
    first = 0;
    count = cells0_;
    sentinel_id = sentinel_[0] ? total_real_ : -1;
  } else {
    first = cells0_;
    count = total_real_ - cells0_;
    sentinel_id = sentinel_[1] ? total_real_ + 1 : -1;
  }
  int pool = count + (sentinel_id >= 0 ? 1 : 0);
  for (;;) {
    int k = static_cast<int>(rng_.below(static_cast<uint64_t>(pool)));
    int m = k < count ? first + k : sentinel_id;
    if (m == cell || match_[static_cast<size_t>(m)] != -1) continue;
    return m;
  }
}

LazyRegularOracle::Answer LazyRegularOracle::oracle_query(Vertex w, int i) {
  if (w < 0 || w >= n_)
    throw UsageError("oracle_query: vertex id out of range");
  if (i < 1 || i > d_) throw UsageError("oracle_query: index outside 1..d");
  if (variant_ == Variant::kMinus) ensure_row(w);
  int c = cell_of(w, i);
  Answer ans;
  if (match_[static_cast<size_t>(c)] != -1) {
    ans = answer_for(match_[static_cast<size_t>(c)]);
  } else {
    int mate = draw_empty_mate(c);
    if (variant_ == Variant::kMinus) ensure_mate_row_owner(mate);
    match_[static_cast<size_t>(c)] = mate;
    match_[static_cast<size_t>(mate)] = c;
    ans = answer_for(mate);
  }
  transcript_.push_back({w, i, ans});
  return ans;
}

bool LazyRegularOracle::transcript_collision() const {
  std::unordered_set<Vertex> seen;
  for (const Entry& e : transcript_) {
    if (!e.answer.absent()) {
      if (e.answer.vertex == e.query_vertex || seen.count(e.answer.vertex)) return true;
      seen.insert(e.answer.vertex);
    }
    seen.insert(e.query_vertex);
  }
  return false;
}

int LazyRegularOracle::matrix_of_vertex(Vertex v) const {
  if (variant_ == Variant::kPlus) return 0;
  int row = row_of_vertex_[static_cast<size_t>(v)];
  if (row == -1) return -1;
  return row < rows0_ ? 0 : 1;
}

int LazyRegularOracle::matched_pairs() const {
  int twice = 0;
  for (int c = 0; c < total_real_; ++c)
    if (match_[static_cast<size_t>(c)] != -1 &&
        !is_sentinel(match_[static_cast<size_t>(c)]))
      ++twice;
  return twice / 2;
}

}  // namespace lssg
