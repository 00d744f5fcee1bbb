#pragma once

#include <cstdint>
#include <vector>

#include "lssg/graph.hpp"
#include "lssg/rng.hpp"

namespace lssg {

// Adversarial lazy d-regular multigraph oracles.
//
// Both variants maintain a partial perfect matching over "cells" (vertex, slot)
// and fill it in lazily: a query on a matched cell returns the recorded mate, a
// query on an empty cell matches it to a uniformly random empty cell first. An
// extra sentinel cell keeps the cell count even where needed; a cell matched to
// the sentinel yields an absent slot.
//
// Plus variant: one n x d matrix; the edge (v0, v1) is planted at construction.
// Minus variant: two matrices of floor(n/2) and ceil(n/2) rows; vertices are
// lazily allocated to rows so that (v0, v1) is the only edge between the two
// halves; v0 always lands in matrix 0 and v1 in matrix 1.
//
// Fully realized, both produce d-regular multigraphs containing edge (v0, v1);
// they differ only in that the minus variant makes it a bridge between two
// ~n/2 halves. Stateful: one instance per experiment, no sharing.
class LazyRegularOracle final : public IncidenceSource {
 public:
  enum class Variant { kPlus, kMinus };

  struct Answer {
    Vertex vertex = kAbsent;
    int index = 0;  // 1-based slot index on the answering vertex; 0 when absent

    bool absent() const { return vertex == kAbsent; }
  };

  struct Entry {
    Vertex query_vertex;
    int query_index;
    Answer answer;
  };

  LazyRegularOracle(Variant variant, int n, int d, uint64_t seed);

  // Lazily realizes the slot on demand; appends (query, answer) to the transcript.
  Answer oracle_query(Vertex w, int i);

  // True iff some transcript answer names a vertex that already appeared in an
  // earlier query or answer (including the same entry's query vertex).
  bool transcript_collision() const;

  const std::vector<Entry>& transcript() const { return transcript_; }

  Vertex v0() const { return 0; }
  Vertex v1() const { return 1; }
  Variant variant() const { return variant_; }

  // Minus variant: matrix (0/1) a vertex is allocated to, or -1 if untouched.
  // Plus variant: always 0.
  int matrix_of_vertex(Vertex v) const;

  // Number of matched real-cell pairs so far (testing hook).
  int matched_pairs() const;

  // IncidenceSource: slot queries map to oracle queries (answer index dropped).
  int vertex_count() const override { return n_; }
  int degree_bound() const override { return d_; }
  bool weighted() const override { return false; }
  NeighborSlot neighbor_slot(Vertex v, int i) override {
    Answer a = oracle_query(v, i);
    return {a.vertex, 1};
  }

 private:
  // Cell layout: real cells get ids [0, total_real_); the minus variant splits
  // them into matrix 0 = [0, cells0_) and matrix 1 = [cells0_, total_real_).
  // Sentinel cells (when present) get ids total_real_ and total_real_ + 1.
  int cell_of(Vertex v, int i) const;     // minus: requires v allocated
  int matrix_of_cell(int cell) const;
  bool is_sentinel(int cell) const { return cell >= total_real_; }
  Answer answer_for(int cell) const;
  int draw_empty_mate(int cell);          // uniform empty cell in cell's pool
  void allocate_row_to(int row, Vertex v);
  void ensure_row(Vertex w);              // minus: lazily allocate w's row
  void ensure_mate_row_owner(int mate);   // minus: allocate a fresh row's vertex

  Variant variant_;
  int n_;
  int d_;
  int rows0_;        // minus: rows of matrix 0; plus: n
  int cells0_;       // rows0_ * d
  int total_real_;   // all real cells
  bool sentinel_[2] = {false, false};  // plus uses [0] only
  std::vector<int> match_;             // cell -> mate cell, -1 if empty
  std::vector<Vertex> vertex_of_row_;  // minus; -1 if free
  std::vector<int> row_of_vertex_;     // minus; -1 if unallocated
  std::vector<Entry> transcript_;
  CounterRng rng_;
};

}  // namespace lssg
