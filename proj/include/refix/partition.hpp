#pragma once

#include <cstdint>
#include <vector>

#include "refix/graph.hpp"

namespace refix {

/// Ordered partition stored as a permutation of the vertices; every cell is a contiguous
/// range identified by its first position.
struct OrderedPartition {
  std::vector<Vertex> elems;      // position -> vertex
  std::vector<int> pos;           // vertex -> position
  std::vector<int> start_of;      // vertex -> start position of its cell
  std::vector<int> size_at;       // start position -> cell size (only meaningful at starts)
  int num_cells = 0;

  static OrderedPartition from_coloring(const Coloring& coloring);

  int size() const { return static_cast<int>(elems.size()); }
  bool discrete() const { return num_cells == size(); }
  int cell_size_of(Vertex v) const { return size_at[start_of[v]]; }
  bool singleton(Vertex v) const { return cell_size_of(v) == 1; }

  /// Start of the smallest non-singleton cell (lowest position on ties), or -1.
  int target_cell() const;
  Coloring to_coloring() const;
};

/// Worklist equitable refinement with a trace hash. Produces the same set partition as
/// iterating refine_step to a fixpoint, but not the same cell order.
class Refiner {
 public:
  explicit Refiner(const ColoredGraph& graph);

  const ColoredGraph& graph() const { return *graph_; }

  OrderedPartition initial() const;

  /// Refines from scratch (every cell is a splitter). Returns the trace hash.
  std::uint64_t equitable(OrderedPartition& p);

  /// Splits v off the front of its cell and refines. Returns the trace hash of this step.
  std::uint64_t individualize(OrderedPartition& p, Vertex v);

 private:
  std::uint64_t refine(OrderedPartition& p, std::uint64_t hash);
  void enqueue(int start);

  const ColoredGraph* graph_;
  std::vector<int> count_;
  std::vector<char> queued_;
  std::vector<int> queue_;
  std::size_t head_ = 0;
  std::vector<int> touched_vertices_;
  std::vector<int> touched_cells_;
  std::vector<char> cell_touched_;
};

}  // namespace refix
