#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace refix {

using Vertex = int;
using Color = int;
using Edge = std::pair<Vertex, Vertex>;

/// Raised when raw graph data violates one of the ColoredGraph invariants.
class GraphError : public std::invalid_argument {
 public:
  enum class Kind { bad_size, self_loop, dangling_endpoint, duplicate_edge, color_count, negative_color, color_gap };

  GraphError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Unvalidated graph description, as read from a file or assembled by a builder.
struct GraphData {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<Color> colors;  // empty means uniform color 0
};

/// Throws GraphError describing the first violated invariant.
void validate(const GraphData& data);

/// Remaps arbitrary non-negative color ids onto 0..k-1, preserving their numeric order.
std::vector<Color> compact_colors(std::span<const Color> colors);

/// Vertex-colored simple undirected graph on vertices 0..n-1 with dense color ids.
class ColoredGraph {
 public:
  ColoredGraph() = default;
  explicit ColoredGraph(int n);
  ColoredGraph(int n, std::vector<Edge> edges, std::vector<Color> colors = {});
  explicit ColoredGraph(GraphData data);

  int size() const noexcept { return n_; }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }
  int num_colors() const noexcept { return num_colors_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
  bool adjacent(Vertex u, Vertex v) const;

  Color color(Vertex v) const { return colors_[static_cast<std::size_t>(v)]; }
  const std::vector<Color>& colors() const noexcept { return colors_; }

  /// Edges with u < v, sorted lexicographically.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Same edges, new (validated) coloring.
  ColoredGraph with_colors(std::vector<Color> colors) const;

  GraphData data() const { return {n_, edges_, colors_}; }

  bool operator==(const ColoredGraph& other) const {
    return n_ == other.n_ && edges_ == other.edges_ && colors_ == other.colors_;
  }

 private:
  int n_ = 0;
  int num_colors_ = 0;
  std::vector<Edge> edges_;
  std::vector<Color> colors_;
  std::vector<std::vector<Vertex>> adj_;
};

/// Ordered partition of 0..n-1. Each cell is kept sorted ascending.
class Coloring {
 public:
  Coloring() = default;

  /// Throws std::invalid_argument unless the cells partition 0..n-1.
  static Coloring from_cells(int n, std::vector<std::vector<Vertex>> cells);
  /// Cells ordered by color id; ids must be dense.
  static Coloring from_colors(std::span<const Color> colors);

  int size() const noexcept { return static_cast<int>(cell_of_.size()); }
  int num_cells() const noexcept { return static_cast<int>(cells_.size()); }
  const std::vector<std::vector<Vertex>>& cells() const noexcept { return cells_; }
  const std::vector<Vertex>& cell(int index) const { return cells_[static_cast<std::size_t>(index)]; }
  int cell_of(Vertex v) const { return cell_of_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& cell_index() const noexcept { return cell_of_; }

  bool is_discrete() const noexcept { return num_cells() == size(); }
  /// True if every cell of *this lies inside a cell of coarser.
  bool refines(const Coloring& coarser) const;
  /// Equality as unordered set partitions.
  bool same_partition(const Coloring& other) const;

  bool operator==(const Coloring& other) const { return cells_ == other.cells_; }

 private:
  std::vector<std::vector<Vertex>> cells_;
  std::vector<int> cell_of_;
};

/// Twin classes (N(u)\{v} == N(v)\{u}) restricted to equal input colors; cells ordered by least vertex.
Coloring twin_classes(const ColoredGraph& graph);

/// Complements the edges running between two disjoint vertex sets.
ColoredGraph bipartite_complement(const ColoredGraph& graph, std::span<const Vertex> cell_i,
                                  std::span<const Vertex> cell_j);

/// Complements the edges inside one vertex set.
ColoredGraph induced_complement(const ColoredGraph& graph, std::span<const Vertex> cell);

struct InducedSubgraph {
  ColoredGraph graph;
  std::vector<Vertex> to_original;  // new id -> original id
};

/// Subgraph on the given vertices (renumbered in ascending order), colors compacted.
InducedSubgraph induced_subgraph(const ColoredGraph& graph, std::span<const Vertex> vertices);

/// Connected components, each sorted, ordered by least vertex.
std::vector<std::vector<Vertex>> connected_components(const ColoredGraph& graph);

}  // namespace refix
