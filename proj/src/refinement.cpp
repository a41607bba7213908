#include "refix/refinement.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace refix {

Coloring initial_coloring(const ColoredGraph& graph) { return Coloring::from_colors(graph.colors()); }

Coloring refine_step(const ColoredGraph& graph, const Coloring& coloring) {
  const int n = graph.size();
  if (coloring.size() != n) throw std::invalid_argument("coloring does not cover the vertex set");

  std::vector<std::vector<int>> signature(n);
  for (Vertex v = 0; v < n; ++v) {
    auto& sig = signature[v];
    for (Vertex w : graph.neighbors(v)) sig.push_back(coloring.cell_of(w));
    std::sort(sig.begin(), sig.end());
  }

  std::vector<std::vector<Vertex>> cells;
  cells.reserve(coloring.num_cells());
  for (const auto& parent : coloring.cells()) {
    if (parent.size() == 1) {
      cells.push_back(parent);
      continue;
    }
    std::vector<Vertex> order = parent;
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return signature[a] < signature[b]; });
    std::size_t start = 0;
    for (std::size_t i = 1; i <= order.size(); ++i) {
      if (i == order.size() || signature[order[i]] != signature[order[start]]) {
        std::vector<Vertex> child(order.begin() + start, order.begin() + i);
        std::sort(child.begin(), child.end());
        cells.push_back(std::move(child));
        start = i;
      }
    }
  }
  return Coloring::from_cells(n, std::move(cells));
}

RefinementTrace stable_coloring(const ColoredGraph& graph, const Coloring& start) {
  RefinementTrace trace;
  trace.rounds.push_back(start);
  while (true) {
    Coloring next = refine_step(graph, trace.rounds.back());
    bool grew = next.num_cells() > trace.rounds.back().num_cells();
    trace.rounds.push_back(std::move(next));
    if (!grew) break;
  }
  trace.stabilized_at = static_cast<int>(trace.rounds.size()) - 1;
  return trace;
}

RefinementTrace stable_coloring(const ColoredGraph& graph) {
  return stable_coloring(graph, initial_coloring(graph));
}

Coloring refine_rounds(const ColoredGraph& graph, int l) {
  if (l < 0) throw std::invalid_argument("round count must be non-negative");
  Coloring current = initial_coloring(graph);
  for (int round = 0; round < l; ++round) {
    Coloring next = refine_step(graph, current);
    if (next.num_cells() == current.num_cells()) break;
    current = std::move(next);
  }
  return current;
}

ColoredGraph individualize(const ColoredGraph& graph, std::span<const Vertex> s) {
  std::vector<Color> colors = graph.colors();
  std::vector<char> chosen(graph.size(), 0);
  Color next = graph.num_colors();
  for (Vertex v : s) {
    if (v < 0 || v >= graph.size()) throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
    if (chosen[v]) throw std::invalid_argument("vertex " + std::to_string(v) + " individualized twice");
    chosen[v] = 1;
    colors[v] = next++;
  }
  // Individualizing the sole member of a class leaves a hole in the id range.
  return graph.with_colors(compact_colors(colors));
}

bool is_discrete(const ColoredGraph& graph) { return stable_coloring(graph).stable().is_discrete(); }

bool is_discrete_within(const ColoredGraph& graph, int l) { return refine_rounds(graph, l).is_discrete(); }

int color_valence(const ColoredGraph& graph, const Coloring& coloring) {
  int best = 0;
  std::vector<int> deg(coloring.num_cells(), 0);
  for (Vertex v = 0; v < graph.size(); ++v) {
    std::fill(deg.begin(), deg.end(), 0);
    for (Vertex w : graph.neighbors(v)) ++deg[coloring.cell_of(w)];
    for (int c = 0; c < coloring.num_cells(); ++c) {
      int size = static_cast<int>(coloring.cell(c).size());
      best = std::max(best, std::min(deg[c], size - deg[c]));
    }
  }
  return best;
}

int color_valence(const ColoredGraph& graph) { return color_valence(graph, initial_coloring(graph)); }

ColoredGraph recolor(const ColoredGraph& graph, const Coloring& coloring) {
  return graph.with_colors(coloring.cell_index());
}

}  // namespace refix
