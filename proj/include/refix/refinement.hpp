#pragma once

#include <span>
#include <vector>

#include "refix/graph.hpp"

namespace refix {

struct RefinementTrace {
  std::vector<Coloring> rounds;  // rounds[0] is the input coloring
  int stabilized_at = 0;

  const Coloring& stable() const { return rounds.back(); }
};

/// The graph's own color classes, ordered by color id.
Coloring initial_coloring(const ColoredGraph& graph);

/// One simultaneous round: vertices stay together iff they share (cell, sorted neighbor-cell multiset).
/// Children are ordered by parent cell, then by signature.
Coloring refine_step(const ColoredGraph& graph, const Coloring& coloring);

/// Runs rounds until the cell count stops growing. The final round repeats the partition.
RefinementTrace stable_coloring(const ColoredGraph& graph);
RefinementTrace stable_coloring(const ColoredGraph& graph, const Coloring& start);

/// Coloring after min(l, stabilization round) rounds.
Coloring refine_rounds(const ColoredGraph& graph, int l);

/// Gives each listed vertex a fresh color, appended after existing ids in sequence order.
ColoredGraph individualize(const ColoredGraph& graph, std::span<const Vertex> s);

bool is_discrete(const ColoredGraph& graph);
bool is_discrete_within(const ColoredGraph& graph, int l);

/// max over v, C of min(deg_C(v), |C| - deg_C(v)), against the graph's color classes.
int color_valence(const ColoredGraph& graph);
int color_valence(const ColoredGraph& graph, const Coloring& coloring);

/// The graph recolored by the given coloring's cell indices.
ColoredGraph recolor(const ColoredGraph& graph, const Coloring& coloring);

}  // namespace refix
