#pragma once

#include <optional>
#include <span>
#include <vector>

#include "refix/base.hpp"
#include "refix/graph.hpp"
#include "refix/perm_group.hpp"

namespace refix {

struct AutGroup {
  PermGroup group;
  long long nodes = 0;  // search tree nodes visited
};

/// Exact generators of Aut(graph) by individualization-refinement backtracking.
AutGroup automorphism_group(const ColoredGraph& graph);

bool is_automorphism(const ColoredGraph& graph, const Permutation& g);

enum class SupportMethod { automatic, filter, backtrack };

/// Every nontrivial automorphism moving at most k vertices, sorted by image vector.
/// automatic filters the whole group when its order is at most 10^6 and backtracks otherwise.
std::vector<Permutation> support_bounded_automorphisms(const ColoredGraph& graph, int k,
                                                       SupportMethod method = SupportMethod::automatic);

bool is_fixing_set(const ColoredGraph& graph, std::span<const Vertex> s);
bool is_fixing_set(const AutGroup& aut, std::span<const Vertex> s);

BaseResult min_fixing_set(const ColoredGraph& graph);

struct CofixResult {
  CobaseResult cobase;
  std::size_t small_support_count = 0;  // generators of the substituted subgroup
};

/// At most k vertices whose complement is a fixing set, via the subgroup generated by small-support automorphisms.
CofixResult cofix_fpt(const ColoredGraph& graph, int k);

}  // namespace refix
