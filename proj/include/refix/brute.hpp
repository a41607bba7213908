#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "refix/graph.hpp"
#include "refix/indiv_solvers.hpp"
#include "refix/perm_group.hpp"

// Exhaustive references for the command line --oracle cross-check. They enumerate subsets,
// group elements and automorphisms directly and use only plain round-by-round refinement.
namespace refix::brute {

/// Thrown when an enumeration would exceed its element budget.
class TooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Calls f on the size-k subsets of 0..n-1 in lexicographic order until it returns true.
bool for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& f);

std::vector<Permutation> group_elements(const PermGroup& group, std::size_t limit = 200000);
std::vector<Permutation> automorphisms(const ColoredGraph& graph, std::size_t limit = 200000);

bool stable_discrete(const ColoredGraph& graph);

/// nullopt for amenable and compact, which have no exhaustive reference here.
std::optional<bool> membership(const ColoredGraph& graph, ClassTag tag);
std::optional<bool> k_search(const ColoredGraph& graph, int k, ClassTag tag);
std::optional<int> min_individualization(const ColoredGraph& graph, ClassTag tag);

bool k_color_valence(const ColoredGraph& graph, int k, int d);
bool nk_discrete(const ColoredGraph& graph, int k);

int min_base(const PermGroup& group);
bool has_cobase(const PermGroup& group, int k);
int min_fixing_set(const ColoredGraph& graph);
bool has_cofix(const ColoredGraph& graph, int k);

}  // namespace refix::brute
