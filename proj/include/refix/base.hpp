#pragma once

#include <optional>
#include <span>
#include <vector>

#include "refix/perm_group.hpp"

namespace refix {

struct BaseResult {
  std::vector<Point> base;
  int b = 0;  // minimum base size when the search was exact, else base.size()
  /// orbit_sizes[i]: size of the orbit of base[i] under the stabilizer of base[0..i-1].
  std::vector<int> orbit_sizes;
  long long nodes = 0;
};

bool is_base(const PermGroup& group, std::span<const Point> s);

/// Minimum base by iterative deepening over one representative per stabilizer orbit.
BaseResult min_base_exact(const PermGroup& group);

/// Repeatedly takes the smallest point of a largest orbit of the current stabilizer.
BaseResult greedy_base(const PermGroup& group);

enum class CobaseStep { none, size_bound, trivial_group, orbits, blocks, jordan, brute_force };

/// The reduced instance reached when no shortcut step applies any more.
struct CobaseKernel {
  PermGroup group;                // acts on the full domain and fixes every mandatory point
  std::vector<Point> mandatory;   // points that must stay in every complement
  std::vector<Point> domain;      // remaining candidate points
  int k = 0;
};

struct CobaseResult {
  std::optional<std::vector<Point>> cobase;
  CobaseStep decided_by = CobaseStep::none;
  int block_restarts = 0;     // kernel replacements in the imprimitive case
  int symmetric_restarts = 0;  // point-fixing replacements in the Sym/Alt case
  long long subsets_checked = 0;
  CobaseKernel kernel;
};

/// Decides whether some set of exactly k points has a complement that is a base, and returns one.
/// The empty set always qualifies; k larger than the degree never does.
CobaseResult cobase_fpt(const PermGroup& group, int k);

}  // namespace refix
