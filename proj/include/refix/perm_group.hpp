#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "refix/permutation.hpp"

namespace refix {

using BigInt = boost::multiprecision::cpp_int;

/// Base and strong generating set with explicit transversals.
struct Bsgs {
  int n = 0;
  std::vector<Point> base;
  std::vector<Permutation> strong;
  /// level_gens[i]: indices into strong of the generators fixing base[0..i-1].
  std::vector<std::vector<int>> level_gens;
  /// orbit[i]: the fundamental orbit base[i]^{G^(i)} in discovery order.
  std::vector<std::vector<Point>> orbit;
  /// rep[i][p]: index into reps[i] of u with base[i]^u = p, or -1.
  std::vector<std::vector<int>> rep;
  std::vector<std::vector<Permutation>> reps;
  std::vector<std::vector<Permutation>> reps_inv;

  int length() const { return static_cast<int>(base.size()); }
  BigInt order() const;
  /// Generators of the stabilizer of base[0..level-1].
  std::vector<Permutation> stabilizer_generators(int level) const;
  /// Sifts g; returns the residue and the level where sifting stopped (length() if it went through).
  std::pair<Permutation, int> strip(Permutation g, int from_level = 0) const;
};

/// Deterministic Schreier-Sims. The base starts with prefix (in order, kept even where redundant),
/// then continues with smallest moved points.
Bsgs schreier_sims(int n, const std::vector<Permutation>& generators, std::span<const Point> prefix = {});

class PermGroup {
 public:
  PermGroup() = default;
  /// Throws std::invalid_argument if a generator has the wrong degree.
  PermGroup(int n, std::vector<Permutation> generators);
  static PermGroup trivial(int n) { return PermGroup(n, {}); }
  /// Adopts an already computed BSGS whose strong generators generate the group.
  static PermGroup from_bsgs(Bsgs bsgs);

  int degree() const { return n_; }
  const std::vector<Permutation>& generators() const { return generators_; }

  /// Builds the BSGS on first use; not safe to call concurrently before the first build finishes.
  const Bsgs& bsgs() const;
  void build_bsgs() const { bsgs(); }

  BigInt order() const { return bsgs().order(); }
  bool contains(const Permutation& g) const;
  bool is_trivial() const;

 private:
  int n_ = 0;
  std::vector<Permutation> generators_;
  mutable std::shared_ptr<const Bsgs> cache_;
};

struct BlockSystem {
  std::vector<Point> orbit;                // sorted
  std::vector<std::vector<Point>> blocks;  // each sorted, ordered by least point
  bool primitive = false;                  // set when only the trivial system exists

  int block_size() const { return blocks.empty() ? 0 : static_cast<int>(blocks.front().size()); }
  bool trivial() const { return block_size() <= 1 || blocks.size() <= 1; }
};

enum class SymAltKind { sym, alt, other };

/// Orbits sorted internally, ordered by least point.
std::vector<std::vector<Point>> orbits(const PermGroup& group);
std::vector<Point> orbit_of(const PermGroup& group, Point p);

PermGroup pointwise_stabilizer(const PermGroup& group, std::span<const Point> s);

/// Orbits of the pointwise stabilizer of s, without materialising the subgroup.
std::vector<std::vector<Point>> stabilizer_orbits(const PermGroup& group, std::span<const Point> s);

/// Finest block system in which a and b share a block. The orbit must be a G-orbit.
BlockSystem minimal_block_system(const PermGroup& group, std::span<const Point> orbit, Point a, Point b);

/// Blocks are maximal nontrivial blocks; a primitive action yields singletons with primitive set.
/// Throws std::invalid_argument if orbit is not a single orbit.
BlockSystem maximal_block_system(const PermGroup& group, std::span<const Point> orbit);
bool is_primitive(const PermGroup& group, std::span<const Point> orbit);

/// Subgroup mapping every block of the system to itself. Throws if the system is not G-invariant.
PermGroup block_kernel(const PermGroup& group, const BlockSystem& system);

/// Compares the order of the restriction to orbit with |orbit|! and |orbit|!/2.
SymAltKind recognize_sym_alt(const PermGroup& group, std::span<const Point> orbit);

struct Restriction {
  PermGroup group;
  std::vector<Point> to_original;  // local point -> original point (ascending)
};

/// Restriction to a union of orbits, reindexed in increasing order. Throws if not invariant.
Restriction restrict(const PermGroup& group, std::span<const Point> points);

/// All elements, in an order fixed by the BSGS, if the order is at most limit.
std::optional<std::vector<Permutation>> enumerate_elements(const PermGroup& group, std::size_t limit);

BigInt factorial(int m);

}  // namespace refix
