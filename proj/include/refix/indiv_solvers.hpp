#pragma once

#include <optional>
#include <string>
#include <vector>

#include "refix/graph.hpp"

namespace refix {

enum class ClassKind { discrete, discrete_l, amenable, compact, refinable, rigid };

struct ClassTag {
  ClassKind kind = ClassKind::discrete;
  int l = 0;  // round budget, only used by discrete_l

  static ClassTag discrete() { return {ClassKind::discrete, 0}; }
  static ClassTag discrete_within(int l) { return {ClassKind::discrete_l, l}; }
  static ClassTag amenable() { return {ClassKind::amenable, 0}; }
  static ClassTag compact() { return {ClassKind::compact, 0}; }
  static ClassTag refinable() { return {ClassKind::refinable, 0}; }
  static ClassTag rigid() { return {ClassKind::rigid, 0}; }

  /// "discrete", "discrete-l", "amenable", "compact", "refinable" or "rigid".
  std::string name() const;
  /// Inverse of name(); throws std::invalid_argument on unknown names.
  static ClassTag parse(const std::string& name, int l = 0);

  bool operator==(const ClassTag&) const = default;
};

struct SolveReport {
  bool answer = false;
  std::vector<Vertex> witness;  // sorted
  long long work = 0;           // candidate sets or search nodes examined
};

/// Thrown when a 3-bounded-only question is asked about a graph with a stable class larger than 3.
class NotThreeBounded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Stable classes coincide with the orbits of the automorphism group.
bool is_refinable(const ColoredGraph& graph);

bool is_three_bounded(const ColoredGraph& graph);
bool is_amenable_3bounded(const ColoredGraph& graph);
bool is_compact_3bounded(const ColoredGraph& graph);

bool is_rigid(const ColoredGraph& graph);

bool membership(const ColoredGraph& graph, ClassTag tag);

/// Lexicographically first k-subset whose individualization lands in the class.
/// jobs > 1 splits the scan by first element; the witness does not depend on jobs.
SolveReport k_class_search(const ColoredGraph& graph, int k, ClassTag tag, int jobs = 1);

/// Lexicographically first k-subset after whose individualization the stable coloring has valence at most d.
SolveReport k_color_valence(const ColoredGraph& graph, int k, int d, int jobs = 1);

struct NkKernel {
  ColoredGraph graph;
  int k = 0;
  std::vector<Vertex> to_original;  // kernel vertex -> input vertex
  std::vector<Vertex> removed;      // twins dropped from the input; always individualized
  /// Set when the kernel is the canonical yes instance; holds a non-individualized set of the input.
  std::optional<std::vector<Vertex>> certificate;
  bool trivially_yes = false;
  bool trivially_no = false;
  bool brute_force_fallback = false;  // the constructive step got stuck and a scan decided the instance
};

/// Keeps one vertex per twin class, recolors the survivors by their adjacency to the dropped twins,
/// and replaces large twin-free residues by a canonical yes instance.
NkKernel kernelize_nk_discrete(const ColoredGraph& graph, int k);

/// Whether individualizing all but k vertices can make the graph discrete.
/// The witness is the set of k vertices left alone.
SolveReport nk_discrete_solve(const ColoredGraph& graph, int k);

struct ThreeBoundedComponent {
  std::vector<Vertex> vertices;  // sorted input vertices of one linked component
  int class_size = 1;
  long long aut_order = 1;
  bool forest = true;
  int cost = 0;
  std::vector<Vertex> witness;
};

struct ThreeBoundedReport {
  SolveReport report;  // answer is always true; witness is a minimum set, its size the optimum
  int minimum = 0;
  std::vector<ThreeBoundedComponent> components;
};

/// Minimum individualization set for a 3-bounded graph, decomposed by linked components.
ThreeBoundedReport solve_3bounded(const ColoredGraph& graph, ClassTag tag);

}  // namespace refix
