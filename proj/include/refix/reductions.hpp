#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "refix/graph.hpp"
#include "refix/perm_group.hpp"

namespace refix {

// ---- gadgets ----

/// A two-vertex color class. Side 0 is v, side 1 is v'.
struct PairRef {
  Vertex v = -1;
  Vertex v_prime = -1;
  Color cls = -1;

  Vertex side(int b) const { return b == 0 ? v : v_prime; }
  bool operator==(const PairRef&) const = default;
};

struct GadgetRecord {
  std::string kind;             // "cfi" or "imp"
  std::vector<Color> pairs;     // classes of the pairs it connects, in argument order
  std::vector<Color> inner;     // fresh classes it introduced
};

/// Accumulates vertices, classes and edges; every class gets the next color id.
class GraphBuilder {
 public:
  std::vector<Vertex> add_class(int size);
  PairRef add_pair();
  void add_edge(Vertex u, Vertex v);

  int size() const { return static_cast<int>(colors_.size()); }
  int num_classes() const { return next_class_; }
  const std::vector<GadgetRecord>& gadgets() const { return gadgets_; }
  void record(GadgetRecord r) { gadgets_.push_back(std::move(r)); }

  ColoredGraph build() const;

 private:
  std::vector<Color> colors_;
  std::vector<Edge> edges_;
  std::vector<GadgetRecord> gadgets_;
  int next_class_ = 0;
};

struct CfiFragment {
  std::array<Vertex, 4> f{};  // f[2b + c] touches side b of P_i, side c of P_j, side b^c of P_k
  Color cls = -1;
};

/// Four fresh inner vertices coupling three distinct pairs. Throws std::invalid_argument on pair reuse.
CfiFragment cfi_gadget(GraphBuilder& builder, const PairRef& pi, const PairRef& pj, const PairRef& pk);

struct ImpFragment {
  PairRef f1, f2;  // fresh pairs matched to P_i
  CfiFragment cfi;
};

/// Fresh pairs F', F'' matched side-by-side to P_i, then CFI(F', F'', P_k).
ImpFragment imp_gadget(GraphBuilder& builder, const PairRef& pi, const PairRef& pk);

// ---- monotone circuits ----

enum class GateOp { and_gate, or_gate };

struct Ref {
  bool is_input = true;
  int index = 0;

  bool operator==(const Ref&) const = default;
  std::string name() const { return (is_input ? "x" : "g") + std::to_string(index); }
};

struct Gate {
  GateOp op = GateOp::and_gate;
  Ref left, right;
};

struct MonotoneCircuit {
  int n_inputs = 0;
  std::vector<Gate> gates;  // topological: refs point to inputs or earlier gates
  Ref output;

  /// Throws std::invalid_argument on dangling or forward references.
  void validate() const;
};

bool eval_circuit(const MonotoneCircuit& c, const std::vector<int>& x);

/// First weight-k satisfying assignment, scanning supports in lexicographic order.
std::optional<std::vector<int>> weighted_sat_brute(const MonotoneCircuit& c, int k);

/// Uniformly random gate types; each gate reads two distinct earlier signals when possible. Output is the last gate.
MonotoneCircuit random_circuit(std::mt19937& rng, int n_inputs, int n_gates);

enum class CircuitVariant { xc, xc_prime, xc_dprime };

struct CircuitGraph {
  ColoredGraph graph;
  std::vector<PairRef> input_pairs;  // one per circuit input (the outer pairs for xc_dprime)
  std::vector<PairRef> outputs;      // Q, or Q^(1..n) for xc_dprime
  std::vector<GadgetRecord> gadgets;
};

CircuitGraph circuit_to_graph(const MonotoneCircuit& c, CircuitVariant variant);

// ---- formulas, set cover and groups ----

/// Clauses of non-zero literals: v+1 for variable v, -(v+1) for its negation.
struct CnfFormula {
  int variables = 0;
  std::vector<std::vector<int>> clauses;

  /// Throws std::invalid_argument on empty clauses, zero literals, out-of-range variables or width > 3.
  void validate() const;
};

bool satisfies(const CnfFormula& f, unsigned long long assignment);
std::optional<unsigned long long> brute_force_sat(const CnfFormula& f);

/// Splits every variable occurring more than three times into a cycle of implied copies.
CnfFormula normalize_occurrences(const CnfFormula& f);

struct CoverSet {
  int block = 0;
  unsigned long long assignment = 0;  // bit q is the value of the q-th variable of the block
  std::vector<int> elements;          // sorted; clause j is element j, block i is element m + i
};

struct SetCoverInstance {
  int universe = 0;
  std::vector<CoverSet> sets;
};

/// Smallest family covering the universe (lexicographically first among the smallest), by increasing size.
std::optional<std::vector<int>> min_set_cover(const SetCoverInstance& inst, int max_size);

struct SatGroupInstance {
  CnfFormula formula;                    // after occurrence normalization
  int k = 0;
  int n_unary = 0;
  std::vector<std::vector<int>> blocks;  // variables per block
  SetCoverInstance cover;
  std::vector<int> copy_start;           // first point of each set's copy of F_2^|S|
  std::vector<int> point_set;            // point -> set index
  PermGroup group;                       // generated by the m + k unit vectors

  int omega() const { return group.degree(); }
  /// Indices of the sets whose copies meet the given points.
  std::vector<int> touched_sets(const std::vector<Point>& points) const;
  bool covers(const std::vector<int>& set_indices) const;
};

/// Throws std::invalid_argument when the formula does not fit k blocks of floor(log2 n) variables.
SatGroupInstance mini3sat_to_group(const CnfFormula& f, int k, int n_unary);

struct RigidGraphInstance {
  ColoredGraph graph;
  int omega = 0;  // vertices 0..omega-1 are the points, in point order
  std::vector<std::array<Vertex, 2>> coordinates;  // the pair I_j for each universe element
};

RigidGraphInstance group_to_rigid_graph(const SatGroupInstance& inst);

// ---- dominating set ----

enum class DomsetVariant { colored, uncolored };

struct DomsetInstance {
  ColoredGraph graph;
  int k = 0;
  int l = 1;
  std::optional<bool> forced_answer;  // set when isolated-vertex removal already decides the instance
  int removed_isolated = 0;
  std::vector<Vertex> first_layer;    // v_1 for each input vertex, -1 if removed
};

/// Throws std::invalid_argument for colored input or l < 1, std::runtime_error if the degree coding fails its checks.
DomsetInstance domset_to_kdiscrete(const ColoredGraph& x, int k, int l, DomsetVariant variant);

bool is_dominating_set(const ColoredGraph& x, const std::vector<Vertex>& d);
/// Smallest dominating set, lexicographically first among the smallest.
std::vector<Vertex> min_dominating_set(const ColoredGraph& x);

}  // namespace refix
