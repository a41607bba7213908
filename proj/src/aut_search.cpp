#include "refix/aut_search.hpp"

#include <algorithm>
#include <numeric>

#include "refix/partition.hpp"

namespace refix {

bool is_automorphism(const ColoredGraph& graph, const Permutation& g) {
  if (g.degree() != graph.size()) return false;
  for (Vertex v = 0; v < graph.size(); ++v)
    if (graph.color(v) != graph.color(g[v])) return false;
  for (const auto& [u, v] : graph.edges())
    if (!graph.adjacent(g[u], g[v])) return false;
  return true;
}

namespace {

struct Level {
  OrderedPartition before;  // equitable partition before individualizing
  int cell = 0;             // target cell start
  Vertex chosen = 0;
};

Vertex smallest_in_cell(const OrderedPartition& p, int start) {
  return *std::min_element(p.elems.begin() + start, p.elems.begin() + start + p.size_at[start]);
}

std::vector<Vertex> sorted_cell(const OrderedPartition& p, int start) {
  std::vector<Vertex> cell(p.elems.begin() + start, p.elems.begin() + start + p.size_at[start]);
  std::sort(cell.begin(), cell.end());
  return cell;
}

class AutSearch {
 public:
  explicit AutSearch(const ColoredGraph& graph) : graph_(graph), refiner_(graph) {}

  AutGroup run() {
    const int n = graph_.size();
    OrderedPartition p = refiner_.initial();
    refiner_.equitable(p);
    while (!p.discrete()) {
      Level level{p, p.target_cell(), 0};
      level.chosen = smallest_in_cell(p, level.cell);
      hashes_.push_back(refiner_.individualize(p, level.chosen));
      ++nodes_;
      levels_.push_back(std::move(level));
    }
    leaf_ = p.elems;
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), 0);

    for (int i = static_cast<int>(levels_.size()) - 1; i >= 0; --i) {
      const Level& level = levels_[i];
      for (Vertex w : sorted_cell(level.before, level.cell)) {
        if (find(w) == find(level.chosen)) continue;
        OrderedPartition q = level.before;
        ++nodes_;
        if (refiner_.individualize(q, w) != hashes_[i]) continue;
        if (search(q, i + 1)) unite(w, level.chosen);
      }
    }
    return AutGroup{PermGroup(n, std::move(generators_)), nodes_};
  }

 private:
  bool search(const OrderedPartition& q, std::size_t depth) {
    if (q.num_cells != (depth < levels_.size() ? levels_[depth].before.num_cells : graph_.size())) return false;
    if (q.discrete()) {
      std::vector<Vertex> images(graph_.size());
      for (int pos = 0; pos < graph_.size(); ++pos) images[leaf_[pos]] = q.elems[pos];
      Permutation g = Permutation::trusted(std::move(images));
      if (!is_automorphism(graph_, g)) return false;
      generators_.push_back(g);
      for (Vertex v = 0; v < graph_.size(); ++v) unite(v, g[v]);
      return true;
    }
    const Level& level = levels_[depth];
    int t = q.target_cell();
    if (t != level.cell || q.size_at[t] != level.before.size_at[t]) return false;
    for (Vertex u : sorted_cell(q, t)) {
      OrderedPartition child = q;
      ++nodes_;
      if (refiner_.individualize(child, u) != hashes_[depth]) continue;
      if (search(child, depth + 1)) return true;
    }
    return false;
  }

  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

  const ColoredGraph& graph_;
  Refiner refiner_;
  std::vector<Level> levels_;
  std::vector<std::uint64_t> hashes_;
  std::vector<Vertex> leaf_;
  std::vector<int> parent_;
  std::vector<Permutation> generators_;
  long long nodes_ = 0;
};

// Pairs a fixed left path with every right path, abandoning pairs whose forced support exceeds k.
class SupportSearch {
 public:
  SupportSearch(const ColoredGraph& graph, int k) : graph_(graph), refiner_(graph), k_(k) {}

  std::vector<Permutation> run() {
    OrderedPartition left = refiner_.initial();
    refiner_.equitable(left);
    lefts_.push_back(left);
    while (!left.discrete()) {
      int t = left.target_cell();
      hashes_.push_back(refiner_.individualize(left, smallest_in_cell(left, t)));
      lefts_.push_back(left);
    }
    search(lefts_.front(), 0);
    std::sort(found_.begin(), found_.end());
    return std::move(found_);
  }

 private:
  int forced_support(const OrderedPartition& l, const OrderedPartition& r) const {
    int moved = 0;
    for (int s = 0; s < l.size(); s += l.size_at[s])
      if (l.size_at[s] == 1 && l.elems[s] != r.elems[s]) ++moved;
    return moved;
  }

  void search(const OrderedPartition& r, std::size_t depth) {
    const OrderedPartition& l = lefts_[depth];
    if (r.num_cells != l.num_cells || forced_support(l, r) > k_) return;
    if (r.discrete()) {
      std::vector<Vertex> images(graph_.size());
      for (int pos = 0; pos < graph_.size(); ++pos) images[l.elems[pos]] = r.elems[pos];
      Permutation g = Permutation::trusted(std::move(images));
      if (!g.is_identity() && g.support_size() <= k_ && is_automorphism(graph_, g)) found_.push_back(std::move(g));
      return;
    }
    int t = l.target_cell();
    if (r.size_at[t] != l.size_at[t]) return;
    for (Vertex u : sorted_cell(r, t)) {
      OrderedPartition child = r;
      if (refiner_.individualize(child, u) != hashes_[depth]) continue;
      search(child, depth + 1);
    }
  }

  const ColoredGraph& graph_;
  Refiner refiner_;
  int k_;
  std::vector<OrderedPartition> lefts_;
  std::vector<std::uint64_t> hashes_;
  std::vector<Permutation> found_;
};

}  // namespace

AutGroup automorphism_group(const ColoredGraph& graph) { return AutSearch(graph).run(); }

std::vector<Permutation> support_bounded_automorphisms(const ColoredGraph& graph, int k, SupportMethod method) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (k < 2) return {};
  if (method != SupportMethod::backtrack) {
    AutGroup aut = automorphism_group(graph);
    auto elements = enumerate_elements(aut.group, 1000000);
    if (elements) {
      std::vector<Permutation> out;
      for (auto& g : *elements)
        if (!g.is_identity() && g.support_size() <= k) out.push_back(std::move(g));
      std::sort(out.begin(), out.end());
      return out;
    }
    if (method == SupportMethod::filter) throw std::runtime_error("automorphism group too large to enumerate");
  }
  return SupportSearch(graph, k).run();
}

bool is_fixing_set(const AutGroup& aut, std::span<const Vertex> s) { return is_base(aut.group, s); }

bool is_fixing_set(const ColoredGraph& graph, std::span<const Vertex> s) {
  return is_fixing_set(automorphism_group(graph), s);
}

BaseResult min_fixing_set(const ColoredGraph& graph) { return min_base_exact(automorphism_group(graph).group); }

CofixResult cofix_fpt(const ColoredGraph& graph, int k) {
  auto small = support_bounded_automorphisms(graph, k);
  CofixResult out;
  out.small_support_count = small.size();
  out.cobase = cobase_fpt(PermGroup(graph.size(), std::move(small)), k);
  return out;
}

}  // namespace refix
