#include "refix/brute.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "refix/refinement.hpp"

namespace refix::brute {

bool for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& f) {
  if (k < 0 || k > n) return false;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (f(idx)) return true;
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

std::vector<Permutation> group_elements(const PermGroup& group, std::size_t limit) {
  const int n = group.degree();
  std::set<std::vector<Point>> seen;
  std::vector<Permutation> out{Permutation::identity(n)};
  seen.insert(out.front().images());
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : group.generators()) {
      Permutation p = compose(out[i], g);
      if (seen.insert(p.images()).second) {
        out.push_back(std::move(p));
        if (out.size() > limit) throw TooLarge("group has more than " + std::to_string(limit) + " elements");
      }
    }
  }
  return out;
}

std::vector<Permutation> automorphisms(const ColoredGraph& graph, std::size_t limit) {
  const int n = graph.size();
  std::vector<Permutation> out;
  std::vector<Point> img(static_cast<std::size_t>(n), -1);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::function<void(int)> go = [&](int v) {
    if (v == n) {
      out.push_back(Permutation(img));
      if (out.size() > limit) throw TooLarge("graph has more than " + std::to_string(limit) + " automorphisms");
      return;
    }
    for (Vertex w = 0; w < n; ++w) {
      if (used[static_cast<std::size_t>(w)] || graph.color(w) != graph.color(v) || graph.degree(w) != graph.degree(v))
        continue;
      bool ok = true;
      for (Vertex u = 0; u < v && ok; ++u) ok = graph.adjacent(u, v) == graph.adjacent(img[static_cast<std::size_t>(u)], w);
      if (!ok) continue;
      img[static_cast<std::size_t>(v)] = w;
      used[static_cast<std::size_t>(w)] = 1;
      go(v + 1);
      used[static_cast<std::size_t>(w)] = 0;
    }
  };
  go(0);
  return out;
}

namespace {

Coloring stable_by_rounds(const ColoredGraph& graph) {
  Coloring c = initial_coloring(graph);
  while (true) {
    Coloring next = refine_step(graph, c);
    if (next.num_cells() == c.num_cells()) return next;
    c = std::move(next);
  }
}

Coloring orbit_partition(int n, const std::vector<Permutation>& elements) {
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]);
  };
  for (const auto& g : elements)
    for (int p = 0; p < n; ++p) parent[static_cast<std::size_t>(find(p))] = find(g[p]);
  std::vector<Color> label(static_cast<std::size_t>(n));
  std::vector<int> id(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int p = 0; p < n; ++p) {
    int r = find(p);
    if (id[static_cast<std::size_t>(r)] < 0) id[static_cast<std::size_t>(r)] = next++;
    label[static_cast<std::size_t>(p)] = id[static_cast<std::size_t>(r)];
  }
  return Coloring::from_colors(label);
}

bool fixes_all(const Permutation& g, const std::vector<int>& s) {
  return std::all_of(s.begin(), s.end(), [&](int p) { return g[p] == p; });
}

std::vector<int> complement(int n, const std::vector<int>& s) {
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (int p : s) in[static_cast<std::size_t>(p)] = 1;
  std::vector<int> out;
  for (int p = 0; p < n; ++p)
    if (!in[static_cast<std::size_t>(p)]) out.push_back(p);
  return out;
}

// Pointwise stabilizer of s contains only the identity.
bool kills_all(const std::vector<Permutation>& elements, const std::vector<int>& s) {
  return std::none_of(elements.begin(), elements.end(),
                      [&](const Permutation& g) { return !g.is_identity() && fixes_all(g, s); });
}

bool accepts(const ColoredGraph& graph, const std::vector<Permutation>& auts, const std::vector<int>& s, ClassTag tag) {
  auto ind = individualize(graph, s);
  switch (tag.kind) {
    case ClassKind::discrete:
      return stable_by_rounds(ind).is_discrete();
    case ClassKind::discrete_l: {
      Coloring c = initial_coloring(ind);
      for (int r = 0; r < tag.l && !c.is_discrete(); ++r) c = refine_step(ind, c);
      return c.is_discrete();
    }
    case ClassKind::rigid:
      return kills_all(auts, s);
    case ClassKind::refinable: {
      std::vector<Permutation> fixing;
      for (const auto& g : auts)
        if (fixes_all(g, s)) fixing.push_back(g);
      return stable_by_rounds(ind).same_partition(orbit_partition(graph.size(), fixing));
    }
    default:
      return false;
  }
}

bool has_reference(ClassTag tag) { return tag.kind != ClassKind::amenable && tag.kind != ClassKind::compact; }

bool needs_automorphisms(ClassTag tag) { return tag.kind == ClassKind::rigid || tag.kind == ClassKind::refinable; }

}  // namespace

bool stable_discrete(const ColoredGraph& graph) { return stable_by_rounds(graph).is_discrete(); }

std::optional<bool> membership(const ColoredGraph& graph, ClassTag tag) { return k_search(graph, 0, tag); }

std::optional<bool> k_search(const ColoredGraph& graph, int k, ClassTag tag) {
  if (!has_reference(tag)) return std::nullopt;
  auto auts = needs_automorphisms(tag) ? automorphisms(graph) : std::vector<Permutation>{};
  return for_each_subset(graph.size(), k, [&](const std::vector<int>& s) { return accepts(graph, auts, s, tag); });
}

std::optional<int> min_individualization(const ColoredGraph& graph, ClassTag tag) {
  if (!has_reference(tag)) return std::nullopt;
  auto auts = needs_automorphisms(tag) ? automorphisms(graph) : std::vector<Permutation>{};
  for (int k = 0; k <= graph.size(); ++k)
    if (for_each_subset(graph.size(), k, [&](const std::vector<int>& s) { return accepts(graph, auts, s, tag); }))
      return k;
  return graph.size();
}

bool k_color_valence(const ColoredGraph& graph, int k, int d) {
  return for_each_subset(graph.size(), k, [&](const std::vector<int>& s) {
    auto ind = individualize(graph, s);
    return color_valence(ind, stable_by_rounds(ind)) <= d;
  });
}

bool nk_discrete(const ColoredGraph& graph, int k) {
  const int n = graph.size();
  return for_each_subset(n, k, [&](const std::vector<int>& s) {
    return stable_by_rounds(individualize(graph, complement(n, s))).is_discrete();
  });
}

int min_base(const PermGroup& group) {
  auto elements = group_elements(group);
  for (int k = 0; k <= group.degree(); ++k)
    if (for_each_subset(group.degree(), k, [&](const std::vector<int>& s) { return kills_all(elements, s); })) return k;
  return group.degree();
}

bool has_cobase(const PermGroup& group, int k) {
  auto elements = group_elements(group);
  const int n = group.degree();
  return for_each_subset(n, k, [&](const std::vector<int>& s) { return kills_all(elements, complement(n, s)); });
}

int min_fixing_set(const ColoredGraph& graph) {
  auto auts = automorphisms(graph);
  for (int k = 0; k <= graph.size(); ++k)
    if (for_each_subset(graph.size(), k, [&](const std::vector<int>& s) { return kills_all(auts, s); })) return k;
  return graph.size();
}

bool has_cofix(const ColoredGraph& graph, int k) {
  auto auts = automorphisms(graph);
  const int n = graph.size();
  return for_each_subset(n, k, [&](const std::vector<int>& s) { return kills_all(auts, complement(n, s)); });
}

}  // namespace refix::brute
