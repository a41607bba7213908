#pragma once

// Independent brute-force references used by the unit tests and the acceptance binary.
// Nothing here calls into the library's search or group machinery.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "refix/graph.hpp"
#include "refix/permutation.hpp"

namespace oracle {

using Perm = std::vector<int>;
using refix::ColoredGraph;
using refix::Vertex;

inline Perm compose(const Perm& g, const Perm& h) {
  Perm out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = h[g[i]];
  return out;
}

inline Perm identity(int n) {
  Perm id(n);
  std::iota(id.begin(), id.end(), 0);
  return id;
}

inline std::set<Perm> closure(int n, const std::vector<Perm>& gens) {
  std::set<Perm> seen{identity(n)};
  std::vector<Perm> frontier{identity(n)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& e : frontier)
      for (const auto& g : gens) {
        Perm p = compose(e, g);
        if (seen.insert(p).second) next.push_back(std::move(p));
      }
    frontier = std::move(next);
  }
  return seen;
}

inline std::vector<Perm> images_of(const std::vector<refix::Permutation>& gens) {
  std::vector<Perm> out;
  for (const auto& g : gens) out.push_back(g.images());
  return out;
}

inline bool fixes(const Perm& g, const std::vector<int>& s) {
  return std::all_of(s.begin(), s.end(), [&](int p) { return g[p] == p; });
}

/// Calls f on every size-k subset of 0..n-1 in lexicographic order; stops when f returns true.
inline bool for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& f) {
  if (k > n || k < 0) return false;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (f(idx)) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline std::vector<int> complement(int n, const std::vector<int>& s) {
  std::vector<int> out;
  for (int p = 0; p < n; ++p)
    if (std::find(s.begin(), s.end(), p) == s.end()) out.push_back(p);
  return out;
}

inline bool is_identity(const Perm& g) {
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] != static_cast<int>(i)) return false;
  return true;
}

inline bool is_base(const std::set<Perm>& group, const std::vector<int>& s) {
  for (const auto& g : group)
    if (fixes(g, s) && !is_identity(g)) return false;
  return true;
}

inline int min_base_size(int n, const std::set<Perm>& group) {
  for (int k = 0; k <= n; ++k)
    if (for_each_subset(n, k, [&](const std::vector<int>& s) { return is_base(group, s); })) return k;
  return n;
}

/// Whether some k-subset has a base as complement.
inline bool has_cobase(int n, const std::set<Perm>& group, int k) {
  return for_each_subset(n, k, [&](const std::vector<int>& s) { return is_base(group, complement(n, s)); });
}

/// All automorphisms by vertex-by-vertex assignment with adjacency checks.
inline std::vector<Perm> automorphisms(const ColoredGraph& g) {
  const int n = g.size();
  std::vector<Perm> out;
  Perm img(n, -1);
  std::vector<char> used(n, 0);
  std::function<void(int)> go = [&](int v) {
    if (v == n) {
      out.push_back(img);
      return;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w] || g.color(w) != g.color(v) || g.degree(w) != g.degree(v)) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) ok = g.adjacent(u, v) == g.adjacent(img[u], w);
      if (!ok) continue;
      img[v] = w;
      used[w] = 1;
      go(v + 1);
      used[w] = 0;
    }
  };
  go(0);
  return out;
}

/// Partition of the vertex set into orbits of a list of group elements (the full group).
inline std::vector<int> orbit_labels(int n, const std::vector<Perm>& elements) {
  std::vector<int> label(n);
  std::iota(label.begin(), label.end(), 0);
  for (const auto& g : elements)
    for (int v = 0; v < n; ++v) label[v] = std::min(label[v], g[v]);
  return label;
}

/// Stable coloring by repeated signature hashing, returned as one label per vertex.
inline std::vector<int> stable_labels(const ColoredGraph& g, std::vector<int> labels) {
  const int n = g.size();
  while (true) {
    std::map<std::pair<int, std::vector<int>>, int> ids;
    std::vector<int> next(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> sig;
      for (int w : g.neighbors(v)) sig.push_back(labels[w]);
      std::sort(sig.begin(), sig.end());
      auto key = std::make_pair(labels[v], sig);
      auto it = ids.find(key);
      if (it == ids.end()) it = ids.emplace(key, static_cast<int>(ids.size())).first;
      next[v] = it->second;
    }
    std::set<int> before(labels.begin(), labels.end()), after(next.begin(), next.end());
    labels = next;
    if (after.size() == before.size()) return labels;
  }
}

inline bool labels_discrete(const std::vector<int>& labels) {
  return std::set<int>(labels.begin(), labels.end()).size() == labels.size();
}

/// Two labelings induce the same partition.
inline bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  std::map<int, int> ab, ba;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ab.count(a[i]) && ab[a[i]] != b[i]) return false;
    if (ba.count(b[i]) && ba[b[i]] != a[i]) return false;
    ab[a[i]] = b[i];
    ba[b[i]] = a[i];
  }
  return true;
}

inline std::vector<int> individualized_labels(const ColoredGraph& g, const std::vector<int>& s) {
  std::vector<int> labels(g.colors().begin(), g.colors().end());
  int next = g.num_colors();
  for (int v : s) labels[v] = next++;
  return labels;
}

inline ColoredGraph random_graph(std::mt19937& rng, int n, double p, int colors = 1) {
  std::bernoulli_distribution edge(p);
  std::uniform_int_distribution<int> col(0, std::max(0, colors - 1));
  std::vector<refix::Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (edge(rng)) edges.emplace_back(u, v);
  std::vector<int> c(n, 0);
  for (auto& x : c) x = col(rng);
  return ColoredGraph(n, edges, refix::compact_colors(c));
}

inline refix::Permutation random_perm(std::mt19937& rng, int n) {
  Perm p = identity(n);
  std::shuffle(p.begin(), p.end(), rng);
  return refix::Permutation(p);
}

/// A permutation moving only a few random points (keeps random groups small and varied).
inline refix::Permutation random_sparse_perm(std::mt19937& rng, int n, int moved) {
  Perm pts = identity(n);
  std::shuffle(pts.begin(), pts.end(), rng);
  pts.resize(std::min(moved, n));
  Perm shuffled = pts;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  Perm img = identity(n);
  for (std::size_t i = 0; i < pts.size(); ++i) img[pts[i]] = shuffled[i];
  return refix::Permutation(img);
}

/// One refinement round on labels.
inline std::vector<int> refine_once(const ColoredGraph& g, const std::vector<int>& labels) {
  std::map<std::pair<int, std::vector<int>>, int> ids;
  std::vector<int> next(labels.size());
  for (int v = 0; v < g.size(); ++v) {
    std::vector<int> sig;
    for (int w : g.neighbors(v)) sig.push_back(labels[w]);
    std::sort(sig.begin(), sig.end());
    auto key = std::make_pair(labels[v], sig);
    auto it = ids.find(key);
    if (it == ids.end()) it = ids.emplace(key, static_cast<int>(ids.size())).first;
    next[v] = it->second;
  }
  return next;
}

inline bool discrete_after(const ColoredGraph& g, const std::vector<int>& s) {
  return labels_discrete(stable_labels(g, individualized_labels(g, s)));
}

inline bool discrete_within_after(const ColoredGraph& g, const std::vector<int>& s, int l) {
  auto labels = individualized_labels(g, s);
  for (int r = 0; r < l && !labels_discrete(labels); ++r) labels = refine_once(g, labels);
  return labels_discrete(labels);
}

/// Automorphisms of g that fix every vertex of s.
inline std::vector<Perm> automorphisms_fixing(const ColoredGraph& g, const std::vector<int>& s) {
  std::vector<Perm> out;
  for (auto& p : automorphisms(g))
    if (fixes(p, s)) out.push_back(std::move(p));
  return out;
}

inline bool rigid_after(const ColoredGraph& g, const std::vector<int>& s) {
  return automorphisms_fixing(g, s).size() == 1;
}

inline bool refinable_after(const ColoredGraph& g, const std::vector<int>& s) {
  auto stable = stable_labels(g, individualized_labels(g, s));
  return same_partition(stable, orbit_labels(g.size(), automorphisms_fixing(g, s)));
}

/// Smallest |S| for which pred(S) holds, scanning sizes upward.
inline int min_subset(int n, const std::function<bool(const std::vector<int>&)>& pred) {
  for (int k = 0; k <= n; ++k)
    if (for_each_subset(n, k, pred)) return k;
  return -1;
}

/// Some k vertices can stay non-individualized while the rest make the graph discrete.
inline bool nk_discrete(const ColoredGraph& g, int k) {
  return for_each_subset(g.size(), k, [&](const std::vector<int>& s) { return discrete_after(g, complement(g.size(), s)); });
}

/// Graph whose classes are given sizes; each listed (a, b, perm) joins class a to class b by v_i -- w_perm[i].
struct CoverSpec {
  std::vector<int> class_sizes;
  std::vector<std::tuple<int, int, std::vector<int>>> matchings;
};

inline ColoredGraph cover_graph(const CoverSpec& spec) {
  std::vector<int> start;
  int n = 0;
  for (int s : spec.class_sizes) {
    start.push_back(n);
    n += s;
  }
  std::vector<refix::Edge> edges;
  for (const auto& [a, b, perm] : spec.matchings)
    for (std::size_t i = 0; i < perm.size(); ++i) edges.emplace_back(start[a] + static_cast<int>(i), start[b] + perm[i]);
  std::vector<int> colors(n);
  for (std::size_t c = 0; c < spec.class_sizes.size(); ++c)
    for (int i = 0; i < spec.class_sizes[c]; ++i) colors[start[c] + i] = static_cast<int>(c);
  return ColoredGraph(n, edges, colors);
}

/// Random graph with classes of size at most 3: matchings between equal-size classes, plus
/// noise that color refinement sees through (complete joins, filled classes), then relabeled.
inline ColoredGraph random_three_bounded(std::mt19937& rng, int max_n) {
  std::vector<int> sizes;
  int n = 0;
  while (true) {
    int s = 1 + static_cast<int>(rng() % 3);
    if (n + s > max_n) break;
    sizes.push_back(s);
    n += s;
    if (rng() % 5 == 0 && n >= 4) break;
  }
  if (sizes.empty()) sizes.push_back(1), n = 1;
  std::vector<int> start;
  int acc = 0;
  for (int s : sizes) start.push_back(acc), acc += s;
  std::set<std::pair<int, int>> edges;
  auto add = [&](int u, int v) {
    if (u != v) edges.insert({std::min(u, v), std::max(u, v)});
  };
  const int c = static_cast<int>(sizes.size());
  for (int a = 0; a < c; ++a) {
    if (rng() % 6 == 0)
      for (int i = 0; i < sizes[a]; ++i)
        for (int j = i + 1; j < sizes[a]; ++j) add(start[a] + i, start[a] + j);
    for (int b = a + 1; b < c; ++b) {
      int roll = static_cast<int>(rng() % 10);
      if (sizes[a] == sizes[b] && roll < 4) {
        Perm perm = identity(sizes[a]);
        std::shuffle(perm.begin(), perm.end(), rng);
        bool complement_it = sizes[a] == 3 && rng() % 4 == 0;
        for (int i = 0; i < sizes[a]; ++i)
          for (int j = 0; j < sizes[b]; ++j)
            if ((perm[i] == j) != complement_it) add(start[a] + i, start[b] + j);
      } else if (roll == 9) {
        for (int i = 0; i < sizes[a]; ++i)
          for (int j = 0; j < sizes[b]; ++j) add(start[a] + i, start[b] + j);
      }
    }
  }
  Perm relabel = identity(n);
  std::shuffle(relabel.begin(), relabel.end(), rng);
  std::vector<refix::Edge> out;
  for (auto [u, v] : edges) out.emplace_back(relabel[u], relabel[v]);
  std::vector<int> colors(n);
  for (int a = 0; a < c; ++a)
    for (int i = 0; i < sizes[a]; ++i) colors[relabel[start[a] + i]] = a;
  return ColoredGraph(n, out, colors);
}

}  // namespace oracle
