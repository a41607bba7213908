#include "refix/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace refix {

namespace {

std::string edge_str(const Edge& e) {
  return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

}  // namespace

void validate(const GraphData& data) {
  using K = GraphError::Kind;
  if (data.n < 0) throw GraphError(K::bad_size, "negative vertex count");
  std::set<Edge> seen;
  for (const auto& e : data.edges) {
    if (e.first < 0 || e.second < 0 || e.first >= data.n || e.second >= data.n)
      throw GraphError(K::dangling_endpoint, "edge " + edge_str(e) + " has an endpoint outside 0.." +
                                                 std::to_string(data.n - 1));
    if (e.first == e.second) throw GraphError(K::self_loop, "self-loop at vertex " + std::to_string(e.first));
    Edge key = std::minmax(e.first, e.second);
    if (!seen.insert(key).second) throw GraphError(K::duplicate_edge, "duplicate edge " + edge_str(key));
  }
  if (data.colors.empty()) return;
  if (static_cast<int>(data.colors.size()) != data.n)
    throw GraphError(K::color_count, "expected " + std::to_string(data.n) + " colors, got " +
                                         std::to_string(data.colors.size()));
  int max_color = -1;
  for (std::size_t v = 0; v < data.colors.size(); ++v) {
    if (data.colors[v] < 0)
      throw GraphError(K::negative_color, "vertex " + std::to_string(v) + " has a negative color");
    max_color = std::max(max_color, data.colors[v]);
  }
  std::vector<char> used(static_cast<std::size_t>(max_color + 1), 0);
  for (Color c : data.colors) used[static_cast<std::size_t>(c)] = 1;
  for (int c = 0; c <= max_color; ++c)
    if (!used[static_cast<std::size_t>(c)])
      throw GraphError(K::color_gap, "color " + std::to_string(c) + " is unused but " +
                                         std::to_string(max_color) + " occurs");
}

std::vector<Color> compact_colors(std::span<const Color> colors) {
  std::vector<Color> sorted(colors.begin(), colors.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<Color> out;
  out.reserve(colors.size());
  for (Color c : colors)
    out.push_back(static_cast<Color>(std::lower_bound(sorted.begin(), sorted.end(), c) - sorted.begin()));
  return out;
}

ColoredGraph::ColoredGraph(int n) : ColoredGraph(n, {}, {}) {}

ColoredGraph::ColoredGraph(int n, std::vector<Edge> edges, std::vector<Color> colors)
    : ColoredGraph(GraphData{n, std::move(edges), std::move(colors)}) {}

ColoredGraph::ColoredGraph(GraphData data) {
  validate(data);
  n_ = data.n;
  colors_ = data.colors.empty() ? std::vector<Color>(static_cast<std::size_t>(n_), 0) : std::move(data.colors);
  num_colors_ = n_ == 0 ? 0 : *std::max_element(colors_.begin(), colors_.end()) + 1;
  edges_.reserve(data.edges.size());
  for (const auto& e : data.edges) edges_.push_back(std::minmax(e.first, e.second));
  std::sort(edges_.begin(), edges_.end());
  adj_.assign(static_cast<std::size_t>(n_), {});
  for (const auto& [u, v] : edges_) {
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

bool ColoredGraph::adjacent(Vertex u, Vertex v) const {
  const auto& list = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(list.begin(), list.end(), v);
}

ColoredGraph ColoredGraph::with_colors(std::vector<Color> colors) const {
  return ColoredGraph(GraphData{n_, edges_, std::move(colors)});
}

Coloring Coloring::from_cells(int n, std::vector<std::vector<Vertex>> cells) {
  Coloring out;
  out.cell_of_.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].empty()) throw std::invalid_argument("coloring has an empty cell");
    std::sort(cells[i].begin(), cells[i].end());
    for (Vertex v : cells[i]) {
      if (v < 0 || v >= n) throw std::invalid_argument("coloring mentions vertex " + std::to_string(v) + " outside range");
      if (out.cell_of_[static_cast<std::size_t>(v)] != -1)
        throw std::invalid_argument("vertex " + std::to_string(v) + " appears in two cells");
      out.cell_of_[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
  }
  for (int v = 0; v < n; ++v)
    if (out.cell_of_[static_cast<std::size_t>(v)] == -1)
      throw std::invalid_argument("coloring does not cover vertex " + std::to_string(v));
  out.cells_ = std::move(cells);
  return out;
}

Coloring Coloring::from_colors(std::span<const Color> colors) {
  int k = 0;
  for (Color c : colors) {
    if (c < 0) throw std::invalid_argument("negative color id");
    k = std::max(k, c + 1);
  }
  std::vector<std::vector<Vertex>> cells(static_cast<std::size_t>(k));
  for (std::size_t v = 0; v < colors.size(); ++v) cells[static_cast<std::size_t>(colors[v])].push_back(static_cast<Vertex>(v));
  return from_cells(static_cast<int>(colors.size()), std::move(cells));
}

bool Coloring::refines(const Coloring& coarser) const {
  if (size() != coarser.size()) return false;
  for (const auto& cell : cells_)
    for (Vertex v : cell)
      if (coarser.cell_of(v) != coarser.cell_of(cell.front())) return false;
  return true;
}

bool Coloring::same_partition(const Coloring& other) const {
  return num_cells() == other.num_cells() && refines(other);
}

Coloring twin_classes(const ColoredGraph& graph) {
  const int n = graph.size();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  // Non-adjacent twins share (color, N(u)); adjacent twins share (color, N[u]).
  std::map<std::pair<Color, std::vector<Vertex>>, Vertex> open_key, closed_key;
  for (Vertex v = 0; v < n; ++v) {
    std::vector<Vertex> open(graph.neighbors(v).begin(), graph.neighbors(v).end());
    std::vector<Vertex> closed = open;
    closed.insert(std::upper_bound(closed.begin(), closed.end(), v), v);
    for (auto* table : {&open_key, &closed_key}) {
      auto key = std::make_pair(graph.color(v), table == &open_key ? open : closed);
      auto [it, inserted] = table->emplace(std::move(key), v);
      if (!inserted) parent[static_cast<std::size_t>(find_root(parent, v))] = find_root(parent, it->second);
    }
  }
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Vertex>> cells;
  for (Vertex v = 0; v < n; ++v) {
    int r = find_root(parent, v);
    if (slot[static_cast<std::size_t>(r)] == -1) {
      slot[static_cast<std::size_t>(r)] = static_cast<int>(cells.size());
      cells.emplace_back();
    }
    cells[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(v);
  }
  return Coloring::from_cells(n, std::move(cells));
}

namespace {

ColoredGraph toggle_pairs(const ColoredGraph& graph, const std::vector<Edge>& toggles) {
  std::set<Edge> edges(graph.edges().begin(), graph.edges().end());
  for (const auto& e : toggles) {
    auto key = std::minmax(e.first, e.second);
    if (!edges.erase(key)) edges.insert(key);
  }
  return ColoredGraph(graph.size(), {edges.begin(), edges.end()}, graph.colors());
}

void check_vertices(const ColoredGraph& graph, std::span<const Vertex> cell) {
  for (Vertex v : cell)
    if (v < 0 || v >= graph.size()) throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
}

}  // namespace

ColoredGraph bipartite_complement(const ColoredGraph& graph, std::span<const Vertex> cell_i,
                                  std::span<const Vertex> cell_j) {
  check_vertices(graph, cell_i);
  check_vertices(graph, cell_j);
  std::set<Vertex> left(cell_i.begin(), cell_i.end());
  for (Vertex v : cell_j)
    if (left.count(v)) throw std::invalid_argument("cells overlap at vertex " + std::to_string(v));
  std::vector<Edge> toggles;
  for (Vertex u : left)
    for (Vertex v : std::set<Vertex>(cell_j.begin(), cell_j.end())) toggles.emplace_back(u, v);
  return toggle_pairs(graph, toggles);
}

ColoredGraph induced_complement(const ColoredGraph& graph, std::span<const Vertex> cell) {
  check_vertices(graph, cell);
  std::vector<Vertex> members(cell.begin(), cell.end());
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::vector<Edge> toggles;
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b) toggles.emplace_back(members[a], members[b]);
  return toggle_pairs(graph, toggles);
}

InducedSubgraph induced_subgraph(const ColoredGraph& graph, std::span<const Vertex> vertices) {
  check_vertices(graph, vertices);
  InducedSubgraph out;
  out.to_original.assign(vertices.begin(), vertices.end());
  std::sort(out.to_original.begin(), out.to_original.end());
  out.to_original.erase(std::unique(out.to_original.begin(), out.to_original.end()), out.to_original.end());
  std::vector<int> local(static_cast<std::size_t>(graph.size()), -1);
  for (std::size_t i = 0; i < out.to_original.size(); ++i) local[static_cast<std::size_t>(out.to_original[i])] = static_cast<int>(i);
  std::vector<Edge> edges;
  std::vector<Color> colors;
  for (Vertex u : out.to_original) {
    colors.push_back(graph.color(u));
    for (Vertex v : graph.neighbors(u))
      if (u < v && local[static_cast<std::size_t>(v)] >= 0)
        edges.emplace_back(local[static_cast<std::size_t>(u)], local[static_cast<std::size_t>(v)]);
  }
  out.graph = ColoredGraph(static_cast<int>(out.to_original.size()), std::move(edges), compact_colors(colors));
  return out;
}

std::vector<std::vector<Vertex>> connected_components(const ColoredGraph& graph) {
  std::vector<int> seen(static_cast<std::size_t>(graph.size()), 0);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < graph.size(); ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    std::vector<Vertex> comp{s};
    seen[static_cast<std::size_t>(s)] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (Vertex w : graph.neighbors(comp[head]))
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace refix
