#include "refix/partition.hpp"

#include <algorithm>

namespace refix {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  // splitmix64 finalizer folded into a running hash
  x += 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (x ^ (x >> 31));
}

}  // namespace

OrderedPartition OrderedPartition::from_coloring(const Coloring& coloring) {
  OrderedPartition p;
  const int n = coloring.size();
  p.elems.reserve(n);
  p.pos.assign(n, 0);
  p.start_of.assign(n, 0);
  p.size_at.assign(n, 0);
  for (const auto& cell : coloring.cells()) {
    int start = static_cast<int>(p.elems.size());
    p.size_at[start] = static_cast<int>(cell.size());
    for (Vertex v : cell) {
      p.pos[v] = static_cast<int>(p.elems.size());
      p.start_of[v] = start;
      p.elems.push_back(v);
    }
  }
  p.num_cells = coloring.num_cells();
  return p;
}

int OrderedPartition::target_cell() const {
  int best = -1;
  for (int s = 0; s < size(); s += size_at[s])
    if (size_at[s] > 1 && (best < 0 || size_at[s] < size_at[best])) best = s;
  return best;
}

Coloring OrderedPartition::to_coloring() const {
  std::vector<std::vector<Vertex>> cells;
  for (int s = 0; s < size(); s += size_at[s]) cells.emplace_back(elems.begin() + s, elems.begin() + s + size_at[s]);
  return Coloring::from_cells(size(), std::move(cells));
}

Refiner::Refiner(const ColoredGraph& graph)
    : graph_(&graph),
      count_(graph.size(), 0),
      queued_(graph.size(), 0),
      cell_touched_(graph.size(), 0) {}

OrderedPartition Refiner::initial() const {
  return OrderedPartition::from_coloring(Coloring::from_colors(graph_->colors()));
}

void Refiner::enqueue(int start) {
  if (!queued_[start]) {
    queued_[start] = 1;
    queue_.push_back(start);
  }
}

std::uint64_t Refiner::equitable(OrderedPartition& p) {
  queue_.clear();
  head_ = 0;
  std::uint64_t hash = mix(0, static_cast<std::uint64_t>(p.num_cells));
  for (int s = 0; s < p.size(); s += p.size_at[s]) {
    hash = mix(hash, static_cast<std::uint64_t>(p.size_at[s]));
    enqueue(s);
  }
  return refine(p, hash);
}

std::uint64_t Refiner::individualize(OrderedPartition& p, Vertex v) {
  queue_.clear();
  head_ = 0;
  int s = p.start_of[v];
  int size = p.size_at[s];
  std::uint64_t hash = mix(0x5eedULL, static_cast<std::uint64_t>(s));
  if (size == 1) return hash;
  Vertex front = p.elems[s];
  std::swap(p.elems[s], p.elems[p.pos[v]]);
  p.pos[front] = p.pos[v];
  p.pos[v] = s;
  p.size_at[s] = 1;
  p.size_at[s + 1] = size - 1;
  for (int i = s + 1; i < s + size; ++i) p.start_of[p.elems[i]] = s + 1;
  ++p.num_cells;
  enqueue(s);
  return refine(p, hash);
}

std::uint64_t Refiner::refine(OrderedPartition& p, std::uint64_t hash) {
  const ColoredGraph& g = *graph_;
  std::vector<Vertex> splitter;
  std::vector<std::pair<int, Vertex>> keyed;
  while (head_ < queue_.size()) {
    int w = queue_[head_++];
    queued_[w] = 0;
    if (p.discrete()) continue;
    splitter.assign(p.elems.begin() + w, p.elems.begin() + w + p.size_at[w]);

    for (Vertex x : splitter)
      for (Vertex u : g.neighbors(x)) {
        if (count_[u]++ == 0) touched_vertices_.push_back(u);
        int c = p.start_of[u];
        if (!cell_touched_[c] && p.size_at[c] > 1) {
          cell_touched_[c] = 1;
          touched_cells_.push_back(c);
        }
      }
    std::sort(touched_cells_.begin(), touched_cells_.end());

    for (int c : touched_cells_) {
      cell_touched_[c] = 0;
      int size = p.size_at[c];
      keyed.clear();
      for (int i = c; i < c + size; ++i) keyed.emplace_back(count_[p.elems[i]], p.elems[i]);
      std::sort(keyed.begin(), keyed.end());
      if (keyed.front().first == keyed.back().first) continue;

      bool was_queued = queued_[c];
      int fragments = 0;
      int largest_start = c, largest_size = 0;
      std::vector<std::pair<int, int>> pieces;  // (start, size)
      for (int i = 0; i < size;) {
        int j = i;
        while (j < size && keyed[j].first == keyed[i].first) ++j;
        int fs = c + i;
        pieces.emplace_back(fs, j - i);
        hash = mix(hash, (static_cast<std::uint64_t>(keyed[i].first) << 32) | static_cast<std::uint64_t>(j - i));
        for (int t = i; t < j; ++t) {
          Vertex v = keyed[t].second;
          p.elems[c + t] = v;
          p.pos[v] = c + t;
          p.start_of[v] = fs;
        }
        p.size_at[fs] = j - i;
        if (j - i > largest_size) {
          largest_size = j - i;
          largest_start = fs;
        }
        ++fragments;
        i = j;
      }
      p.num_cells += fragments - 1;
      hash = mix(hash, (static_cast<std::uint64_t>(c) << 20) ^ static_cast<std::uint64_t>(fragments));
      for (auto [fs, fsize] : pieces)
        if (was_queued || fs != largest_start) enqueue(fs);
    }
    touched_cells_.clear();
    for (Vertex u : touched_vertices_) count_[u] = 0;
    touched_vertices_.clear();
  }
  queue_.clear();
  head_ = 0;
  return hash;
}

}  // namespace refix
