#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "flowclust/graph.hpp"

namespace flowclust::testing {

inline WeightedGraph make_graph(std::size_t n, const std::vector<Edge>& edges) {
  return WeightedGraph::from_edges(n, edges);
}

// K4 on 0..3 and K6 on 4..9, bridge 3-4.
inline constexpr NodeId kBridgeA = 3;
inline constexpr NodeId kBridgeB = 4;

inline WeightedGraph dumbbell() {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < 4; ++i)
    for (NodeId j = i + 1; j < 4; ++j) edges.push_back({i, j, 1.0});
  for (NodeId i = 4; i < 10; ++i)
    for (NodeId j = i + 1; j < 10; ++j) edges.push_back({i, j, 1.0});
  edges.push_back({kBridgeA, kBridgeB, 1.0});
  return make_graph(10, edges);
}

inline WeightedGraph cycle(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) edges.push_back({i, static_cast<NodeId>((i + 1) % n), 1.0});
  return make_graph(n, edges);
}

// 4N+8 ring: A, junctions, C, junctions, B, junctions, D, junctions. Around A
// and B the ring segment of N+4 nodes (two junctions on each side) also gets
// every distance-two chord, so region nodes have degree 4, junction nodes 3,
// and C, D nodes 2.
struct ChordedCycle {
  WeightedGraph graph;
  std::vector<NodeId> region_a;
  std::vector<NodeId> region_b;
  std::vector<NodeId> segment_a;
  std::vector<NodeId> segment_b;
};

inline ChordedCycle chorded_cycle(std::size_t N) {
  const std::size_t n = 4 * N + 8;
  // ring order: A[0..N) j1 j2 C[..] j3 j4 B[..] j5 j6 D[..] j7 j8
  ChordedCycle out;
  auto at = [&](std::size_t pos) { return static_cast<NodeId>(pos % n); };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({at(i), at(i + 1), 1.0});
  const std::size_t a_start = 0;
  const std::size_t b_start = 2 * N + 4;
  auto chord_segment = [&](std::size_t first_region_pos, std::vector<NodeId>& region, std::vector<NodeId>& segment) {
    std::size_t seg_start = first_region_pos + n - 2;
    for (std::size_t k = 0; k < N + 4; ++k) segment.push_back(at(seg_start + k));
    for (std::size_t k = 0; k < N; ++k) region.push_back(at(first_region_pos + k));
    for (std::size_t k = 0; k + 2 < N + 4; ++k) edges.push_back({segment[k], segment[k + 2], 1.0});
    std::sort(segment.begin(), segment.end());
  };
  chord_segment(a_start, out.region_a, out.segment_a);
  chord_segment(b_start, out.region_b, out.segment_b);
  out.graph = make_graph(n, edges);
  return out;
}

// count cliques of the given size joined in a ring by single edges:
// last node of clique i to first node of clique i+1.
inline WeightedGraph ring_of_cliques(std::size_t count, std::size_t size) {
  std::vector<Edge> edges;
  edges.reserve(count * (size * (size - 1) / 2 + 1));
  for (std::size_t c = 0; c < count; ++c) {
    NodeId base = static_cast<NodeId>(c * size);
    for (NodeId i = 0; i < size; ++i)
      for (NodeId j = i + 1; j < size; ++j) edges.push_back({base + i, base + j, 1.0});
    NodeId next = static_cast<NodeId>(((c + 1) % count) * size);
    edges.push_back({static_cast<NodeId>(base + size - 1), next, 1.0});
  }
  return make_graph(count * size, edges);
}

inline std::vector<NodeId> clique_members(std::size_t index, std::size_t size) {
  std::vector<NodeId> ids(size);
  std::iota(ids.begin(), ids.end(), static_cast<NodeId>(index * size));
  return ids;
}

// Random spanning tree plus extra edges, integer weights in [1, max_weight].
inline std::vector<Edge> random_connected_edges(std::mt19937_64& rng, std::size_t n, double extra_p, int max_weight) {
  std::uniform_int_distribution<int> weight(1, max_weight);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<char>> present(n, std::vector<char>(n, 0));
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    NodeId u = order[i], v = order[pick(rng)];
    present[u][v] = present[v][u] = 1;
    edges.push_back({u, v, static_cast<double>(weight(rng))});
  }
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (!present[u][v] && coin(rng) < extra_p) edges.push_back({u, v, static_cast<double>(weight(rng))});
  return edges;
}

// Random seed with vol(R) <= vol(G)/2: a BFS-ish grown set or a scattered one.
inline std::vector<NodeId> random_seed(std::mt19937_64& rng, const WeightedGraph& g) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const std::size_t n = g.node_count();
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<NodeId> seed;
  std::vector<char> in(n, 0);
  double vol = 0.0;
  bool grow = coin(rng) < 0.6;
  std::size_t target = 1 + static_cast<std::size_t>(coin(rng) * (n / 2));
  NodeId first = order[0];
  seed.push_back(first);
  in[first] = 1;
  vol += g.degree(first);
  for (std::size_t step = 1; step < n && seed.size() < target; ++step) {
    NodeId cand = order[step];
    if (grow) {
      std::vector<NodeId> frontier;
      for (NodeId s : seed)
        for (const Neighbor& nb : g.neighbors(s))
          if (!in[nb.node]) frontier.push_back(nb.node);
      if (frontier.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, frontier.size() - 1);
      cand = frontier[pick(rng)];
    }
    if (in[cand]) continue;
    if (vol + g.degree(cand) > g.total_volume() / 2.0) break;
    in[cand] = 1;
    seed.push_back(cand);
    vol += g.degree(cand);
  }
  return seed;
}

}  // namespace flowclust::testing
