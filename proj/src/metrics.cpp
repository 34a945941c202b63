#include "flowclust/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace flowclust {

double cut(const WeightedGraph& graph, const NodeSet& set) {
  double total = 0.0;
  for (NodeId u : set) {
    for (const Neighbor& nb : graph.neighbors(u)) {
      if (!set.contains(nb.node)) total += nb.weight;
    }
  }
  return total;
}

CutProfile conductance(const WeightedGraph& graph, const NodeSet& set) {
  CutProfile p;
  p.volume = set.volume();
  p.complement_volume = graph.total_volume() - p.volume;
  p.size = set.size();
  if (set.empty() || p.volume <= 0.0 || p.complement_volume <= 0.0) {
    throw std::domain_error("undefined conductance");
  }
  p.cut = cut(graph, set);
  p.conductance = p.cut / std::min(p.volume, p.complement_volume);
  return p;
}

double overlap_volume(const WeightedGraph& graph, const NodeSet& set, const NodeSet& reference) {
  double vol = 0.0;
  auto a = set.begin();
  auto b = reference.begin();
  while (a != set.end() && b != reference.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      vol += graph.degree(*a);
      ++a;
      ++b;
    }
  }
  return vol;
}

double rvol(const WeightedGraph& graph, const NodeSet& set, const NodeSet& reference, double kappa) {
  double inside = overlap_volume(graph, set, reference);
  return inside - kappa * (set.volume() - inside);
}

AuxMetrics aux_metrics(const WeightedGraph& graph, const NodeSet& set) {
  CutProfile p = conductance(graph, set);
  double size = static_cast<double>(set.size());
  double other = static_cast<double>(graph.node_count() - set.size());
  AuxMetrics m;
  m.ncut = p.cut / p.volume + p.cut / p.complement_volume;
  m.ncut_prime = p.cut / p.volume;
  m.expansion = p.cut / std::min(size, other);
  m.sparsity = p.cut / (size * other);
  m.ratio_cut = p.cut / size;
  return m;
}

NodeSet boundary(const WeightedGraph& graph, const NodeSet& set) {
  std::vector<NodeId> out;
  for (NodeId u : set) {
    for (const Neighbor& nb : graph.neighbors(u)) {
      if (!set.contains(nb.node)) out.push_back(nb.node);
    }
  }
  return NodeSet(graph, std::move(out));
}

}  // namespace flowclust
