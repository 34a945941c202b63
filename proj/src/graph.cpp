#include "flowclust/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flowclust/errors.hpp"

namespace flowclust {

WeightedGraph WeightedGraph::from_edges(std::size_t node_count, std::span<const Edge> edges,
                                        const BuildOptions& options, BuildStats* stats) {
  if (node_count >= std::size_t{0xffffffffu}) throw InputError("too many nodes");
  BuildStats local;
  WeightedGraph g;
  g.degrees_.assign(node_count, 0.0);

  std::vector<Edge> directed;
  directed.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    if (e.u >= node_count || e.v >= node_count) {
      throw InputError("edge endpoint out of range: " + std::to_string(std::max(e.u, e.v)));
    }
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      throw InputError("invalid edge weight " + std::to_string(e.weight) + " on edge " +
                       std::to_string(e.u) + "-" + std::to_string(e.v));
    }
    if (e.u == e.v) {
      ++local.self_loops;
      if (options.fold_self_loops) g.degrees_[e.u] += e.weight;
      continue;
    }
    directed.push_back({e.u, e.v, e.weight});
    directed.push_back({e.v, e.u, e.weight});
  }
  std::sort(directed.begin(), directed.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });

  g.offsets_.assign(node_count + 1, 0);
  g.neighbors_.reserve(directed.size());
  for (std::size_t i = 0; i < directed.size();) {
    std::size_t j = i;
    double w = 0.0;
    while (j < directed.size() && directed[j].u == directed[i].u && directed[j].v == directed[i].v) {
      w += directed[j].weight;
      ++j;
    }
    local.merged_duplicates += j - i - 1;
    g.neighbors_.push_back({directed[i].v, w});
    ++g.offsets_[directed[i].u + 1];
    g.degrees_[directed[i].u] += w;
    i = j;
  }
  local.merged_duplicates /= 2;
  for (std::size_t v = 0; v < node_count; ++v) g.offsets_[v + 1] += g.offsets_[v];

  g.total_volume_ = 0.0;
  for (double d : g.degrees_) g.total_volume_ += d;
  g.integer_weights_ = g.total_volume_ < 9.0e15;
  for (const Neighbor& nb : g.neighbors_) {
    if (nb.weight != std::floor(nb.weight)) {
      g.integer_weights_ = false;
      break;
    }
  }
  for (double d : g.degrees_) {
    if (d != std::floor(d)) g.integer_weights_ = false;
  }
  if (stats) *stats = local;
  return g;
}

void WeightedGraph::set_labels(std::vector<std::uint64_t> labels) {
  if (!labels.empty() && labels.size() != node_count()) {
    throw InputError("label map size does not match node count");
  }
  labels_ = std::move(labels);
}

const std::vector<std::uint32_t>& WeightedGraph::components() const {
  std::call_once(components_->once, [this] {
    auto& label = components_->label;
    const std::uint32_t unset = 0xffffffffu;
    label.assign(node_count(), unset);
    std::uint32_t next = 0;
    std::vector<NodeId> stack;
    for (NodeId start = 0; start < node_count(); ++start) {
      if (label[start] != unset) continue;
      label[start] = next;
      stack.push_back(start);
      while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (const Neighbor& nb : neighbors(u)) {
          if (label[nb.node] == unset) {
            label[nb.node] = next;
            stack.push_back(nb.node);
          }
        }
      }
      ++next;
    }
    components_->count = next;
  });
  return components_->label;
}

std::size_t WeightedGraph::component_count() const {
  components();
  return components_->count;
}

NodeSet::NodeSet(const WeightedGraph& graph, std::vector<NodeId> ids) : members_(std::move(ids)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= graph.node_count()) {
    throw InputError("node id " + std::to_string(members_.back()) + " out of range (graph has " +
                     std::to_string(graph.node_count()) + " nodes)");
  }
  for (NodeId v : members_) volume_ += graph.degree(v);
}

NodeSet NodeSet::all(const WeightedGraph& graph) {
  std::vector<NodeId> ids(graph.node_count());
  for (NodeId v = 0; v < ids.size(); ++v) ids[v] = v;
  return NodeSet(graph, std::move(ids));
}

bool NodeSet::contains(NodeId v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

NodeSet complement(const WeightedGraph& graph, const NodeSet& set) {
  std::vector<NodeId> out;
  out.reserve(graph.node_count() - set.size());
  auto it = set.begin();
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    if (it != set.end() && *it == v) {
      ++it;
    } else {
      out.push_back(v);
    }
  }
  return NodeSet(graph, std::move(out));
}

NodeSet set_union(const WeightedGraph& graph, const NodeSet& a, const NodeSet& b) {
  std::vector<NodeId> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return NodeSet(graph, std::move(out));
}

NodeSet set_intersection(const WeightedGraph& graph, const NodeSet& a, const NodeSet& b) {
  std::vector<NodeId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return NodeSet(graph, std::move(out));
}

}  // namespace flowclust
