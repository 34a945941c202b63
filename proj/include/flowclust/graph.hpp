#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace flowclust {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u;
  NodeId v;
  double weight = 1.0;
};

struct Neighbor {
  NodeId node;
  double weight;
};

struct BuildOptions {
  // Keep self-loop weight as part of the node degree instead of dropping it.
  bool fold_self_loops = false;
};

struct BuildStats {
  std::size_t self_loops = 0;
  std::size_t merged_duplicates = 0;
};

// Immutable undirected graph in compressed adjacency form.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  // Duplicate edges are merged by summing weights; self-loops are dropped
  // (or folded into the degree). Throws InputError on bad weights or ids.
  static WeightedGraph from_edges(std::size_t node_count, std::span<const Edge> edges,
                                  const BuildOptions& options = {}, BuildStats* stats = nullptr);

  std::size_t node_count() const { return degrees_.size(); }
  std::size_t edge_count() const { return neighbors_.size() / 2; }
  double total_volume() const { return total_volume_; }
  double degree(NodeId v) const { return degrees_[v]; }
  const std::vector<double>& degrees() const { return degrees_; }

  std::span<const Neighbor> neighbors(NodeId v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }

  // True when every weight and degree is integral and the total volume
  // stays below 2^53, so exact arithmetic can be used.
  bool integer_weights() const { return integer_weights_; }

  // Original ids for relabeled inputs; empty means ids were used as given.
  const std::vector<std::uint64_t>& labels() const { return labels_; }
  std::uint64_t label(NodeId v) const { return labels_.empty() ? v : labels_[v]; }
  void set_labels(std::vector<std::uint64_t> labels);

  // Connected component id per node, computed on first use.
  const std::vector<std::uint32_t>& components() const;
  std::size_t component_count() const;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> neighbors_;
  std::vector<double> degrees_;
  double total_volume_ = 0.0;
  bool integer_weights_ = true;
  std::vector<std::uint64_t> labels_;

  struct ComponentCache {
    std::once_flag once;
    std::vector<std::uint32_t> label;
    std::size_t count = 0;
  };
  std::shared_ptr<ComponentCache> components_ = std::make_shared<ComponentCache>();
};

// Sorted set of distinct node ids with cached volume.
class NodeSet {
 public:
  NodeSet() = default;
  // Sorts and removes duplicates; throws InputError for ids out of range.
  NodeSet(const WeightedGraph& graph, std::vector<NodeId> ids);

  static NodeSet all(const WeightedGraph& graph);

  const std::vector<NodeId>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  double volume() const { return volume_; }
  bool contains(NodeId v) const;

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const NodeSet& a, const NodeSet& b) { return a.members_ == b.members_; }

 private:
  std::vector<NodeId> members_;
  double volume_ = 0.0;
};

NodeSet complement(const WeightedGraph& graph, const NodeSet& set);
NodeSet set_union(const WeightedGraph& graph, const NodeSet& a, const NodeSet& b);
NodeSet set_intersection(const WeightedGraph& graph, const NodeSet& a, const NodeSet& b);

}  // namespace flowclust
