#pragma once

#include <utility>
#include <vector>

#include "flowclust/graph.hpp"
#include "flowclust/metrics.hpp"

namespace flowclust {

struct SparseScoreVector {
  // (node, score) pairs sorted by node id
  std::vector<std::pair<NodeId, double>> scores;
  // leftover residual mass per node, sorted by node id
  std::vector<std::pair<NodeId, double>> residual;
  double alpha = 0.0;
  double rho = 0.0;
  std::size_t pushes = 0;
};

// Approximate seeded PageRank by push: x = alpha s + (1 - alpha) A D^-1 x with
// s uniform on the seeds. Pushes while some node has r(v) >= rho d(v).
SparseScoreVector seeded_pagerank(const WeightedGraph& graph, const NodeSet& seeds, double alpha, double rho);

struct SweepResult {
  NodeSet set;
  CutProfile profile;
  // conductance of every scored prefix, in sweep order (NaN where undefined)
  std::vector<double> prefix_conductance;
};

// Orders the support by score / degree (descending, ties by node id) and
// returns the prefix of smallest conductance.
SweepResult sweep_cut(const WeightedGraph& graph, const SparseScoreVector& scores);
SweepResult sweep_cut(const WeightedGraph& graph, const std::vector<std::pair<NodeId, double>>& scores);

}  // namespace flowclust
