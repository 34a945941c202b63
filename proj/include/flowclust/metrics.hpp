#pragma once

#include "flowclust/graph.hpp"

namespace flowclust {

struct CutProfile {
  double cut = 0.0;
  double volume = 0.0;
  double complement_volume = 0.0;
  double conductance = 0.0;
  std::size_t size = 0;
};

struct AuxMetrics {
  double ncut = 0.0;
  double ncut_prime = 0.0;
  double expansion = 0.0;
  double sparsity = 0.0;
  double ratio_cut = 0.0;
};

double cut(const WeightedGraph& graph, const NodeSet& set);
// Throws std::domain_error("undefined conductance") for empty or full-volume sets.
CutProfile conductance(const WeightedGraph& graph, const NodeSet& set);
// vol(S ∩ R) - kappa * vol(S \ R)
double rvol(const WeightedGraph& graph, const NodeSet& set, const NodeSet& reference, double kappa);
AuxMetrics aux_metrics(const WeightedGraph& graph, const NodeSet& set);
NodeSet boundary(const WeightedGraph& graph, const NodeSet& set);

// Volume of set ∩ reference.
double overlap_volume(const WeightedGraph& graph, const NodeSet& set, const NodeSet& reference);

}  // namespace flowclust
