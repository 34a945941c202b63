#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "flowclust/graph.hpp"
#include "flowclust/improve.hpp"

namespace flowclust {

// Sparse n x N matrix stored by columns; a binary indicator matrix has all values 1.
struct IndicatorMatrix {
  std::size_t rows = 0;
  std::vector<std::vector<std::pair<NodeId, double>>> columns;

  void add_indicator(const NodeSet& set);
  Eigen::MatrixXd dense() const;
};

struct TruncatedSvd {
  // rows x c, columns are left singular vectors; sign fixed so that the
  // largest-magnitude entry of each column is positive
  Eigen::MatrixXd u;
  Eigen::VectorXd singular_values;
};

// Rank-c truncated SVD. All-zero rows are dropped before factorizing; when c
// exceeds the numerical rank, the extra columns and values are zero.
TruncatedSvd truncated_svd(const IndicatorMatrix& matrix, std::size_t c);

struct EmbeddingParams {
  std::size_t samples = 10;      // N
  std::size_t subset_size = 1;   // k
  std::size_t hops = 0;          // d
  std::size_t dimensions = 2;    // c
  Algorithm improver = Algorithm::mqi;
  Rational delta = Rational(1);  // locality parameter for the lfi improver
  ImproveOptions improve_options;
  std::size_t threads = 1;
  // replace each coordinate by the node's rank in that coordinate's sorted order
  bool rank_transform = false;
};

struct Embedding {
  Eigen::MatrixXd coordinates;  // n x c
  Eigen::VectorXd singular_values;
  IndicatorMatrix indicators;
  // sample index of each kept column
  std::vector<std::size_t> kept_samples;
  std::vector<std::string> warnings;
};

// Samples k members of R, grows them by all nodes within d hops, improves the
// result and records its indicator; coordinates are the leading left singular vectors.
Embedding flow_coordinates(const WeightedGraph& graph, const NodeSet& reference, const EmbeddingParams& params,
                           std::uint64_t rng_seed);

// Comparison pipeline: same sampling, but each column is log10 of the seeded
// PageRank vector of the sample, floored at -10 (dense, n rows).
Embedding spectral_coordinates(const WeightedGraph& graph, const NodeSet& reference, const EmbeddingParams& params,
                               double alpha, double rho, std::uint64_t rng_seed);

// Nodes within the given hop distance of the set (the set included).
NodeSet expand_hops(const WeightedGraph& graph, const NodeSet& set, std::size_t hops);

// Per-column ranks (0 = smallest, ties by row index).
Eigen::MatrixXd rank_columns(const Eigen::MatrixXd& values);

}  // namespace flowclust
