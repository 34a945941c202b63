#include "flowclust/embed.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "flowclust/diffusion.hpp"
#include "flowclust/errors.hpp"
#include "flowclust/parallel.hpp"

namespace flowclust {

namespace {

std::vector<NodeSet> draw_samples(const WeightedGraph& graph, const NodeSet& reference, const EmbeddingParams& params,
                                  std::uint64_t rng_seed) {
  if (reference.empty()) throw PreconditionError("reference set is empty");
  if (params.subset_size == 0 || params.subset_size > reference.size()) {
    throw std::invalid_argument("subset size must lie in [1, |R|]");
  }
  if (params.dimensions == 0 || params.samples < params.dimensions) {
    throw std::invalid_argument("need samples >= dimensions >= 1");
  }
  std::mt19937_64 rng(rng_seed);
  std::vector<NodeSet> out;
  out.reserve(params.samples);
  for (std::size_t i = 0; i < params.samples; ++i) {
    std::vector<NodeId> pick;
    std::sample(reference.begin(), reference.end(), std::back_inserter(pick), params.subset_size, rng);
    out.push_back(expand_hops(graph, NodeSet(graph, std::move(pick)), params.hops));
  }
  return out;
}

Embedding finish(IndicatorMatrix matrix, std::vector<std::size_t> kept, std::vector<std::string> warnings,
                 const EmbeddingParams& params) {
  if (matrix.columns.empty()) throw PreconditionError("every sample failed; no embedding");
  Embedding e;
  TruncatedSvd svd = truncated_svd(matrix, params.dimensions);
  e.coordinates = params.rank_transform ? rank_columns(svd.u) : svd.u;
  e.singular_values = svd.singular_values;
  e.indicators = std::move(matrix);
  e.kept_samples = std::move(kept);
  e.warnings = std::move(warnings);
  return e;
}

}  // namespace

void IndicatorMatrix::add_indicator(const NodeSet& set) {
  std::vector<std::pair<NodeId, double>> col;
  col.reserve(set.size());
  for (NodeId v : set) col.emplace_back(v, 1.0);
  columns.push_back(std::move(col));
}

Eigen::MatrixXd IndicatorMatrix::dense() const {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (const auto& [v, value] : columns[j]) x(v, static_cast<Eigen::Index>(j)) = value;
  }
  return x;
}

TruncatedSvd truncated_svd(const IndicatorMatrix& matrix, std::size_t c) {
  const std::size_t n_cols = matrix.columns.size();
  if (c == 0 || c > std::min(matrix.rows, n_cols)) throw std::invalid_argument("c must lie in [1, min(n, N)]");
  std::vector<Eigen::Index> compact(matrix.rows, -1);
  std::vector<NodeId> used;
  for (const auto& col : matrix.columns) {
    for (const auto& [v, value] : col) {
      if (value != 0.0 && compact[v] < 0) {
        compact[v] = 0;
        used.push_back(v);
      }
    }
  }
  std::sort(used.begin(), used.end());
  for (std::size_t i = 0; i < used.size(); ++i) compact[used[i]] = static_cast<Eigen::Index>(i);

  TruncatedSvd out;
  out.u = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(matrix.rows), static_cast<Eigen::Index>(c));
  out.singular_values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(c));
  if (used.empty()) return out;

  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(used.size()), static_cast<Eigen::Index>(n_cols));
  for (std::size_t j = 0; j < n_cols; ++j) {
    for (const auto& [v, value] : matrix.columns[j]) {
      if (value != 0.0) x(compact[v], static_cast<Eigen::Index>(j)) = value;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU);
  // directions beyond the numerical rank are arbitrary, leave them zero
  const Eigen::Index k = std::min<Eigen::Index>(static_cast<Eigen::Index>(c), svd.rank());
  for (Eigen::Index j = 0; j < k; ++j) {
    Eigen::VectorXd col = svd.matrixU().col(j);
    Eigen::Index arg = 0;
    col.cwiseAbs().maxCoeff(&arg);
    if (col(arg) < 0) col = -col;
    for (std::size_t i = 0; i < used.size(); ++i) out.u(used[i], j) = col(static_cast<Eigen::Index>(i));
    out.singular_values(j) = svd.singularValues()(j);
  }
  return out;
}

NodeSet expand_hops(const WeightedGraph& graph, const NodeSet& set, std::size_t hops) {
  std::unordered_set<NodeId> seen(set.begin(), set.end());
  std::vector<NodeId> layer(set.begin(), set.end());
  for (std::size_t h = 0; h < hops && !layer.empty(); ++h) {
    std::vector<NodeId> next;
    for (NodeId u : layer) {
      for (const Neighbor& nb : graph.neighbors(u)) {
        if (seen.insert(nb.node).second) next.push_back(nb.node);
      }
    }
    layer = std::move(next);
  }
  return NodeSet(graph, std::vector<NodeId>(seen.begin(), seen.end()));
}

Eigen::MatrixXd rank_columns(const Eigen::MatrixXd& values) {
  Eigen::MatrixXd ranks(values.rows(), values.cols());
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.rows()));
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return values(a, j) < values(b, j); });
    for (std::size_t r = 0; r < order.size(); ++r) ranks(order[r], j) = static_cast<double>(r);
  }
  return ranks;
}

Embedding flow_coordinates(const WeightedGraph& graph, const NodeSet& reference, const EmbeddingParams& params,
                           std::uint64_t rng_seed) {
  std::vector<NodeSet> samples = draw_samples(graph, reference, params, rng_seed);
  std::vector<NodeSet> improved(samples.size());
  std::vector<std::string> errors(samples.size());
  parallel_for(samples.size(), params.threads, [&](std::size_t i) {
    try {
      improved[i] = improve(graph, samples[i], params.improver, params.delta, params.improve_options).set;
      if (improved[i].empty()) errors[i] = "improver returned an empty set";
    } catch (const std::exception& ex) {
      errors[i] = ex.what();
    }
  });
  IndicatorMatrix matrix;
  matrix.rows = graph.node_count();
  std::vector<std::size_t> kept;
  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!errors[i].empty()) {
      warnings.push_back("sample " + std::to_string(i) + " skipped: " + errors[i]);
      continue;
    }
    matrix.add_indicator(improved[i]);
    kept.push_back(i);
  }
  if (kept.size() < params.dimensions) {
    throw PreconditionError("only " + std::to_string(kept.size()) + " samples succeeded, fewer than dimensions");
  }
  return finish(std::move(matrix), std::move(kept), std::move(warnings), params);
}

Embedding spectral_coordinates(const WeightedGraph& graph, const NodeSet& reference, const EmbeddingParams& params,
                               double alpha, double rho, std::uint64_t rng_seed) {
  std::vector<NodeSet> samples = draw_samples(graph, reference, params, rng_seed);
  IndicatorMatrix matrix;
  matrix.rows = graph.node_count();
  matrix.columns.resize(samples.size());
  std::vector<std::exception_ptr> failures(samples.size());
  parallel_for(samples.size(), params.threads, [&](std::size_t i) {
    SparseScoreVector ppr;
    try {
      ppr = seeded_pagerank(graph, samples[i], alpha, rho);
    } catch (...) {
      failures[i] = std::current_exception();
      return;
    }
    std::vector<double> column(graph.node_count(), -10.0);
    for (const auto& [v, s] : ppr.scores) column[v] = std::max(-10.0, std::log10(s));
    auto& out = matrix.columns[i];
    out.reserve(column.size());
    for (NodeId v = 0; v < column.size(); ++v) out.emplace_back(v, column[v]);
  });
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  std::vector<std::size_t> kept(samples.size());
  std::iota(kept.begin(), kept.end(), 0);
  return finish(std::move(matrix), std::move(kept), {}, params);
}

}  // namespace flowclust
