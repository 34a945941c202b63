#include "flowclust/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "flowclust/errors.hpp"

namespace flowclust {

namespace {

std::vector<std::pair<NodeId, double>> sorted_entries(const std::unordered_map<NodeId, double>& map) {
  std::vector<std::pair<NodeId, double>> out(map.begin(), map.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SparseScoreVector seeded_pagerank(const WeightedGraph& graph, const NodeSet& seeds, double alpha, double rho) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (seeds.empty()) throw PreconditionError("seed set is empty");

  std::unordered_map<NodeId, double> x;
  std::unordered_map<NodeId, double> r;
  std::deque<NodeId> queue;
  std::unordered_map<NodeId, char> queued;
  auto needs_push = [&](NodeId v, double rv) { return rv >= rho * graph.degree(v) && rv > 0.0; };

  const double share = 1.0 / static_cast<double>(seeds.size());
  for (NodeId v : seeds) {
    r[v] = share;
    if (needs_push(v, share)) {
      queue.push_back(v);
      queued[v] = 1;
    }
  }
  SparseScoreVector out;
  out.alpha = alpha;
  out.rho = rho;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    queued[u] = 0;
    double ru = r[u];
    if (!needs_push(u, ru)) continue;
    ++out.pushes;
    x[u] += alpha * ru;
    r[u] = 0.0;
    double du = graph.degree(u);
    if (du <= 0.0) continue;
    double spread = (1.0 - alpha) * ru / du;
    for (const Neighbor& nb : graph.neighbors(u)) {
      double& rv = r[nb.node];
      rv += spread * nb.weight;
      if (!queued[nb.node] && needs_push(nb.node, rv)) {
        queued[nb.node] = 1;
        queue.push_back(nb.node);
      }
    }
  }
  out.scores = sorted_entries(x);
  std::erase_if(r, [](const auto& kv) { return kv.second == 0.0; });
  out.residual = sorted_entries(r);
  return out;
}

SweepResult sweep_cut(const WeightedGraph& graph, const SparseScoreVector& scores) {
  return sweep_cut(graph, scores.scores);
}

SweepResult sweep_cut(const WeightedGraph& graph, const std::vector<std::pair<NodeId, double>>& scores) {
  std::vector<std::pair<NodeId, double>> order;
  for (const auto& [v, s] : scores) {
    if (v >= graph.node_count()) throw InputError("score for unknown node " + std::to_string(v));
    if (s > 0.0) order.emplace_back(v, s);
  }
  if (order.empty()) throw PreconditionError("score vector has empty support");
  auto key = [&](const std::pair<NodeId, double>& e) {
    double d = graph.degree(e.first);
    return d > 0.0 ? e.second / d : -1.0;
  };
  std::stable_sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
    double ka = key(a), kb = key(b);
    if (ka != kb) return ka > kb;
    return a.first < b.first;
  });

  std::unordered_map<NodeId, char> in;
  double cut_value = 0.0, vol = 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_len = 0;
  SweepResult result;
  const double total = graph.total_volume();
  for (std::size_t i = 0; i < order.size(); ++i) {
    NodeId u = order[i].first;
    double inside = 0.0;
    for (const Neighbor& nb : graph.neighbors(u)) {
      if (in.count(nb.node)) inside += nb.weight;
    }
    in[u] = 1;
    cut_value += graph.degree(u) - 2.0 * inside;
    vol += graph.degree(u);
    double denom = std::min(vol, total - vol);
    double phi = denom > 0.0 ? cut_value / denom : std::numeric_limits<double>::quiet_NaN();
    result.prefix_conductance.push_back(phi);
    if (denom > 0.0 && phi < best) {
      best = phi;
      best_len = i + 1;
    }
  }
  if (best_len == 0) throw PreconditionError("no prefix with defined conductance");
  std::vector<NodeId> ids;
  for (std::size_t i = 0; i < best_len; ++i) ids.push_back(order[i].first);
  result.set = NodeSet(graph, std::move(ids));
  result.profile = conductance(graph, result.set);
  return result;
}

}  // namespace flowclust
