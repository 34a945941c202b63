#include "flowclust/improve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "flowclust/errors.hpp"
#include "flowclust/metrics.hpp"

namespace flowclust {

namespace {

using Slot = std::uint32_t;
constexpr Slot kSource = 0;
constexpr Slot kSink = 1;
constexpr Slot kNoSlot = 0xffffffffu;

Int128 as_int(double x) { return static_cast<Int128>(std::llround(x)); }

NodeSet collect(const WeightedGraph& graph, const std::vector<char>& mask, const std::vector<NodeId>& node_of_slot) {
  std::vector<NodeId> ids;
  for (Slot s = 2; s < mask.size(); ++s) {
    if (mask[s]) ids.push_back(node_of_slot[s - 2]);
  }
  return NodeSet(graph, std::move(ids));
}

// Lazily grown network for LocalFlowImprove. Slots exist only for s, t, R,
// the bottleneck set B and the boundary of R ∪ B.
template <class Num>
class LocalNetwork {
 public:
  using Cap = CapOf<Num>;

  LocalNetwork(const WeightedGraph& graph, const NodeSet& reference, const Num& delta, const Num& sigma)
      : graph_(graph), reference_(reference), scale_(graph, delta, sigma) {
    for (NodeId v : reference_) {
      Slot s = ensure(v);
      net_.add_arc(kSource, s, scale_.source(graph_.degree(v)));
    }
    const Slot seed_end = static_cast<Slot>(2 + reference_.size());
    for (Slot s = 2; s < seed_end; ++s) expand(s);
  }

  LocalOutcome solve() {
    std::vector<NodeId> bottleneck;
    LocalFrontier frontier;
    while (net_.blocking_flow() > Cap{0}) {
      std::vector<Slot> saturated;
      std::vector<Slot> open;
      for (Slot s : boundary_) {
        if (net_.saturated(sink_arc_[s - 2])) {
          saturated.push_back(s);
        } else {
          open.push_back(s);
        }
      }
      if (saturated.empty()) continue;
      boundary_ = std::move(open);
      std::vector<NodeId> round;
      for (Slot s : saturated) {
        round.push_back(node_of_[s - 2]);
        expand(s);
      }
      bottleneck.insert(bottleneck.end(), round.begin(), round.end());
      frontier.rounds.push_back(std::move(round));
    }
    LocalOutcome out;
    out.outcome.set = collect(graph_, net_.source_side_mask(), node_of_);
    out.outcome.stats = net_.stats();
    out.outcome.nodes_touched = node_of_.size();
    frontier.bottleneck = NodeSet(graph_, std::move(bottleneck));
    frontier.materialized = node_of_;
    frontier.boundary_size = boundary_.size();
    out.frontier = std::move(frontier);
    return out;
  }

 private:
  Slot ensure(NodeId v) {
    auto [it, inserted] = slot_of_.emplace(v, static_cast<Slot>(net_.node_count()));
    if (!inserted) return it->second;
    Slot s = net_.add_node();
    node_of_.push_back(v);
    expanded_.push_back(0);
    sink_arc_.emplace_back();
    if (!reference_.contains(v)) {
      sink_arc_.back() = net_.add_arc(s, kSink, scale_.sink(graph_.degree(v)));
      boundary_.push_back(s);
    }
    return s;
  }

  void expand(Slot s) {
    expanded_[s - 2] = 1;
    NodeId v = node_of_[s - 2];
    for (const Neighbor& nb : graph_.neighbors(v)) {
      Slot w = ensure(nb.node);
      if (!expanded_[w - 2]) net_.add_edge(s, w, scale_.edge(nb.weight));
    }
  }

  const WeightedGraph& graph_;
  const NodeSet& reference_;
  CapacityScale<Num> scale_;
  FlowNetwork<Cap> net_{2, kSource, kSink};
  std::unordered_map<NodeId, Slot> slot_of_;
  std::vector<NodeId> node_of_;
  std::vector<char> expanded_;
  std::vector<typename FlowNetwork<Cap>::ArcRef> sink_arc_;
  std::vector<Slot> boundary_;
};

template <class Num>
Num to_num(const Rational& r) {
  if constexpr (std::is_same_v<Num, Rational>) {
    return r;
  } else {
    return r.to_double();
  }
}

template <class Num>
Num weight_num(double w) {
  return RatioArith<Num>::from_weight(w);
}

void check_seed(const WeightedGraph& graph, const NodeSet& seed, const ImproveOptions& options) {
  if (seed.empty()) throw PreconditionError("seed set is empty");
  if (seed.volume() <= 0.0) throw PreconditionError("seed set has zero volume");
  if (!options.allow_large_seed && seed.volume() > graph.total_volume() / 2.0) {
    throw PreconditionError("seed volume " + std::to_string(seed.volume()) + " exceeds half the graph volume " +
                            std::to_string(graph.total_volume() / 2.0));
  }
}

bool use_exact(const WeightedGraph& graph, const ImproveOptions& options) {
  switch (options.arithmetic) {
    case Arithmetic::exact:
      if (!graph.integer_weights()) throw std::invalid_argument("exact arithmetic needs integer edge weights");
      return true;
    case Arithmetic::floating:
      return false;
    case Arithmetic::automatic:
      break;
  }
  return graph.integer_weights();
}

template <class Num>
ImproveResult drive(const WeightedGraph& graph, const RatioObjective<Num>& objective, const Subsolver<Num>& solve,
                    const ImproveOptions& options, const Rational& delta_param) {
  if (options.mode == DriverMode::dinkelbach) return dinkelbach(graph, objective, solve);
  Num eps{};
  if constexpr (std::is_same_v<Num, Rational>) {
    eps = options.eps ? Rational::approximate(*options.eps, 1'000'000'000'000LL)
                      : exact_eps(graph, objective.algorithm, objective.reference, delta_param);
    if (eps.is_zero()) throw std::invalid_argument("bisection eps too small");
  } else {
    (void)delta_param;
    eps = options.eps ? *options.eps : 1e-9;
  }
  return bisection(graph, objective, solve, eps);
}

template <class Num>
ImproveResult run_mqi(const WeightedGraph& graph, const NodeSet& seed, const ImproveOptions& options) {
  RatioObjective<Num> objective;
  objective.algorithm = Algorithm::mqi;
  objective.reference = seed;
  Subsolver<Num> solve = [&](const Num& delta) { return mqi_subproblem(graph, seed, delta); };
  return drive(graph, objective, solve, options, Rational(0));
}

template <class Num>
ImproveResult run_flow(const WeightedGraph& graph, const NodeSet& seed, const Rational* delta_param,
                       const ImproveOptions& options) {
  Num vol_r = weight_num<Num>(seed.volume());
  Num vol_rbar = weight_num<Num>(graph.total_volume() - seed.volume());
  if (!(vol_rbar > Num{0})) throw PreconditionError("seed covers the whole graph volume");
  Num theta = vol_r / vol_rbar;
  RatioObjective<Num> objective;
  objective.reference = seed;
  Subsolver<Num> solve;
  std::vector<std::string> warnings;
  if (delta_param == nullptr) {
    objective.algorithm = Algorithm::flow_improve;
    objective.kappa = theta;
    if (graph.component_count() > 1) warnings.push_back("graph is disconnected");
    solve = [&](const Num& delta) { return fi_subproblem(graph, seed, delta, theta); };
  } else {
    objective.algorithm = Algorithm::local_flow_improve;
    objective.kappa = theta + to_num<Num>(*delta_param);
    Num sigma = objective.kappa;
    solve = [&graph, &seed, sigma](const Num& delta) { return lfi_subproblem(graph, seed, delta, sigma).outcome; };
  }
  ImproveResult result = drive(graph, objective, solve, options, delta_param ? *delta_param : Rational(0));
  result.objective_kind = "relative_conductance";
  result.warnings.insert(result.warnings.begin(), warnings.begin(), warnings.end());
  if (options.small_side && result.set.volume() > graph.total_volume() - result.set.volume()) {
    result.set = complement(graph, result.set);
    result.flipped = true;
  }
  return result;
}

}  // namespace

CapacityScale<Rational>::CapacityScale(const WeightedGraph& graph, const Rational& delta, const Rational& kappa) {
  if (delta.sign() < 0 || kappa.sign() < 0) throw std::invalid_argument("negative network parameter");
  factor_ = checked_mul(delta.den(), kappa.den());
  source_factor_ = checked_mul(delta.num(), kappa.den());
  sink_factor_ = checked_mul(delta.num(), kappa.num());
  // Every flow value and residual stays below vol(G) times the largest factor.
  Int128 largest = std::max({factor_, source_factor_, sink_factor_});
  checked_mul(checked_mul(as_int(graph.total_volume()) + 1, largest), 64);
}

Int128 CapacityScale<Rational>::edge(double w) const { return as_int(w) * factor_; }
Int128 CapacityScale<Rational>::source(double d) const { return as_int(d) * source_factor_; }
Int128 CapacityScale<Rational>::sink(double d) const { return as_int(d) * sink_factor_; }

template <class Num>
ExplicitNetwork<Num> build_explicit_network(const WeightedGraph& graph, const NodeSet& reference, const Num& delta,
                                            const Num& kappa, bool restrict_to_seed_components) {
  CapacityScale<Num> scale(graph, delta, kappa);
  ExplicitNetwork<Num> out;
  std::vector<char> keep(graph.node_count(), 1);
  if (restrict_to_seed_components && graph.component_count() > 1) {
    // Components without seed nodes only carry sink arcs and never join the minimal source side.
    const auto& comp = graph.components();
    std::vector<char> wanted(graph.component_count(), 0);
    for (NodeId v : reference) wanted[comp[v]] = 1;
    for (NodeId v = 0; v < graph.node_count(); ++v) keep[v] = wanted[comp[v]];
  }
  out.slot_of_node.assign(graph.node_count(), kNoSlot);
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    if (!keep[v]) continue;
    out.slot_of_node[v] = out.network.add_node();
    out.node_of_slot.push_back(v);
  }
  for (NodeId v : out.node_of_slot) {
    Slot s = out.slot_of_node[v];
    if (reference.contains(v)) {
      out.network.add_arc(kSource, s, scale.source(graph.degree(v)));
    } else {
      out.network.add_arc(s, kSink, scale.sink(graph.degree(v)));
    }
    for (const Neighbor& nb : graph.neighbors(v)) {
      if (v < nb.node) out.network.add_edge(s, out.slot_of_node[nb.node], scale.edge(nb.weight));
    }
  }
  return out;
}

template <class Num>
SubproblemOutcome mqi_subproblem(const WeightedGraph& graph, const NodeSet& reference, const Num& delta) {
  if (reference.empty()) throw PreconditionError("seed set is empty");
  CapacityScale<Num> scale(graph, delta, Num{1});
  using Cap = CapOf<Num>;
  FlowNetwork<Cap> net(2 + reference.size(), kSource, kSink);
  const auto& members = reference.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    NodeId v = members[i];
    Slot s = static_cast<Slot>(2 + i);
    net.add_arc(kSource, s, scale.source(graph.degree(v)));
    double to_sink = 0.0;
    for (const Neighbor& nb : graph.neighbors(v)) {
      auto it = std::lower_bound(members.begin(), members.end(), nb.node);
      if (it != members.end() && *it == nb.node) {
        if (v < nb.node) net.add_edge(s, static_cast<Slot>(2 + (it - members.begin())), scale.edge(nb.weight));
      } else {
        to_sink += nb.weight;
      }
    }
    if (to_sink > 0.0) net.add_edge(s, kSink, scale.edge(to_sink));
  }
  net.max_flow();
  SubproblemOutcome out;
  out.set = collect(graph, net.source_side_mask(), members);
  out.stats = net.stats();
  out.nodes_touched = members.size();
  return out;
}

template <class Num>
SubproblemOutcome fi_subproblem(const WeightedGraph& graph, const NodeSet& reference, const Num& delta,
                                const Num& kappa) {
  ExplicitNetwork<Num> explicit_net = build_explicit_network(graph, reference, delta, kappa);
  explicit_net.network.max_flow_push_relabel();
  SubproblemOutcome out;
  out.set = collect(graph, explicit_net.network.source_side_mask(), explicit_net.node_of_slot);
  out.stats = explicit_net.network.stats();
  out.nodes_touched = explicit_net.node_of_slot.size();
  return out;
}

template <class Num>
LocalOutcome lfi_subproblem(const WeightedGraph& graph, const NodeSet& reference, const Num& delta,
                            const Num& sigma) {
  if (reference.empty()) throw PreconditionError("seed set is empty");
  LocalNetwork<Num> net(graph, reference, delta, sigma);
  return net.solve();
}

template <class Num>
SubproblemOutcome solve_augmented(const WeightedGraph& graph, const AugmentedSpec<Num>& spec) {
  switch (spec.kind) {
    case Algorithm::mqi:
      return mqi_subproblem(graph, spec.reference, spec.delta);
    case Algorithm::flow_improve:
      return fi_subproblem(graph, spec.reference, spec.delta, spec.theta);
    case Algorithm::local_flow_improve:
      return lfi_subproblem(graph, spec.reference, spec.delta, spec.sigma).outcome;
  }
  throw std::invalid_argument("unknown algorithm");
}

ImproveResult mqi(const WeightedGraph& graph, const NodeSet& seed, const ImproveOptions& options) {
  check_seed(graph, seed, options);
  ImproveResult result =
      use_exact(graph, options) ? run_mqi<Rational>(graph, seed, options) : run_mqi<double>(graph, seed, options);
  if (seed.volume() > graph.total_volume() / 2.0) result.objective_kind = "ncut_prime";
  return result;
}

ImproveResult flow_improve(const WeightedGraph& graph, const NodeSet& seed, const ImproveOptions& options) {
  check_seed(graph, seed, options);
  return use_exact(graph, options) ? run_flow<Rational>(graph, seed, nullptr, options)
                                   : run_flow<double>(graph, seed, nullptr, options);
}

ImproveResult local_flow_improve(const WeightedGraph& graph, const NodeSet& seed, const Rational& delta_param,
                                 const ImproveOptions& options) {
  if (delta_param.sign() < 0) throw std::invalid_argument("delta must be non-negative");
  check_seed(graph, seed, options);
  return use_exact(graph, options) ? run_flow<Rational>(graph, seed, &delta_param, options)
                                   : run_flow<double>(graph, seed, &delta_param, options);
}

ImproveResult local_flow_improve(const WeightedGraph& graph, const NodeSet& seed, double delta_param,
                                 const ImproveOptions& options) {
  if (!(delta_param >= 0.0) || !std::isfinite(delta_param)) throw std::invalid_argument("delta must be non-negative");
  Rational approx = Rational::approximate(delta_param, 1'000'000'000LL);
  if (std::fabs(approx.to_double() - delta_param) <= 1e-15 * std::max(1.0, delta_param)) {
    return local_flow_improve(graph, seed, approx, options);
  }
  if (options.arithmetic == Arithmetic::exact) {
    throw std::invalid_argument("delta has no small exact fraction; pass it as a Rational");
  }
  ImproveOptions floating = options;
  floating.arithmetic = Arithmetic::floating;
  check_seed(graph, seed, options);
  // the Rational only carries the value here
  Rational carrier = Rational::approximate(delta_param, 1'000'000'000'000'000LL);
  ImproveResult result = run_flow<double>(graph, seed, &carrier, floating);
  result.warnings.push_back("delta is not a simple fraction; using floating point");
  return result;
}

ImproveResult improve(const WeightedGraph& graph, const NodeSet& seed, Algorithm algorithm,
                      const Rational& delta_param, const ImproveOptions& options) {
  switch (algorithm) {
    case Algorithm::mqi:
      return mqi(graph, seed, options);
    case Algorithm::flow_improve:
      return flow_improve(graph, seed, options);
    case Algorithm::local_flow_improve:
      return local_flow_improve(graph, seed, delta_param, options);
  }
  throw std::invalid_argument("unknown algorithm");
}

#define FLOWCLUST_INSTANTIATE(Num)                                                                              \
  template ExplicitNetwork<Num> build_explicit_network<Num>(const WeightedGraph&, const NodeSet&, const Num&,   \
                                                            const Num&, bool);                                   \
  template SubproblemOutcome mqi_subproblem<Num>(const WeightedGraph&, const NodeSet&, const Num&);            \
  template SubproblemOutcome fi_subproblem<Num>(const WeightedGraph&, const NodeSet&, const Num&, const Num&); \
  template LocalOutcome lfi_subproblem<Num>(const WeightedGraph&, const NodeSet&, const Num&, const Num&);     \
  template SubproblemOutcome solve_augmented<Num>(const WeightedGraph&, const AugmentedSpec<Num>&);

FLOWCLUST_INSTANTIATE(Rational)
FLOWCLUST_INSTANTIATE(double)

}  // namespace flowclust
