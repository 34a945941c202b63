#pragma once

#include <optional>
#include <type_traits>
#include <vector>

#include "flowclust/flow_network.hpp"
#include "flowclust/frac_driver.hpp"
#include "flowclust/graph.hpp"
#include "flowclust/rational.hpp"

namespace flowclust {

enum class Arithmetic { automatic, exact, floating };

struct ImproveOptions {
  DriverMode mode = DriverMode::dinkelbach;
  // Bisection tolerance. When unset, exact runs use exact_eps and
  // floating-point runs use 1e-9.
  std::optional<double> eps;
  // Permit vol(R) > vol(G)/2. MQI then minimizes cut/vol (reported as ncut_prime).
  bool allow_large_seed = false;
  Arithmetic arithmetic = Arithmetic::automatic;
  // Report FlowImprove / LocalFlowImprove results on the smaller-volume side.
  bool small_side = true;
};

template <class Num>
using CapOf = std::conditional_t<std::is_same_v<Num, Rational>, Int128, double>;

// Parameters of one augmented network. For MQI only delta is used;
// FlowImprove has sigma = theta; LocalFlowImprove has sigma = theta + delta_param.
template <class Num>
struct AugmentedSpec {
  Algorithm kind = Algorithm::mqi;
  Num delta{};
  Num theta{};
  Num sigma{};
  NodeSet reference;
};

// Capacity scaling for one network: arcs carry w, delta*d and delta*kappa*d,
// multiplied in exact mode by a common factor so every capacity is an integer.
template <class Num>
class CapacityScale;

template <>
class CapacityScale<Rational> {
 public:
  CapacityScale(const WeightedGraph& graph, const Rational& delta, const Rational& kappa);
  Int128 edge(double w) const;
  Int128 source(double d) const;
  Int128 sink(double d) const;
  Rational value(Int128 cap) const { return Rational(cap, factor_); }

 private:
  Int128 factor_;
  Int128 source_factor_;
  Int128 sink_factor_;
};

template <>
class CapacityScale<double> {
 public:
  CapacityScale(const WeightedGraph&, double delta, double kappa) : delta_(delta), kappa_(kappa) {}
  double edge(double w) const { return w; }
  double source(double d) const { return delta_ * d; }
  double sink(double d) const { return delta_ * kappa_ * d; }
  double value(double cap) const { return cap; }

 private:
  double delta_;
  double kappa_;
};

// Whole-graph network with s -> R arcs (delta d_i), R̄ -> t arcs
// (delta kappa d_i) and every graph edge. Slots 0 and 1 are s and t,
// slot 2 + i belongs to node_of_slot[i].
template <class Num>
struct ExplicitNetwork {
  FlowNetwork<CapOf<Num>> network{2, 0, 1};
  std::vector<NodeId> node_of_slot;
  std::vector<std::uint32_t> slot_of_node;
};

template <class Num>
ExplicitNetwork<Num> build_explicit_network(const WeightedGraph& graph, const NodeSet& reference,
                                            const Num& delta, const Num& kappa,
                                            bool restrict_to_seed_components = true);

// Bottleneck set and bookkeeping for one local solve.
struct LocalFrontier {
  NodeSet bottleneck;
  // graph node of every materialized slot, in slot order (terminals excluded)
  std::vector<NodeId> materialized;
  // nodes added to the bottleneck set after each blocking-flow round that saturated some
  std::vector<std::vector<NodeId>> rounds;
  std::size_t boundary_size = 0;
};

struct LocalOutcome {
  SubproblemOutcome outcome;
  LocalFrontier frontier;
};

// argmin over S ⊆ R of cut(S) - delta vol(S), with R̄ collapsed into the sink.
template <class Num>
SubproblemOutcome mqi_subproblem(const WeightedGraph& graph, const NodeSet& reference, const Num& delta);

// argmin over S ⊆ V of cut(S) - delta (vol(S ∩ R) - kappa vol(S \ R)) on the explicit network.
template <class Num>
SubproblemOutcome fi_subproblem(const WeightedGraph& graph, const NodeSet& reference, const Num& delta,
                                const Num& kappa);

// Same objective with kappa = sigma, solved by growing the network around R
// only where sink arcs saturate. Returns the same minimizer as fi_subproblem.
template <class Num>
LocalOutcome lfi_subproblem(const WeightedGraph& graph, const NodeSet& reference, const Num& delta,
                            const Num& sigma);

template <class Num>
SubproblemOutcome solve_augmented(const WeightedGraph& graph, const AugmentedSpec<Num>& spec);

ImproveResult mqi(const WeightedGraph& graph, const NodeSet& seed, const ImproveOptions& options = {});
ImproveResult flow_improve(const WeightedGraph& graph, const NodeSet& seed, const ImproveOptions& options = {});
ImproveResult local_flow_improve(const WeightedGraph& graph, const NodeSet& seed, const Rational& delta_param,
                                 const ImproveOptions& options = {});
// delta_param is converted to a nearby fraction with denominator <= 1e9 when
// exact arithmetic is used; values that are not close enough fall back to floating point.
ImproveResult local_flow_improve(const WeightedGraph& graph, const NodeSet& seed, double delta_param,
                                 const ImproveOptions& options = {});

// Dispatch by algorithm; delta_param is ignored unless algorithm is local_flow_improve.
ImproveResult improve(const WeightedGraph& graph, const NodeSet& seed, Algorithm algorithm,
                      const Rational& delta_param, const ImproveOptions& options = {});

}  // namespace flowclust
