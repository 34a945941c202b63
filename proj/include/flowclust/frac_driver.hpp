#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "flowclust/flow_network.hpp"
#include "flowclust/graph.hpp"
#include "flowclust/rational.hpp"

namespace flowclust {

enum class Algorithm { mqi, flow_improve, local_flow_improve };
enum class DriverMode { dinkelbach, bisection };

std::string algorithm_name(Algorithm algorithm);
std::string mode_name(DriverMode mode);

// Arithmetic used by the drivers: Rational is exact, double uses relative tolerances.
template <class Num>
struct RatioArith;

template <>
struct RatioArith<Rational> {
  static Rational from_weight(double w) { return Rational(static_cast<long long>(std::llround(w))); }
  static bool less(const Rational& a, const Rational& b) { return a < b; }
  static bool same(const Rational& a, const Rational& b) { return a == b; }
  static double to_double(const Rational& a) { return a.to_double(); }
  static std::string str(const Rational& a) { return a.str(); }
};

template <>
struct RatioArith<double> {
  static constexpr double strict = 1e-12;
  static constexpr double equal = 1e-9;
  static double from_weight(double w) { return w; }
  static bool less(double a, double b) { return a < b - strict * std::fabs(b); }
  static bool same(double a, double b) {
    return std::fabs(a - b) <= equal * std::fmax(std::fabs(a), std::fabs(b));
  }
  static double to_double(double a) { return a; }
  static std::string str(double a) { return std::to_string(a); }
};

// min cut(S) / g(S) over feasible S with g(S) > 0, where g is
//   vol(S)                         for MQI (S restricted to the reference),
//   vol(S ∩ R) - kappa vol(S \ R)  for FlowImprove (kappa = theta) and LocalFlowImprove (kappa = sigma).
template <class Num>
struct RatioObjective {
  Algorithm algorithm = Algorithm::mqi;
  NodeSet reference;
  Num kappa{};

  Num cut(const WeightedGraph& graph, const NodeSet& set) const;
  Num denominator(const WeightedGraph& graph, const NodeSet& set) const;
};

struct TraceEntry {
  double delta = 0.0;
  std::string delta_exact;
  double cut = 0.0;
  double denominator = 0.0;
  std::size_t arcs_touched = 0;
  std::size_t nodes_touched = 0;
};

struct ImproveResult {
  Algorithm algorithm = Algorithm::mqi;
  DriverMode mode = DriverMode::dinkelbach;
  NodeSet set;
  // final ratio cut(S)/g(S) for the set before any complement flip
  double objective = 0.0;
  // "p/q" when exact arithmetic was used, empty otherwise
  std::string objective_exact;
  bool exact = false;
  // "conductance", "ncut_prime" or "relative_conductance"
  std::string objective_kind = "conductance";
  bool flipped = false;
  std::size_t iterations = 0;
  std::size_t arcs_touched = 0;
  // Dinkelbach: one entry per subproblem solve, holding delta_k = cut_k / g_k of
  // the current set S_k. Bisection: the midpoint and the set the solve returned.
  std::vector<TraceEntry> trace;
  std::vector<std::string> warnings;
};

struct SubproblemOutcome {
  NodeSet set;
  FlowStats stats;
  std::size_t nodes_touched = 0;
};

template <class Num>
using Subsolver = std::function<SubproblemOutcome(const Num& delta)>;

template <class Num>
ImproveResult dinkelbach(const WeightedGraph& graph, const RatioObjective<Num>& objective,
                         const Subsolver<Num>& solve);

// Stops once delta_max - delta_min <= eps * delta_min.
template <class Num>
ImproveResult bisection(const WeightedGraph& graph, const RatioObjective<Num>& objective,
                        const Subsolver<Num>& solve, const Num& eps);

// Largest bisection tolerance that still guarantees the exact optimum on an
// integer-weighted graph, divided by a guard factor of 2. For LocalFlowImprove
// delta_param is the locality parameter (sigma = theta + delta_param).
// Throws std::domain_error when the graph has non-integer weights.
Rational exact_eps(const WeightedGraph& graph, Algorithm algorithm, const NodeSet& reference,
                   const Rational& delta_param = Rational(0));

// Splits set into connected pieces of the induced subgraph, ordered by smallest member.
std::vector<NodeSet> induced_components(const WeightedGraph& graph, const NodeSet& set);

}  // namespace flowclust
