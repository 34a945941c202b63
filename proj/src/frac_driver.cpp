#include "flowclust/frac_driver.hpp"

#include <algorithm>
#include <stdexcept>

#include "flowclust/errors.hpp"
#include "flowclust/metrics.hpp"

namespace flowclust {
namespace {

// Safety net for floating-point runs, where strict decrease is only up to tolerance.
constexpr std::size_t kMaxIterations = 100000;

template <class Num>
struct Evaluated {
  NodeSet set;
  Num cut{};
  Num den{};
};

template <class Num>
Evaluated<Num> evaluate(const WeightedGraph& graph, const RatioObjective<Num>& objective, NodeSet set) {
  Evaluated<Num> e;
  e.cut = objective.cut(graph, set);
  e.den = objective.denominator(graph, set);
  e.set = std::move(set);
  return e;
}

template <class Num>
void record(ImproveResult& result, const Num& delta, const Num& cut, const Num& den,
            const SubproblemOutcome& outcome) {
  using A = RatioArith<Num>;
  TraceEntry t;
  t.delta = A::to_double(delta);
  if constexpr (std::is_same_v<Num, Rational>) t.delta_exact = delta.str();
  t.cut = A::to_double(cut);
  t.denominator = A::to_double(den);
  t.arcs_touched = outcome.stats.arcs_touched;
  t.nodes_touched = outcome.nodes_touched;
  result.trace.push_back(std::move(t));
  result.arcs_touched += outcome.stats.arcs_touched;
  ++result.iterations;
}

// The optimum is attained by at least one connected piece of an optimal set
// (cut and g are additive over pieces); keep the smallest such piece.
template <class Num>
void finalize(const WeightedGraph& graph, const RatioObjective<Num>& objective, ImproveResult& result,
              Evaluated<Num> best) {
  using A = RatioArith<Num>;
  Num ratio = best.cut / best.den;
  std::vector<NodeSet> pieces = induced_components(graph, best.set);
  if (pieces.size() > 1) {
    Evaluated<Num> whole = std::move(best);
    bool have = false;
    for (NodeSet& piece : pieces) {
      Evaluated<Num> e = evaluate(graph, objective, std::move(piece));
      if (!(e.den > Num{0})) continue;
      Num r = e.cut / e.den;
      bool take = !have ? (A::less(r, ratio) || A::same(r, ratio))
                        : (A::less(r, ratio) || (A::same(r, ratio) && e.set.size() < best.set.size()));
      if (take) {
        best = std::move(e);
        ratio = r;
        have = true;
      }
    }
    if (!have) best = std::move(whole);
    ratio = best.cut / best.den;
  }
  result.set = std::move(best.set);
  result.objective = A::to_double(ratio);
  if constexpr (std::is_same_v<Num, Rational>) {
    result.objective_exact = ratio.str();
    result.exact = true;
  }
}

template <class Num>
Evaluated<Num> start(const WeightedGraph& graph, const RatioObjective<Num>& objective) {
  if (objective.reference.empty()) throw PreconditionError("seed set is empty");
  Evaluated<Num> r = evaluate(graph, objective, objective.reference);
  if (!(r.den > Num{0})) throw PreconditionError("seed set has non-positive denominator");
  return r;
}

}  // namespace

std::string algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::mqi:
      return "mqi";
    case Algorithm::flow_improve:
      return "fi";
    case Algorithm::local_flow_improve:
      return "lfi";
  }
  return "unknown";
}

std::string mode_name(DriverMode mode) { return mode == DriverMode::dinkelbach ? "dinkelbach" : "bisection"; }

template <class Num>
Num RatioObjective<Num>::cut(const WeightedGraph& graph, const NodeSet& set) const {
  return RatioArith<Num>::from_weight(flowclust::cut(graph, set));
}

template <class Num>
Num RatioObjective<Num>::denominator(const WeightedGraph& graph, const NodeSet& set) const {
  using A = RatioArith<Num>;
  if (algorithm == Algorithm::mqi) return A::from_weight(set.volume());
  double inside = overlap_volume(graph, set, reference);
  return A::from_weight(inside) - kappa * A::from_weight(set.volume() - inside);
}

template <class Num>
ImproveResult dinkelbach(const WeightedGraph& graph, const RatioObjective<Num>& objective,
                         const Subsolver<Num>& solve) {
  using A = RatioArith<Num>;
  ImproveResult result;
  result.algorithm = objective.algorithm;
  result.mode = DriverMode::dinkelbach;
  Evaluated<Num> current = start(graph, objective);
  if (current.cut == Num{0}) {
    finalize(graph, objective, result, std::move(current));
    return result;
  }
  Num delta = current.cut / current.den;
  while (true) {
    SubproblemOutcome out = solve(delta);
    record(result, delta, current.cut, current.den, out);
    Evaluated<Num> next = evaluate(graph, objective, std::move(out.set));
    if (!(next.den > Num{0}) || !A::less(next.cut / next.den, delta)) break;
    current = std::move(next);
    delta = current.cut / current.den;
    if (result.iterations >= kMaxIterations) {
      result.warnings.push_back("iteration limit reached");
      break;
    }
  }
  finalize(graph, objective, result, std::move(current));
  return result;
}

template <class Num>
ImproveResult bisection(const WeightedGraph& graph, const RatioObjective<Num>& objective,
                        const Subsolver<Num>& solve, const Num& eps) {
  using A = RatioArith<Num>;
  if (!(eps > Num{0}) || Num{1} < eps) throw std::invalid_argument("bisection eps must lie in (0, 1]");
  ImproveResult result;
  result.algorithm = objective.algorithm;
  result.mode = DriverMode::bisection;
  Evaluated<Num> best = start(graph, objective);
  if (best.cut == Num{0}) {
    finalize(graph, objective, result, std::move(best));
    return result;
  }
  Num lo{0};
  Num hi = best.cut / best.den;
  while (eps * lo < hi - lo) {
    Num mid = (lo + hi) / Num{2};
    SubproblemOutcome out = solve(mid);
    Evaluated<Num> e = evaluate(graph, objective, std::move(out.set));
    record(result, mid, e.cut, e.den, out);
    if (e.den > Num{0}) {
      hi = e.cut / e.den;
      best = std::move(e);
    } else {
      lo = mid;
    }
    if (result.iterations >= kMaxIterations) {
      result.warnings.push_back("iteration limit reached");
      break;
    }
  }
  SubproblemOutcome out = solve(hi);
  Evaluated<Num> e = evaluate(graph, objective, std::move(out.set));
  record(result, hi, e.cut, e.den, out);
  if (e.den > Num{0} && A::less(e.cut / e.den, best.cut / best.den)) best = std::move(e);
  finalize(graph, objective, result, std::move(best));
  return result;
}

Rational exact_eps(const WeightedGraph& graph, Algorithm algorithm, const NodeSet& reference,
                   const Rational& delta_param) {
  if (!graph.integer_weights()) throw std::domain_error("exactness not guaranteed");
  if (reference.empty()) throw PreconditionError("seed set is empty");
  Int128 vol_r = std::llround(reference.volume());
  Int128 vol_rbar = std::llround(graph.total_volume() - reference.volume());
  Int128 den = checked_mul(vol_r, vol_r);
  if (algorithm != Algorithm::mqi) {
    if (vol_rbar <= 0) throw PreconditionError("seed covers the whole graph volume");
    den = checked_mul(den, vol_rbar);
    if (algorithm == Algorithm::local_flow_improve) den = checked_mul(den, delta_param.den());
  }
  return Rational(1, checked_mul(den, 2));
}

std::vector<NodeSet> induced_components(const WeightedGraph& graph, const NodeSet& set) {
  std::vector<NodeSet> pieces;
  const auto& members = set.members();
  std::vector<char> seen(members.size(), 0);
  auto index_of = [&](NodeId v) -> std::ptrdiff_t {
    auto it = std::lower_bound(members.begin(), members.end(), v);
    return (it != members.end() && *it == v) ? it - members.begin() : -1;
  };
  std::vector<NodeId> stack;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (seen[i]) continue;
    std::vector<NodeId> piece;
    seen[i] = 1;
    stack.push_back(members[i]);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      piece.push_back(u);
      for (const Neighbor& nb : graph.neighbors(u)) {
        std::ptrdiff_t j = index_of(nb.node);
        if (j >= 0 && !seen[j]) {
          seen[j] = 1;
          stack.push_back(nb.node);
        }
      }
    }
    pieces.emplace_back(graph, std::move(piece));
  }
  return pieces;
}

template struct RatioObjective<Rational>;
template struct RatioObjective<double>;
template ImproveResult dinkelbach<Rational>(const WeightedGraph&, const RatioObjective<Rational>&,
                                            const Subsolver<Rational>&);
template ImproveResult dinkelbach<double>(const WeightedGraph&, const RatioObjective<double>&,
                                          const Subsolver<double>&);
template ImproveResult bisection<Rational>(const WeightedGraph&, const RatioObjective<Rational>&,
                                           const Subsolver<Rational>&, const Rational&);
template ImproveResult bisection<double>(const WeightedGraph&, const RatioObjective<double>&,
                                         const Subsolver<double>&, const double&);

}  // namespace flowclust
