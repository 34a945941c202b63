#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowclust/rational.hpp"

namespace flowclust {

struct FlowStats {
  double value = 0.0;
  // distinct arcs inspected at least once
  std::size_t arcs_touched = 0;
  // total arc inspections, counting repeats
  std::size_t arc_scans = 0;
  std::size_t blocking_flow_rounds = 0;
};

template <class Cap>
struct CapacityTraits;

template <>
struct CapacityTraits<Int128> {
  static Int128 slack(Int128) { return 0; }
  static double to_double(Int128 v) { return static_cast<double>(v); }
  static std::string str(Int128 v) { return to_string(v); }
};

template <>
struct CapacityTraits<double> {
  static constexpr double tolerance = 1e-12;
  static double slack(double cap) { return tolerance * cap; }
  static double to_double(double v) { return v; }
  static std::string str(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  }
};

// s-t network for Dinic's algorithm. Undirected edges are a single pair of
// half-arcs with capacity c in both directions and flow f = -f_twin, so the
// residuals are c - f and c + f. Directed arcs have a zero-capacity twin.
// Nodes and arcs may be appended after flow has been pushed; existing flow is kept.
template <class Cap>
class FlowNetwork {
 public:
  using Slot = std::uint32_t;
  struct ArcRef {
    Slot tail = 0;
    std::uint32_t index = 0;
  };

  FlowNetwork(std::size_t slots, Slot source, Slot sink) : out_(slots), source_(source), sink_(sink) {
    if (source == sink) throw std::invalid_argument("flow network source equals sink");
    if (source >= slots || sink >= slots) throw std::invalid_argument("terminal slot out of range");
  }

  Slot source() const { return source_; }
  Slot sink() const { return sink_; }
  std::size_t node_count() const { return out_.size(); }
  std::size_t arc_count() const { return arc_pairs_; }

  Slot add_node() {
    out_.emplace_back();
    return static_cast<Slot>(out_.size() - 1);
  }

  ArcRef add_edge(Slot u, Slot v, Cap capacity) { return add_pair(u, v, capacity, capacity); }
  ArcRef add_arc(Slot u, Slot v, Cap capacity) { return add_pair(u, v, capacity, Cap{0}); }

  Cap capacity(ArcRef a) const { return arc(a).capacity; }
  Cap flow(ArcRef a) const { return arc(a).flow; }
  Cap residual(ArcRef a) const { return arc(a).capacity - arc(a).flow; }
  bool saturated(ArcRef a) const { return !(residual(a) > arc(a).slack); }

  Cap flow_value() const { return value_; }
  bool is_maximum() const { return solved_; }
  // Level of the sink in the most recent BFS, if it was reachable.
  std::optional<std::size_t> sink_distance() const { return sink_distance_; }

  FlowStats stats() const {
    FlowStats s = stats_;
    s.value = CapacityTraits<Cap>::to_double(value_);
    return s;
  }

  // One Dinic phase: BFS levels from the current residual graph, then a
  // blocking flow by DFS with per-node arc cursors. Returns the increment;
  // zero means the sink is unreachable and the flow is maximum.
  Cap blocking_flow();

  FlowStats max_flow() {
    while (blocking_flow() > Cap{0}) {
    }
    return stats();
  }

  // Maximum flow by FIFO push-relabel with global relabeling: excess is first
  // pushed towards the sink, then whatever cannot reach it is returned to the
  // source, leaving a proper maximum flow. Used for large whole-graph networks
  // where the number of Dinic phases grows with the graph diameter.
  FlowStats max_flow_push_relabel();

  // Slots reachable from the source in the residual graph (source included).
  std::vector<Slot> source_side() const;
  std::vector<char> source_side_mask() const;

  // Capacity of arcs leaving the given slot set (mask indexed by slot).
  Cap cut_capacity(const std::vector<char>& in_set) const;

  // Conservation at inner nodes and capacity bounds on every half-arc.
  bool check_invariants() const;

  // Residual graph in a DOT-like text form.
  std::string dump() const;

 private:
  struct HalfArc {
    Slot head;
    std::uint32_t twin;
    Cap capacity;
    Cap flow;
    Cap slack;
    bool touched;
  };

  ArcRef add_pair(Slot u, Slot v, Cap forward, Cap backward) {
    if (u >= out_.size() || v >= out_.size() || u == v) throw std::invalid_argument("invalid arc endpoints");
    if (forward < Cap{0} || backward < Cap{0}) throw std::invalid_argument("negative capacity");
    Cap slack = CapacityTraits<Cap>::slack(forward > backward ? forward : backward);
    auto iu = static_cast<std::uint32_t>(out_[u].size());
    auto iv = static_cast<std::uint32_t>(out_[v].size());
    out_[u].push_back({v, iv, forward, Cap{0}, slack, false});
    out_[v].push_back({u, iu, backward, Cap{0}, slack, false});
    ++arc_pairs_;
    solved_ = false;
    return {u, iu};
  }

  const HalfArc& arc(ArcRef a) const { return out_.at(a.tail).at(a.index); }
  bool usable(const HalfArc& a) const { return a.capacity - a.flow > a.slack; }

  void touch(Slot tail, HalfArc& a) {
    ++stats_.arc_scans;
    if (!a.touched) {
      a.touched = true;
      out_[a.head][a.twin].touched = true;
      ++stats_.arcs_touched;
    }
    (void)tail;
  }

  bool build_levels();
  void discharge_all(Slot target, Slot blocked, Cap excess_slack);
  void global_relabel(Slot target, Slot blocked);
  void relabel(Slot v, Slot blocked);

  static constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

  std::vector<std::vector<HalfArc>> out_;
  Slot source_;
  Slot sink_;
  std::size_t arc_pairs_ = 0;
  Cap value_{0};
  bool solved_ = false;
  std::optional<std::size_t> sink_distance_;
  FlowStats stats_;
  std::vector<std::int64_t> level_;
  std::vector<std::uint32_t> cursor_;
  std::vector<Slot> queue_;
  std::vector<Cap> excess_;
  std::vector<std::size_t> height_;
};

template <class Cap>
bool FlowNetwork<Cap>::build_levels() {
  level_.assign(out_.size(), -1);
  queue_.clear();
  level_[source_] = 0;
  queue_.push_back(source_);
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    Slot u = queue_[head];
    for (HalfArc& a : out_[u]) {
      touch(u, a);
      if (level_[a.head] < 0 && usable(a)) {
        level_[a.head] = level_[u] + 1;
        if (a.head == sink_) {
          sink_distance_ = static_cast<std::size_t>(level_[a.head]);
          return true;
        }
        queue_.push_back(a.head);
      }
    }
  }
  sink_distance_.reset();
  return false;
}

template <class Cap>
Cap FlowNetwork<Cap>::blocking_flow() {
  if (!build_levels()) {
    solved_ = true;
    return Cap{0};
  }
  ++stats_.blocking_flow_rounds;
  cursor_.assign(out_.size(), 0);
  const std::int64_t sink_level = level_[sink_];
  Cap total{0};
  std::vector<ArcRef> path;
  Slot u = source_;
  while (true) {
    if (u == sink_) {
      std::size_t bottleneck = 0;
      Cap push{0};
      for (std::size_t i = 0; i < path.size(); ++i) {
        const HalfArc& a = out_[path[i].tail][path[i].index];
        Cap res = a.capacity - a.flow;
        if (i == 0 || res < push) {
          push = res;
          bottleneck = i;
        }
      }
      std::size_t first_saturated = path.size();
      for (std::size_t i = 0; i < path.size(); ++i) {
        HalfArc& a = out_[path[i].tail][path[i].index];
        HalfArc& twin = out_[a.head][a.twin];
        if (i == bottleneck) {
          a.flow = a.capacity;
        } else {
          a.flow += push;
        }
        twin.flow = -a.flow;
        if (!usable(a) && first_saturated == path.size()) first_saturated = i;
      }
      total += push;
      path.resize(first_saturated);
      u = path.empty() ? source_ : out_[path.back().tail][path.back().index].head;
      continue;
    }
    auto& arcs = out_[u];
    bool advanced = false;
    if (level_[u] < sink_level) {
      for (std::uint32_t& i = cursor_[u]; i < arcs.size(); ++i) {
        HalfArc& a = arcs[i];
        touch(u, a);
        if (level_[a.head] == level_[u] + 1 && usable(a) &&
            (a.head == sink_ || level_[a.head] < sink_level)) {
          path.push_back({u, i});
          u = a.head;
          advanced = true;
          break;
        }
      }
    }
    if (!advanced) {
      level_[u] = -1;
      if (path.empty()) break;
      u = path.back().tail;
      path.pop_back();
      ++cursor_[u];
    }
  }
  value_ += total;
  return total;
}

template <class Cap>
void FlowNetwork<Cap>::global_relabel(Slot target, Slot blocked) {
  height_.assign(out_.size(), kUnreached);
  height_[target] = 0;
  queue_.clear();
  queue_.push_back(target);
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    Slot w = queue_[head];
    for (HalfArc& a : out_[w]) {
      touch(w, a);
      if (a.head == blocked || height_[a.head] != kUnreached) continue;
      if (usable(out_[a.head][a.twin])) {
        height_[a.head] = height_[w] + 1;
        queue_.push_back(a.head);
      }
    }
  }
  cursor_.assign(out_.size(), 0);
}

template <class Cap>
void FlowNetwork<Cap>::relabel(Slot v, Slot blocked) {
  std::size_t best = kUnreached;
  for (HalfArc& a : out_[v]) {
    touch(v, a);
    if (a.head == blocked || height_[a.head] == kUnreached || !usable(a)) continue;
    best = std::min(best, height_[a.head]);
  }
  height_[v] = best == kUnreached ? kUnreached : best + 1;
  cursor_[v] = 0;
}

template <class Cap>
void FlowNetwork<Cap>::discharge_all(Slot target, Slot blocked, Cap excess_slack) {
  const std::size_t n = out_.size();
  global_relabel(target, blocked);
  std::deque<Slot> active;
  std::vector<char> queued(n, 0);
  auto activate = [&](Slot v) {
    if (v == source_ || v == sink_ || queued[v] || !(excess_[v] > excess_slack)) return;
    queued[v] = 1;
    active.push_back(v);
  };
  for (Slot v = 0; v < n; ++v) activate(v);
  std::size_t relabels = 0;
  while (!active.empty()) {
    Slot v = active.front();
    active.pop_front();
    queued[v] = 0;
    while (excess_[v] > excess_slack && height_[v] != kUnreached) {
      auto& arcs = out_[v];
      if (cursor_[v] == arcs.size()) {
        relabel(v, blocked);
        if (++relabels >= n) {
          global_relabel(target, blocked);
          relabels = 0;
        }
        continue;
      }
      HalfArc& a = arcs[cursor_[v]];
      touch(v, a);
      if (a.head != blocked && usable(a) && height_[a.head] != kUnreached && height_[a.head] + 1 == height_[v]) {
        Cap room = a.capacity - a.flow;
        Cap amount = excess_[v] < room ? excess_[v] : room;
        a.flow += amount;
        out_[a.head][a.twin].flow = -a.flow;
        excess_[v] -= amount;
        excess_[a.head] += amount;
        activate(a.head);
        if (!usable(a)) ++cursor_[v];
      } else {
        ++cursor_[v];
      }
    }
  }
}

template <class Cap>
FlowStats FlowNetwork<Cap>::max_flow_push_relabel() {
  const std::size_t n = out_.size();
  excess_.assign(n, Cap{0});
  for (Slot v = 0; v < n; ++v) {
    for (const HalfArc& a : out_[v]) excess_[v] -= a.flow;
  }
  Cap pushed{0};
  for (HalfArc& a : out_[source_]) {
    touch(source_, a);
    Cap room = a.capacity - a.flow;
    if (room > Cap{0}) {
      a.flow = a.capacity;
      out_[a.head][a.twin].flow = -a.flow;
      excess_[a.head] += room;
      pushed += room;
    }
  }
  const Cap excess_slack = CapacityTraits<Cap>::slack(pushed);
  discharge_all(sink_, source_, excess_slack);
  discharge_all(source_, sink_, excess_slack);
  value_ = Cap{0};
  for (const HalfArc& a : out_[source_]) value_ += a.flow;
  solved_ = true;
  return stats();
}

template <class Cap>
std::vector<char> FlowNetwork<Cap>::source_side_mask() const {
  if (!solved_) throw std::logic_error("min cut requested before the flow is maximum");
  std::vector<char> seen(out_.size(), 0);
  std::vector<Slot> stack{source_};
  seen[source_] = 1;
  while (!stack.empty()) {
    Slot u = stack.back();
    stack.pop_back();
    for (const HalfArc& a : out_[u]) {
      if (!seen[a.head] && usable(a)) {
        seen[a.head] = 1;
        stack.push_back(a.head);
      }
    }
  }
  return seen;
}

template <class Cap>
std::vector<typename FlowNetwork<Cap>::Slot> FlowNetwork<Cap>::source_side() const {
  std::vector<char> mask = source_side_mask();
  std::vector<Slot> out;
  for (Slot v = 0; v < mask.size(); ++v) {
    if (mask[v]) out.push_back(v);
  }
  return out;
}

template <class Cap>
Cap FlowNetwork<Cap>::cut_capacity(const std::vector<char>& in_set) const {
  Cap total{0};
  for (Slot u = 0; u < out_.size(); ++u) {
    if (!in_set[u]) continue;
    for (const HalfArc& a : out_[u]) {
      if (!in_set[a.head]) total += a.capacity;
    }
  }
  return total;
}

template <class Cap>
bool FlowNetwork<Cap>::check_invariants() const {
  for (Slot u = 0; u < out_.size(); ++u) {
    Cap net{0};
    Cap scale{0};
    for (const HalfArc& a : out_[u]) {
      if (a.flow - a.capacity > a.slack) return false;
      if (a.flow + out_[a.head][a.twin].flow != Cap{0}) return false;
      net += a.flow;
      scale += a.capacity;
    }
    if (u == source_ || u == sink_) continue;
    Cap tol = CapacityTraits<Cap>::slack(scale) * Cap{16};
    if (net > tol || -net > tol) return false;
  }
  return true;
}

template <class Cap>
std::string FlowNetwork<Cap>::dump() const {
  using T = CapacityTraits<Cap>;
  std::ostringstream os;
  os << "digraph residual {\n";
  for (Slot u = 0; u < out_.size(); ++u) {
    for (const HalfArc& a : out_[u]) {
      if (!usable(a)) continue;
      os << "  " << u << " -> " << a.head << " [cap=" << T::str(a.capacity) << ", flow=" << T::str(a.flow)
         << ", residual=" << T::str(a.capacity - a.flow) << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace flowclust
