#include "flowclust/graph_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "flowclust/errors.hpp"

namespace flowclust {
namespace {

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

bool parse_u64(const std::string& token, std::uint64_t& out) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

NodeId resolve_id(const WeightedGraph& graph, std::uint64_t id, const std::string& where) {
  if (id >= graph.node_count()) {
    throw InputError(where + "node id " + std::to_string(id) + " out of range (graph has " +
                     std::to_string(graph.node_count()) + " nodes)");
  }
  return static_cast<NodeId>(id);
}

NodeSet parse_ids(std::istream& in, const WeightedGraph& graph, bool single_line) {
  std::vector<NodeId> ids;
  std::string line;
  std::size_t lineno = 0;
  std::unordered_map<std::uint64_t, NodeId> index;
  if (!graph.labels().empty()) {
    for (NodeId v = 0; v < graph.node_count(); ++v) index.emplace(graph.labels()[v], v);
  }
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(strip_comment(line));
    std::string token;
    std::string where = single_line ? std::string() : at_line(lineno);
    while (fields >> token) {
      std::uint64_t label = 0;
      if (!parse_u64(token, label)) throw InputError(where + "invalid node id '" + token + "'");
      if (index.empty()) {
        ids.push_back(resolve_id(graph, label, where));
      } else {
        auto it = index.find(label);
        if (it == index.end()) throw InputError(where + "unknown node label " + token);
        ids.push_back(it->second);
      }
    }
  }
  return NodeSet(graph, std::move(ids));
}

}  // namespace

WeightedGraph load_edge_list(std::istream& in, const EdgeListOptions& options, LoadStats* stats) {
  LoadStats local;
  std::vector<Edge> edges;
  std::unordered_map<std::uint64_t, NodeId> relabel;
  std::vector<std::uint64_t> labels;
  std::uint64_t max_node = 0;
  bool any_node = false;

  auto node_of = [&](std::uint64_t raw, std::size_t lineno) -> NodeId {
    if (raw > options.max_id) {
      throw InputError(at_line(lineno) + "node id " + std::to_string(raw) + " exceeds limit");
    }
    if (!options.relabel) {
      max_node = std::max(max_node, raw);
      any_node = true;
      return static_cast<NodeId>(raw);
    }
    auto [it, inserted] = relabel.emplace(raw, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(raw);
    return it->second;
  };

  std::string line;
  while (std::getline(in, line)) {
    ++local.lines;
    std::istringstream fields(strip_comment(line));
    std::string a, b, w;
    if (!(fields >> a)) continue;
    if (!(fields >> b)) throw InputError(at_line(local.lines) + "expected 'u v [w]'");
    Edge e;
    std::uint64_t ua = 0, ub = 0;
    if (!parse_u64(a, ua) || !parse_u64(b, ub)) {
      throw InputError(at_line(local.lines) + "invalid node id in '" + line + "'");
    }
    e.u = node_of(ua, local.lines);
    e.v = node_of(ub, local.lines);
    if (fields >> w) {
      std::size_t used = 0;
      try {
        e.weight = std::stod(w, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != w.size()) throw InputError(at_line(local.lines) + "invalid weight '" + w + "'");
      if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
        throw InputError(at_line(local.lines) + "negative or non-finite weight " + w);
      }
      std::string extra;
      if (fields >> extra) throw InputError(at_line(local.lines) + "trailing field '" + extra + "'");
    }
    edges.push_back(e);
  }
  if (in.bad()) throw InputError("read error");

  std::size_t n = options.relabel ? labels.size() : (any_node ? max_node + 1 : 0);
  BuildStats build;
  BuildOptions bopts;
  bopts.fold_self_loops = options.fold_self_loops;
  WeightedGraph graph = WeightedGraph::from_edges(n, edges, bopts, &build);
  if (graph.edge_count() == 0) throw InputError("empty graph: no edges");
  if (options.relabel) graph.set_labels(std::move(labels));
  local.edges = graph.edge_count();
  local.self_loops = build.self_loops;
  local.merged_duplicates = build.merged_duplicates;
  if (stats) *stats = local;
  return graph;
}

WeightedGraph load_edge_list_file(const std::string& path, const EdgeListOptions& options,
                                  LoadStats* stats) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file '" + path + "'");
  try {
    return load_edge_list(in, options, stats);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_edge_list(std::ostream& out, const WeightedGraph& graph) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (NodeId u = 0; u < graph.node_count(); ++u) {
    for (const Neighbor& nb : graph.neighbors(u)) {
      if (u < nb.node) out << graph.label(u) << ' ' << graph.label(nb.node) << ' ' << nb.weight << '\n';
    }
  }
}

NodeSet read_node_set(std::istream& in, const WeightedGraph& graph) {
  return parse_ids(in, graph, false);
}

NodeSet read_node_set_file(const std::string& path, const WeightedGraph& graph) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open node-set file '" + path + "'");
  try {
    return read_node_set(in, graph);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_node_set(std::ostream& out, const WeightedGraph& graph, const NodeSet& set) {
  for (NodeId v : set) out << graph.label(v) << '\n';
}

NodeSet parse_node_ids(const std::string& text, const WeightedGraph& graph) {
  std::istringstream in(text);
  return parse_ids(in, graph, true);
}

}  // namespace flowclust
