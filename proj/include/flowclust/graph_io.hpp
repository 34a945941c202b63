#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "flowclust/graph.hpp"

namespace flowclust {

struct EdgeListOptions {
  bool fold_self_loops = false;
  // Accept arbitrary non-negative ids and renumber them densely in order of
  // first appearance; original ids are kept as graph labels.
  bool relabel = false;
  std::uint64_t max_id = 0xfffffffeu;
};

struct LoadStats {
  std::size_t lines = 0;
  std::size_t edges = 0;
  std::size_t self_loops = 0;
  std::size_t merged_duplicates = 0;
};

// Lines "u v [w]"; '#' starts a comment. Throws InputError with the line number.
WeightedGraph load_edge_list(std::istream& in, const EdgeListOptions& options = {},
                             LoadStats* stats = nullptr);
WeightedGraph load_edge_list_file(const std::string& path, const EdgeListOptions& options = {},
                                  LoadStats* stats = nullptr);
void write_edge_list(std::ostream& out, const WeightedGraph& graph);

// One id per line, '#' comments. Ids are graph labels when the graph was relabeled.
NodeSet read_node_set(std::istream& in, const WeightedGraph& graph);
NodeSet read_node_set_file(const std::string& path, const WeightedGraph& graph);
void write_node_set(std::ostream& out, const WeightedGraph& graph, const NodeSet& set);

// Parses whitespace separated ids on a single line.
NodeSet parse_node_ids(const std::string& text, const WeightedGraph& graph);

}  // namespace flowclust
