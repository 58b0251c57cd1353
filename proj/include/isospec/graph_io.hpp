#pragma once

// .isg edge-list format:
//   - optional comment lines starting with '#'
//   - first non-comment line: "n m"
//   - then m lines "u v w", 1-indexed, u < v, decimal weight
// Parse errors carry the offending line number.

#include <string>

#include "isospec/graph.hpp"

namespace isospec {

WeightedGraph parse_graph(const std::string& text);
std::string write_graph(const WeightedGraph& g);

WeightedGraph load_graph_file(const std::string& path);
void save_graph_file(const WeightedGraph& g, const std::string& path);

}  // namespace isospec
