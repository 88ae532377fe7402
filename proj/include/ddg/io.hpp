#pragma once

#include <iosfwd>
#include <string>

#include "ddg/graph.hpp"

namespace ddg {

// DIMACS-like text format:
//   c <comment>
//   p edge <n> <m>
//   e <u> <v>        (1-based, exactly m lines)
// Self-loops and duplicate edges are rejected.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);
void write_graph_file(const std::string& path, const Graph& g);

}  // namespace ddg
