#pragma once

#include "ddg/graph.hpp"

namespace ddg {

// Greedy independent set: repeatedly take the minimum-degree surviving vertex
// (ties to the lowest index) and delete its closed neighbourhood. The Turán
// guarantee |I| >= n / (avg_deg + 1) is a theorem; it is re-checked on every
// invocation and a violation throws (it would mean a bug, not bad input).
VertexSet greedy_independent_set(const Graph& g, const VertexSet& within);

}  // namespace ddg
