#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ddg/bitset.hpp"
#include "ddg/errors.hpp"
#include "ddg/rng.hpp"

namespace ddg {

using VertexSet = Bitset;

// pattern[i][j] == true means "complete" between parts i and j (a clique
// inside part i when i == j); false means "empty"
using PatternMatrix = std::vector<std::vector<bool>>;

// Undirected simple graph on vertices 0..n-1, immutable after construction.
// Derived graphs (complement, induced, perturbed) are built as new objects.
class Graph {
public:
    Graph() = default;

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);
    // validates symmetry and an empty diagonal
    static Graph from_rows(std::vector<Bitset> rows);

    int order() const { return n_; }
    long long edge_count() const;
    bool has_edge(int u, int v) const { return adj_[size_t(u)].test(v); }
    const Bitset& row(int v) const { return adj_[size_t(v)]; }
    int degree(int v) const { return adj_[size_t(v)].count(); }
    int degree_in(int v, const Bitset& s) const { return count_and(adj_[size_t(v)], s); }
    VertexSet vertices() const { return Bitset::full(n_); }

private:
    int n_ = 0;
    std::vector<Bitset> adj_;
};

struct DegreeProfile {
    std::vector<int> degrees;  // sorted ascending, one entry per subset vertex
    int distinct_count = 0;
};

struct InducedGraph {
    Graph graph;
    std::vector<int> vertices;  // vertices[i] = original label of new vertex i
};

Graph gen_erdos_renyi(int n, double p_edge, uint64_t seed);
Graph gen_turan(int parts, int part_size);
Graph gen_blowup(const PatternMatrix& pattern, const std::vector<int>& sizes);

// Flips a random set of vertex pairs, at most floor(delta/2) incident to any
// (vertex, part) combination, so the result deviates from g by at most delta
// per (vertex, part). delta == 0 returns g unchanged.
Graph perturb(const Graph& g, const std::vector<VertexSet>& partition, int delta, uint64_t seed);

Graph complement(const Graph& g);
InducedGraph induced(const Graph& g, const VertexSet& s);

// |(N(u) xor N(v)) ∩ within|
int sym_diff_size(const Graph& g, int u, int v, const VertexSet& within);
// same but with u and v themselves dropped from the compared sets; this is the
// variant used where a vertex is compared against its own part-mates
int sym_diff_size_excl(const Graph& g, int u, int v, const VertexSet& within);

DegreeProfile degree_profile(const Graph& g, const VertexSet& s);

// parts laid out contiguously: sizes[0] vertices, then sizes[1], ...
std::vector<VertexSet> contiguous_partition(int n, const std::vector<int>& sizes);

}  // namespace ddg
