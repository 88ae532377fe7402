#include "ddg/graph.hpp"

#include <algorithm>
#include <string>

namespace ddg {

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw Error("graph: negative order");
    std::vector<Bitset> rows(static_cast<size_t>(n), Bitset(n));
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw Error("graph: edge endpoint out of range");
        if (u == v) throw Error("graph: self-loop");
        if (rows[static_cast<size_t>(u)].test(v)) throw Error("graph: duplicate edge");
        rows[static_cast<size_t>(u)].set(v);
        rows[static_cast<size_t>(v)].set(u);
    }
    Graph g;
    g.n_ = n;
    g.adj_ = std::move(rows);
    return g;
}

Graph Graph::from_rows(std::vector<Bitset> rows) {
    int n = int(rows.size());
    for (int v = 0; v < n; ++v) {
        if (rows[static_cast<size_t>(v)].size_bits() != n) throw Error("graph: row size mismatch");
        if (rows[static_cast<size_t>(v)].test(v)) throw Error("graph: self-loop");
    }
    for (int u = 0; u < n; ++u)
        for (int v = rows[static_cast<size_t>(u)].first(); v >= 0; v = rows[static_cast<size_t>(u)].next(v))
            if (!rows[static_cast<size_t>(v)].test(u)) throw Error("graph: asymmetric adjacency");
    Graph g;
    g.n_ = n;
    g.adj_ = std::move(rows);
    return g;
}

long long Graph::edge_count() const {
    long long d = 0;
    for (int v = 0; v < n_; ++v) d += degree(v);
    return d / 2;
}

Graph gen_erdos_renyi(int n, double p_edge, uint64_t seed) {
    if (p_edge < 0.0 || p_edge > 1.0) throw Error("gen_erdos_renyi: p outside [0,1]");
    Rng rng(seed);
    std::vector<Bitset> rows(static_cast<size_t>(n), Bitset(n));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(p_edge)) {
                rows[static_cast<size_t>(u)].set(v);
                rows[static_cast<size_t>(v)].set(u);
            }
    return Graph::from_rows(std::move(rows));
}

Graph gen_turan(int parts, int part_size) {
    if (parts < 1 || part_size < 1) throw Error("gen_turan: parts and size must be >= 1");
    PatternMatrix pat(static_cast<size_t>(parts), std::vector<bool>(static_cast<size_t>(parts), true));
    for (int i = 0; i < parts; ++i) pat[static_cast<size_t>(i)][static_cast<size_t>(i)] = false;
    return gen_blowup(pat, std::vector<int>(static_cast<size_t>(parts), part_size));
}

Graph gen_blowup(const PatternMatrix& pattern, const std::vector<int>& sizes) {
    size_t m = pattern.size();
    if (sizes.size() != m) throw Error("gen_blowup: sizes/pattern arity mismatch");
    for (size_t i = 0; i < m; ++i) {
        if (pattern[i].size() != m) throw Error("gen_blowup: pattern not square");
        for (size_t j = 0; j < m; ++j)
            if (pattern[i][j] != pattern[j][i]) throw Error("gen_blowup: pattern not symmetric");
        if (sizes[i] < 1) throw Error("gen_blowup: empty part");
    }
    int n = 0;
    for (int s : sizes) n += s;
    auto parts = contiguous_partition(n, sizes);
    std::vector<Bitset> rows(static_cast<size_t>(n), Bitset(n));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i; j < m; ++j) {
            if (!pattern[i][j]) continue;
            parts[i].for_each([&](int u) {
                parts[j].for_each([&](int v) {
                    if (u == v) return;
                    rows[static_cast<size_t>(u)].set(v);
                    rows[static_cast<size_t>(v)].set(u);
                });
            });
        }
    return Graph::from_rows(std::move(rows));
}

Graph perturb(const Graph& g, const std::vector<VertexSet>& partition, int delta,
              uint64_t seed) {
    int n = g.order();
    std::vector<int> part_of(static_cast<size_t>(n), -1);
    for (size_t p = 0; p < partition.size(); ++p) {
        if (partition[p].size_bits() != n) throw Error("perturb: partition size mismatch");
        partition[p].for_each([&](int v) {
            if (part_of[static_cast<size_t>(v)] != -1) throw Error("perturb: overlapping parts");
            part_of[static_cast<size_t>(v)] = int(p);
        });
    }
    for (int v = 0; v < n; ++v)
        if (part_of[static_cast<size_t>(v)] == -1) throw Error("perturb: partition does not cover V");
    int budget = delta / 2;
    if (budget <= 0) return g;

    std::vector<Bitset> rows;
    rows.reserve(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) rows.push_back(g.row(v));

    // remaining flips allowed for (vertex, part)
    std::vector<std::vector<int>> left(static_cast<size_t>(n), std::vector<int>(partition.size(), budget));
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<size_t>(n) * static_cast<size_t>(n - 1) / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    Rng rng(seed);
    rng.shuffle(pairs);
    for (auto [u, v] : pairs) {
        int pu = part_of[static_cast<size_t>(u)], pv = part_of[static_cast<size_t>(v)];
        if (left[static_cast<size_t>(u)][static_cast<size_t>(pv)] <= 0 || left[static_cast<size_t>(v)][static_cast<size_t>(pu)] <= 0) continue;
        if (!rng.chance(0.5)) continue;
        --left[static_cast<size_t>(u)][static_cast<size_t>(pv)];
        --left[static_cast<size_t>(v)][static_cast<size_t>(pu)];
        bool had = rows[static_cast<size_t>(u)].test(v);
        rows[static_cast<size_t>(u)].assign(v, !had);
        rows[static_cast<size_t>(v)].assign(u, !had);
    }
    return Graph::from_rows(std::move(rows));
}

Graph complement(const Graph& g) {
    int n = g.order();
    std::vector<Bitset> rows;
    rows.reserve(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        Bitset r = g.row(v).complemented();
        r.reset(v);
        rows.push_back(std::move(r));
    }
    return Graph::from_rows(std::move(rows));
}

InducedGraph induced(const Graph& g, const VertexSet& s) {
    if (s.size_bits() != g.order()) throw Error("induced: subset size mismatch");
    std::vector<int> verts = s.to_vector();
    int m = int(verts.size());
    std::vector<Bitset> rows(static_cast<size_t>(m), Bitset(m));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (g.has_edge(verts[static_cast<size_t>(i)], verts[static_cast<size_t>(j)])) {
                rows[static_cast<size_t>(i)].set(j);
                rows[static_cast<size_t>(j)].set(i);
            }
    return {Graph::from_rows(std::move(rows)), std::move(verts)};
}

int sym_diff_size(const Graph& g, int u, int v, const VertexSet& within) {
    return count_xor_and(g.row(u), g.row(v), within);
}

int sym_diff_size_excl(const Graph& g, int u, int v, const VertexSet& within) {
    int c = count_xor_and(g.row(u), g.row(v), within);
    // u and v themselves lie in N(u) xor N(v) exactly when uv is an edge;
    // adjacent twins always differ on the pair {u, v}, which is noise for
    // similarity purposes, so drop those two coordinates
    if (u != v && g.has_edge(u, v)) {
        if (within.test(u)) --c;
        if (within.test(v)) --c;
    }
    return c;
}

DegreeProfile degree_profile(const Graph& g, const VertexSet& s) {
    DegreeProfile p;
    s.for_each([&](int v) { p.degrees.push_back(g.degree_in(v, s)); });
    std::sort(p.degrees.begin(), p.degrees.end());
    for (size_t i = 0; i < p.degrees.size(); ++i)
        if (i == 0 || p.degrees[i] != p.degrees[i - 1]) ++p.distinct_count;
    return p;
}

std::vector<VertexSet> contiguous_partition(int n, const std::vector<int>& sizes) {
    long long total = 0;
    for (int s : sizes) {
        if (s < 0) throw Error("contiguous_partition: negative part size");
        total += s;
    }
    if (total != n) throw Error("contiguous_partition: sizes do not sum to n");
    std::vector<VertexSet> parts;
    int at = 0;
    for (int s : sizes) {
        VertexSet p(n);
        for (int i = 0; i < s; ++i) p.set(at + i);
        at += s;
        parts.push_back(std::move(p));
    }
    return parts;
}

}  // namespace ddg
