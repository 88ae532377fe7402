#include "ddg/oracle.hpp"

#include <algorithm>
#include <bit>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ddg::oracle {

namespace {

constexpr int kHardSubsetCap = 30;  // 2^30 Gray steps is the practical ceiling

std::vector<uint64_t> rows64(const Graph& g) {
    std::vector<uint64_t> adj(static_cast<size_t>(g.order()), 0);
    for (int v = 0; v < g.order(); ++v)
        g.row(v).for_each([&](int u) { adj[static_cast<size_t>(v)] |= 1ull << u; });
    return adj;
}

struct ScanBest {
    int count = 0;
    uint64_t mask = 0;
};

void consider(ScanBest& best, int distinct, uint64_t S) {
    if (S == 0) return;
    if (distinct > best.count || (distinct == best.count && (best.mask == 0 || S < best.mask)))
        best = {distinct, S};
}

// Gray-code walk over every subset whose bits above `low_bits` equal
// fixed_high; degree multiset maintained incrementally, O(deg) per step.
ScanBest scan_region(const std::vector<uint64_t>& adj, int n, int low_bits,
                     uint64_t fixed_high) {
    std::vector<int> deg(static_cast<size_t>(n), 0);
    std::vector<int> cnt(static_cast<size_t>(n) + 1, 0);
    int distinct = 0;
    uint64_t S = fixed_high;

    auto enter = [&](int d) { if (cnt[static_cast<size_t>(d)]++ == 0) ++distinct; };
    auto leave = [&](int d) { if (--cnt[static_cast<size_t>(d)] == 0) --distinct; };

    for (uint64_t m = S; m; m &= m - 1) {
        int v = std::countr_zero(m);
        deg[static_cast<size_t>(v)] = std::popcount(adj[static_cast<size_t>(v)] & S);
    }
    for (uint64_t m = S; m; m &= m - 1) enter(deg[static_cast<size_t>(std::countr_zero(m))]);

    ScanBest best;
    consider(best, distinct, S);

    const uint64_t steps = 1ull << low_bits;
    for (uint64_t i = 1; i < steps; ++i) {
        int v = std::countr_zero(i);
        uint64_t bit = 1ull << v;
        if (S & bit) {
            S ^= bit;
            leave(deg[static_cast<size_t>(v)]);
            for (uint64_t m = adj[static_cast<size_t>(v)] & S; m; m &= m - 1) {
                int u = std::countr_zero(m);
                leave(deg[static_cast<size_t>(u)]);
                enter(--deg[static_cast<size_t>(u)]);
            }
        } else {
            uint64_t nb = adj[static_cast<size_t>(v)] & S;
            deg[static_cast<size_t>(v)] = std::popcount(nb);
            for (uint64_t m = nb; m; m &= m - 1) {
                int u = std::countr_zero(m);
                leave(deg[static_cast<size_t>(u)]);
                enter(++deg[static_cast<size_t>(u)]);
            }
            S ^= bit;
            enter(deg[static_cast<size_t>(v)]);
        }
        consider(best, distinct, S);
    }
    return best;
}

FWitness finish_f(const Graph& g, const ScanBest& best) {
    FWitness w;
    w.subset = VertexSet(g.order());
    for (int v = 0; v < g.order(); ++v)
        if (best.mask >> v & 1) w.subset.set(v);
    w.distinct_count = best.count;
    // re-check the claim against the straightforward profile
    if (degree_profile(g, w.subset).distinct_count != w.distinct_count)
        throw Error("exact_f: internal inconsistency");
    return w;
}

struct CliqueSearch {
    const std::vector<uint64_t>& adj;
    int best = 0;
    uint64_t best_mask = 0;

    void run(uint64_t R, int rsize, uint64_t P) {
        if (P == 0) {
            if (rsize > best) {
                best = rsize;
                best_mask = R;
            }
            return;
        }
        // greedy colouring bound; vertices processed in reverse colour order
        int order[64], color[64], cnt = 0;
        uint64_t Q = P;
        for (int c = 1; Q; ++c) {
            uint64_t avail = Q;
            while (avail) {
                int v = std::countr_zero(avail);
                order[cnt] = v;
                color[cnt] = c;
                ++cnt;
                uint64_t bit = 1ull << v;
                Q &= ~bit;
                avail &= ~bit;
                avail &= ~adj[static_cast<size_t>(v)];
            }
        }
        for (int i = cnt - 1; i >= 0; --i) {
            if (rsize + color[i] <= best) return;
            int v = order[i];
            run(R | (1ull << v), rsize + 1, P & adj[static_cast<size_t>(v)]);
            P &= ~(1ull << v);
        }
    }
};

uint64_t max_clique_mask(const Graph& g) {
    if (g.order() == 0) return 0;
    auto adj = rows64(g);
    CliqueSearch cs{adj};
    uint64_t full = g.order() >= 64 ? ~0ull : (1ull << g.order()) - 1;
    cs.run(0, 0, full);
    return cs.best_mask;
}

}  // namespace

FWitness exact_f_serial(const Graph& g, int cap) {
    int n = g.order();
    if (n > cap || n > kHardSubsetCap)
        throw CapExceeded("exact_f", n, std::min(cap, kHardSubsetCap));
    if (n == 0) return {VertexSet(0), 0};
    return finish_f(g, scan_region(rows64(g), n, n, 0));
}

FWitness exact_f(const Graph& g, int cap) {
    int n = g.order();
    if (n > cap || n > kHardSubsetCap)
        throw CapExceeded("exact_f", n, std::min(cap, kHardSubsetCap));
    if (n == 0) return {VertexSet(0), 0};

    int high = n > 16 ? std::min(8, n - 16) : 0;
    int low = n - high;
    int tasks = 1 << high;
    auto adj = rows64(g);
    std::vector<ScanBest> results(static_cast<size_t>(tasks));
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < tasks; ++t)
        results[static_cast<size_t>(t)] = scan_region(adj, n, low, uint64_t(t) << low);

    ScanBest best;  // merge is order-independent: (count desc, mask asc)
    for (const auto& r : results) consider(best, r.count, r.mask);
    return finish_f(g, best);
}

VertexSet max_clique(const Graph& g, int cap) {
    if (g.order() > cap || g.order() > 64)
        throw CapExceeded("max_clique", g.order(), std::min(cap, 64));
    uint64_t mask = max_clique_mask(g);
    VertexSet s(g.order());
    for (int v = 0; v < g.order(); ++v)
        if (mask >> v & 1) s.set(v);
    return s;
}

HomWitness exact_hom(const Graph& g, int cap) {
    int n = g.order();
    if (n > cap || n > 64) throw CapExceeded("exact_hom", n, std::min(cap, 64));
    HomWitness w;
    if (n == 0) {
        w.subset = VertexSet(0);
        return w;
    }
    VertexSet clique = max_clique(g, cap);
    VertexSet indep = max_clique(complement(g), cap);
    if (clique.count() >= indep.count()) {
        w = {clique, HomKind::clique, clique.count()};
    } else {
        w = {indep, HomKind::independent, indep.count()};
    }
    return w;
}

VertexSet exact_max_diverse(const Graph& g, const Fraction& delta, int cap) {
    int n = g.order();
    if (n > cap || n > 64) throw CapExceeded("exact_max_diverse", n, std::min(cap, 64));
    if (n == 0) return VertexSet(0);
    if (delta.num < 0) throw Error("exact_max_diverse: negative delta");
    // compatibility graph: u~v iff |N(u) xor N(v)| >= delta*n; a diverse set
    // is a clique there
    VertexSet all = g.vertices();
    std::vector<Bitset> rows(static_cast<size_t>(n), Bitset(n));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            int sd = sym_diff_size(g, u, v, all);
            if (!lt_scaled(sd, delta, n)) {
                rows[static_cast<size_t>(u)].set(v);
                rows[static_cast<size_t>(v)].set(u);
            }
        }
    return max_clique(Graph::from_rows(std::move(rows)), 64);
}

std::string ControlCheckResult::str() const {
    auto at = [&](const char* base) {
        std::string s(base);
        if (detail_i >= 0) s += " i=" + std::to_string(detail_i);
        if (detail_j >= 0) s += " j=" + std::to_string(detail_j);
        return s;
    };
    switch (code) {
        case ControlCheck::ok: return "ok";
        case ControlCheck::empty_a: return "A is empty";
        case ControlCheck::vertex_out_of_range: return at("vertex out of range");
        case ControlCheck::shape_mismatch: return at("witness shape mismatch");
        case ControlCheck::overlapping_sets: return at("sets not disjoint");
        case ControlCheck::c_part_too_small: return at("C part below k^2-1");
        case ControlCheck::condition_i: return at("F[a_i, C_j] mixed");
        case ControlCheck::condition_ii: return at("equal C-neighbourhoods, equal degrees");
    }
    return "?";
}

ControlCheckResult verify_control_graph(const Graph& g, const ControlGraphWitness& w) {
    int n = g.order();
    int k = w.k();
    if (k == 0) return {ControlCheck::empty_a};
    if (w.Bparts.size() != static_cast<size_t>(k)) return {ControlCheck::shape_mismatch};

    VertexSet seen(n);
    auto absorb = [&](int v) {
        if (v < 0 || v >= n) return ControlCheck::vertex_out_of_range;
        if (seen.test(v)) return ControlCheck::overlapping_sets;
        seen.set(v);
        return ControlCheck::ok;
    };
    for (int a : w.A)
        if (auto c = absorb(a); c != ControlCheck::ok) return {c};
    for (const auto& bp : w.Bparts)
        for (int b : bp)
            if (auto c = absorb(b); c != ControlCheck::ok) return {c};
    for (size_t j = 0; j < w.Cparts.size(); ++j) {
        if (w.Cparts[j].empty()) return {ControlCheck::shape_mismatch, -1, int(j)};
        for (int cv : w.Cparts[j])
            if (auto c = absorb(cv); c != ControlCheck::ok) return {c, -1, int(j)};
        if ((long long)w.Cparts[j].size() < (long long)k * k - 1)
            return {ControlCheck::c_part_too_small, -1, int(j)};
    }

    VertexSet ab = w.a_set(n);
    ab |= w.b_set(n);
    VertexSet call = w.c_set(n);

    // (i) every a_i sees each C_j completely or not at all
    std::vector<VertexSet> cmasks;
    for (const auto& cp : w.Cparts) cmasks.push_back(from_vector(n, cp));
    for (int i = 0; i < k; ++i)
        for (size_t j = 0; j < cmasks.size(); ++j) {
            int hits = count_and(g.row(w.A[static_cast<size_t>(i)]), cmasks[j]);
            if (hits != 0 && hits != cmasks[j].count())
                return {ControlCheck::condition_i, i, int(j)};
        }

    // (ii) equal C-neighbourhoods force distinct degrees inside F[A ∪ B]
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            VertexSet ci = g.row(w.A[static_cast<size_t>(i)]) & call;
            VertexSet cj = g.row(w.A[static_cast<size_t>(j)]) & call;
            if (ci == cj) {
                int di = g.degree_in(w.A[static_cast<size_t>(i)], ab);
                int dj = g.degree_in(w.A[static_cast<size_t>(j)], ab);
                if (di == dj) return {ControlCheck::condition_ii, i, j};
            }
        }
    return {};
}

}  // namespace ddg::oracle
