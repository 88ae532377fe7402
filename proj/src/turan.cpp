#include "ddg/turan.hpp"

namespace ddg {

VertexSet greedy_independent_set(const Graph& g, const VertexSet& within) {
    const int n = within.count();
    VertexSet alive = within;
    VertexSet indep(g.order());

    long long edges2 = 0;  // 2 * |E(g[within])|
    within.for_each([&](int v) { edges2 += g.degree_in(v, within); });

    while (alive.any()) {
        int best = -1, best_deg = 0;
        alive.for_each([&](int v) {
            int d = g.degree_in(v, alive);
            if (best < 0 || d < best_deg) {
                best = v;
                best_deg = d;
            }
        });
        indep.set(best);
        alive.reset(best);
        alive.and_not(g.row(best));
    }

    // |I| >= n^2 / (2E + n), i.e. |I| * (2E + n) >= n^2, kept in integers.
    // A failure here cannot come from adversarial input.
    __int128 lhs = (__int128)indep.count() * (edges2 + n);
    __int128 rhs = (__int128)n * n;
    if (lhs < rhs)
        throw Error("greedy_independent_set: size guarantee violated (n=" +
                    std::to_string(n) + ", |I|=" + std::to_string(indep.count()) + ")");
    return indep;
}

}  // namespace ddg
