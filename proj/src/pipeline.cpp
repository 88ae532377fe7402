#include "ddg/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "ddg/turan.hpp"

namespace ddg::pipeline {

namespace {

// largest s >= 0 with (5 s q)^3 <= p^3 nv^2; the exact form of s <= delta*nv^(2/3)/5
int shrink_cap(const Fraction& delta, int nv) {
    double guess = delta.to_double() * std::cbrt(double(nv) * nv) / 5.0;
    int64_t s = std::max<int64_t>(0, int64_t(guess) - 2);
    auto ok = [&](int64_t x) {
        __int128 side = (__int128)5 * x * delta.den;
        __int128 rhs = (__int128)delta.num * delta.num * delta.num * nv * nv;
        return side * side * side <= rhs;
    };
    while (ok(s + 1)) ++s;
    return int(s);
}

VertexSet truncate_lowest(const VertexSet& s, int target) {
    if (s.count() <= target) return s;
    VertexSet r(s.size_bits());
    int kept = 0;
    for (int v = s.first(); v >= 0 && kept < target; v = s.next(v)) {
        r.set(v);
        ++kept;
    }
    return r;
}

}  // namespace

Graph build_conflict_graph_serial(const Graph& g, const Fraction& delta) {
    int n = g.order();
    VertexSet all = g.vertices();
    std::vector<Bitset> rows(static_cast<size_t>(n), Bitset(n));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (lt_scaled(sym_diff_size(g, u, v, all), delta, n)) {
                rows[static_cast<size_t>(u)].set(v);
                rows[static_cast<size_t>(v)].set(u);
            }
    return Graph::from_rows(std::move(rows));
}

Graph build_conflict_graph(const Graph& g, const Fraction& delta) {
    int n = g.order();
    VertexSet all = g.vertices();
    std::vector<Bitset> rows(static_cast<size_t>(n), Bitset(n));
    // each row is computed in full so workers never touch shared bits; the
    // (u,v) predicate is symmetric, which from_rows re-checks
#pragma omp parallel for schedule(dynamic, 8)
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (v != u && lt_scaled(sym_diff_size(g, u, v, all), delta, n))
                rows[static_cast<size_t>(u)].set(v);
    return Graph::from_rows(std::move(rows));
}

VertexSet extract_diverse_set(const Graph& g, const Fraction& delta, int target) {
    if (target <= 0) throw PreconditionViolated("target >= 1", std::to_string(target));
    Graph conflict = build_conflict_graph(g, delta);
    VertexSet is = greedy_independent_set(conflict, conflict.vertices());
    return truncate_lowest(is, target);
}

std::pair<ProbVector, VertexSet> build_prob_vector_with_m(const Graph& g, const VertexSet& U,
                                                          const VertexSet& V,
                                                          const Fraction& delta,
                                                          const std::vector<int64_t>& m) {
    int n = g.order();
    if (U.intersects(V) || (U | V) != g.vertices())
        throw PreconditionViolated("U, V partition V(g)", "bad split");
    int usize = U.count();
    int64_t nv = V.count();
    if ((__int128)usize * usize * usize > (__int128)nv * nv)
        throw PreconditionViolated("|U| <= |V|^(2/3)",
                                   "|U|=" + std::to_string(usize) + " |V|=" + std::to_string(nv));
    if (int(m.size()) != n) throw PreconditionViolated("m indexed by vertex", "size mismatch");

    std::vector<int> ulist = U.to_vector();
    int64_t mtotal = 0;
    for (int u : ulist) {
        if (m[static_cast<size_t>(u)] < -usize || m[static_cast<size_t>(u)] > usize)
            throw PreconditionViolated("m_u in [-|U|, |U|]", std::to_string(m[static_cast<size_t>(u)]));
        mtotal += m[static_cast<size_t>(u)];
    }

    // S_v = sum over u of m_u * (+1 if uv edge else -1), the signed sum in
    // the p-vector definition; p_v = 1/2 + S_v / |V|
    ProbVector p;
    p.V = V;
    p.base.assign(static_cast<size_t>(n), 0.0);
    p.truncated.assign(static_cast<size_t>(n), 0.0);
    std::vector<int64_t> s(static_cast<size_t>(n), 0);
    V.for_each([&](int v) {
        int64_t plus = 0;
        for (int u : ulist)
            if (g.has_edge(u, v)) plus += m[static_cast<size_t>(u)];
        s[static_cast<size_t>(v)] = 2 * plus - mtotal;
        double b = 0.5 + double(s[static_cast<size_t>(v)]) / double(nv);
        p.base[static_cast<size_t>(v)] = b;
        p.truncated[static_cast<size_t>(v)] = std::clamp(b, 0.1, 0.9);
    });

    // u is good when q^u = p - (m_u/|V|)u leaves [0.2, 0.8] in at most
    // delta*|V|/2 coordinates; |q^u_v - 1/2| > 0.3 iff 10|S_v - m_u s_u(v)| > 3|V|
    VertexSet good(n);
    for (int u : ulist) {
        int64_t bad = 0;
        int64_t mu = m[static_cast<size_t>(u)];
        V.for_each([&](int v) {
            int64_t centered = s[static_cast<size_t>(v)] - (g.has_edge(u, v) ? mu : -mu);
            if (10 * (centered < 0 ? -centered : centered) > 3 * nv) ++bad;
        });
        if (le_scaled(2 * bad, delta, nv)) good.set(u);
    }
    return {std::move(p), std::move(good)};
}

std::pair<ProbVector, VertexSet> build_prob_vector(const Graph& g, const VertexSet& U,
                                                   const VertexSet& V, const Fraction& delta,
                                                   uint64_t seed) {
    int usize = U.count();
    std::vector<int64_t> m(static_cast<size_t>(g.order()), 0);
    int idx = 0;
    U.for_each([&](int u) {
        m[static_cast<size_t>(u)] = Rng(mix_seed(seed, uint64_t(idx++))).uniform_int(-usize, usize);
    });
    return build_prob_vector_with_m(g, U, V, delta, m);
}

std::vector<double> expected_degrees(const Graph& g, const VertexSet& U, const VertexSet& V,
                                     const ProbVector& p) {
    std::vector<double> e(static_cast<size_t>(g.order()), 0.0);
    U.for_each([&](int u) {
        double sum = g.degree_in(u, U);
        (g.row(u) & V).for_each([&](int v) { sum += p.truncated[static_cast<size_t>(v)]; });
        e[static_cast<size_t>(u)] = sum;
    });
    return e;
}

SeparatedFamily select_separated(const Graph& g, const VertexSet& U, const VertexSet& U_good,
                                 const VertexSet& V, const ProbVector& p) {
    if (U_good.none()) throw PreconditionViolated("U_good nonempty", "no good vertices");
    std::vector<double> e = expected_degrees(g, U, V, p);

    // event graph: u ~ u' when the expected degrees collide within 1
    std::vector<int> glist = U_good.to_vector();
    std::vector<std::pair<int, int>> edges;
    for (size_t i = 0; i < glist.size(); ++i)
        for (size_t j = i + 1; j < glist.size(); ++j)
            if (std::fabs(e[static_cast<size_t>(glist[i])] - e[static_cast<size_t>(glist[j])]) <= 1.0)
                edges.emplace_back(glist[i], glist[j]);
    VertexSet is = greedy_independent_set(Graph::from_edges(g.order(), edges), U_good);

    SeparatedFamily fam;
    fam.members = is.to_vector();
    for (int u : fam.members) fam.expected.push_back(e[static_cast<size_t>(u)]);
    for (size_t i = 0; i < fam.members.size(); ++i)
        for (size_t j = i + 1; j < fam.members.size(); ++j)
            if (!(std::fabs(fam.expected[i] - fam.expected[j]) > 1.0))
                throw Error("select_separated: separation invariant violated");
    return fam;
}

int64_t ej_threshold(const Fraction& delta, int usize) {
    if (delta.num <= 0) throw PreconditionViolated("delta > 0", delta.str());
    // smallest k with k^2 p^3 >= 256 q^3, i.e. k = ceil(16 delta^(-3/2))
    double guess = 16.0 * std::pow(double(delta.den) / double(delta.num), 1.5);
    int64_t k = std::max<int64_t>(0, int64_t(guess) - 2);
    auto ge = [&](int64_t x) {
        __int128 lhs = (__int128)x * x * delta.num * delta.num * delta.num;
        __int128 rhs = (__int128)256 * delta.den * delta.den * delta.den;
        return lhs >= rhs;
    };
    while (!ge(k)) ++k;
    if (k < 1) k = 1;
    return 2 * k * int64_t(usize);
}

SampleResult sample_and_extract(const Graph& g, const SeparatedFamily& fam, const VertexSet& U,
                                const VertexSet& V, const ProbVector& p, const Fraction& delta,
                                uint64_t seed, int retries) {
    int n = g.order();
    int t = int(fam.members.size());
    int64_t nv = V.count();
    if (t == 0) return {VertexSet(n), VertexSet(n), 0, 0};
    for (size_t i = 0; i < fam.members.size(); ++i)
        for (size_t j = i + 1; j < fam.members.size(); ++j)
            if (lt_scaled(sym_diff_size(g, fam.members[i], fam.members[j], V), delta, nv))
                throw PreconditionViolated("family delta-diverse within V",
                                           std::to_string(fam.members[i]) + "," +
                                               std::to_string(fam.members[j]));
    if (retries < 1) throw PreconditionViolated("retries >= 1", std::to_string(retries));

    const double band = std::sqrt(double(nv));
    const int64_t ej_cap = ej_threshold(delta, t);
    VertexSet best_subset(n), best_detail(n);
    int best_score = -1;

    for (int attempt = 0; attempt < retries; ++attempt) {
        Rng rng(mix_seed(seed, uint64_t(attempt)));
        VertexSet w(n);
        V.for_each([&](int v) {
            if (rng.chance(p.truncated[static_cast<size_t>(v)])) w.set(v);
        });
        VertexSet uw = U | w;

        VertexSet balanced(n);
        std::vector<int> deg(static_cast<size_t>(t));
        for (int i = 0; i < t; ++i) {
            int u = fam.members[static_cast<size_t>(i)];
            deg[static_cast<size_t>(i)] = g.degree_in(u, uw);
            if (std::fabs(double(deg[static_cast<size_t>(i)]) - fam.expected[static_cast<size_t>(i)]) <= band)
                balanced.set(u);
        }

        // a lone family member forms a distinct set on its own
        if (t == 1)
            return {std::move(w), from_vector(n, fam.members), balanced.count(), attempt + 1};

        // J: pairs close in expectation that realized the same degree
        std::vector<std::pair<int, int>> jedges;
        for (int i = 0; i < t; ++i)
            for (int j = i + 1; j < t; ++j)
                if (std::fabs(fam.expected[static_cast<size_t>(i)] - fam.expected[static_cast<size_t>(j)]) <= 2 * band &&
                    deg[static_cast<size_t>(i)] == deg[static_cast<size_t>(j)])
                    jedges.emplace_back(fam.members[static_cast<size_t>(i)], fam.members[static_cast<size_t>(j)]);

        VertexSet distinct =
            greedy_independent_set(Graph::from_edges(n, jedges), balanced);
        bool ok = 2 * balanced.count() >= t && int64_t(jedges.size()) <= ej_cap;

        // re-check the advertised postcondition by brute degree comparison
        {
            std::vector<int> seen;
            distinct.for_each([&](int u) { seen.push_back(g.degree_in(u, uw)); });
            std::sort(seen.begin(), seen.end());
            if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
                throw Error("sample_and_extract: distinct set has a degree collision");
        }

        if (ok) return {std::move(w), std::move(distinct), balanced.count(), attempt + 1};
        if (distinct.count() > best_score) {
            best_score = distinct.count();
            best_subset = uw;
            best_detail = distinct;
        }
    }
    throw RetriesExhausted("sample_and_extract", retries, std::move(best_subset),
                           std::move(best_detail), best_score);
}

PipelineResult run_pipeline(const Graph& g, const PipelineParams& params) {
    auto t0 = std::chrono::steady_clock::now();
    int n = g.order();
    if (!(params.delta.num > 0 && params.delta.num <= params.delta.den))
        throw PreconditionViolated("delta in (0, 1]", params.delta.str());
    if (params.retries < 1)
        throw PreconditionViolated("retries >= 1", std::to_string(params.retries));

    PipelineResult res;
    res.record.N = n;
    res.record.seed = params.seed;
    res.record.delta = params.delta;
    res.subset = VertexSet(n);
    res.distinct_set = VertexSet(n);
    auto finish = [&] {
        res.record.distinct_count = res.distinct_count;
        res.record.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
        return res;
    };
    if (n == 0) return finish();

    int target = params.u_target;
    if (target < 0) throw PreconditionViolated("u_target >= 0", std::to_string(target));
    if (target == 0)  // ceil(n^(2/3) / 2): smallest t with 8 t^3 >= n^2
        for (target = 1; (__int128)8 * target * target * target < (__int128)n * n;) ++target;

    VertexSet U = extract_diverse_set(g, params.delta, target);
    VertexSet V = g.vertices();
    V.and_not(U);
    int64_t nv = V.count();

    if (nv == 0) {
        // no room to sample; a single vertex still carries one distinct degree
        res.subset = U;
        res.distinct_set.set(U.first());
        res.distinct_count = 1;
        res.record.u_size = U.count();
        res.record.uprime_size = 1;
        res.record.balanced_size = 1;
        return finish();
    }

    U = truncate_lowest(U, std::max(1, shrink_cap(params.delta, int(nv))));
    V = g.vertices();
    V.and_not(U);
    nv = V.count();
    res.record.u_size = U.count();

    // redraw m until some vertex is good (succeeds with probability > 1/2)
    ProbVector p;
    VertexSet good(n);
    int draws = 0;
    while (true) {
        std::tie(p, good) = build_prob_vector(g, U, V, params.delta,
                                              mix_seed(params.seed, 1, uint64_t(draws)));
        ++draws;
        if (good.any()) break;
        if (draws >= params.retries)
            throw RetriesExhausted("build_prob_vector good set", draws, U, VertexSet(n), 0);
    }
    res.record.retries_used = draws - 1;

    SeparatedFamily fam = select_separated(g, U, good, V, p);
    res.record.uprime_size = int(fam.members.size());

    SampleResult s = sample_and_extract(g, fam, U, V, p, params.delta,
                                        mix_seed(params.seed, 2), params.retries);
    res.record.balanced_size = s.balanced_size;
    res.record.retries_used += s.attempts - 1;

    res.subset = U | s.W;
    res.distinct_set = s.distinct_set;
    res.distinct_count = s.distinct_set.count();
    if (degree_profile(g, res.subset).distinct_count < res.distinct_count)
        throw Error("run_pipeline: profile contradicts certified distinct set");
    return finish();
}

}  // namespace ddg::pipeline
