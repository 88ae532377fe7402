#include "ddg/control.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ddg/errors.hpp"
#include "ddg/oracle.hpp"
#include "ddg/rng.hpp"

namespace ddg::control {

namespace {

long long sat_ll(__int128 v) {
    const __int128 hi = std::numeric_limits<long long>::max();
    return v > hi ? (long long)hi : (long long)v;
}

int count_distinct_sorted(std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    return int(std::unique(v.begin(), v.end()) - v.begin());
}

}  // namespace

AssemblyParams paper_params(int k) {
    if (k < 1) throw PreconditionViolated("k >= 1", std::to_string(k));
    __int128 k2 = (__int128)k * k;
    __int128 d1 = ((__int128)1 << 11) * k2;
    __int128 delta = ((__int128)1 << 25) * k2 * k2;
    __int128 delta1 = ((__int128)1 << 5) * delta * k;
    __int128 t = ((__int128)1 << 4) * delta1 * k2;
    __int128 n0 = ((__int128)1 << 9) * delta1 * k2 * k2;
    AssemblyParams p;
    p.k = k;
    p.D1 = int(std::min<__int128>(d1, std::numeric_limits<int>::max()));
    p.Delta = sat_ll(delta);
    p.Delta1 = sat_ll(delta1);
    p.T = sat_ll(t);
    p.n0 = sat_ll(n0);
    p.paper_faithful = true;
    return p;
}

long long phi(long long x, int n) {
    if (n < 2) throw PreconditionViolated("n >= 2", std::to_string(n));
    if (x <= 0) return 0;
    return (x + n - 2) / (n - 1);
}

ControlGraphWitness build_control_greedy(const Graph& g, int k, int n, long long Delta,
                                         const VertexSet& W, const VertexSet& U,
                                         bool alpha_checked) {
    const int N = g.order();
    if (k < 1) throw PreconditionViolated("k >= 1", std::to_string(k));
    if (n < 2) throw PreconditionViolated("n >= 2", std::to_string(n));
    if (Delta < 0) throw PreconditionViolated("Delta >= 0", std::to_string(Delta));
    if (W.size_bits() != N || U.size_bits() != N)
        throw PreconditionViolated("W, U sized to g", "bit-length mismatch");
    if (W.intersects(U)) throw PreconditionViolated("W and U disjoint", "overlap");

    VertexSet V = W;
    V |= U;
    const long long nv = V.count();
    if ((__int128)n < (__int128)4 * k * Delta)
        throw PreconditionViolated("n >= 4*k*Delta",
                                   "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                       " Delta=" + std::to_string(Delta));
    if (nv <= (long long)(k - 1) * (n - 1))
        throw PreconditionViolated("|W ∪ U| > (k-1)(n-1)", std::to_string(nv));
    if (2 * (long long)U.count() > n)
        throw PreconditionViolated("|U| <= n/2", std::to_string(U.count()));
    int over = -1;
    V.for_each([&](int v) {
        if (over < 0 && g.degree_in(v, W) > Delta) over = v;
    });
    if (over >= 0)
        throw PreconditionViolated("deg_W <= Delta", "vertex " + std::to_string(over) + " has " +
                                                         std::to_string(g.degree_in(over, W)));
    if (!alpha_checked) {
        if (nv > 64) throw CapExceeded("build_control_greedy alpha check", int(nv), 64);
        auto ig = induced(g, V);
        auto is = oracle::max_clique(complement(ig.graph));
        if ((long long)is.count() >= n)
            throw PreconditionViolated("alpha < n",
                                       "independent set of size " + std::to_string(is.count()));
    }

    // levels k..2: take a maximum-degree vertex, give it its j-1 lowest
    // neighbours as B_j, then delete U, a_j and everything seen by B_j ∪ {a_j}
    VertexSet alive = V;
    std::vector<int> A(static_cast<size_t>(k), -1);
    std::vector<std::vector<int>> B(static_cast<size_t>(k));
    for (int j = k; j >= 2; --j) {
        if (alive.none()) throw Error("build_control_greedy: level " + std::to_string(j) +
                                      " has no surviving vertices");
        int aj = -1, best = -1;
        alive.for_each([&](int v) {
            int d = g.degree_in(v, alive);
            if (d > best) {
                best = d;
                aj = v;
            }
        });
        if (best < j - 1) throw DegreeShortfall(j, j - 1, best);
        std::vector<int> bj;
        VertexSet nb = g.row(aj);
        nb &= alive;
        nb.for_each([&](int v) {
            if (int(bj.size()) < j - 1) bj.push_back(v);
        });
        A[static_cast<size_t>(j - 1)] = aj;
        B[static_cast<size_t>(j - 1)] = bj;

        VertexSet del = U;
        del.set(aj);
        del |= g.row(aj);
        for (int b : bj) del |= g.row(b);
        del &= alive;
        long long removed = del.count();
        if (removed > (long long)n - 1)
            throw Error("build_control_greedy: level " + std::to_string(j) + " removed " +
                        std::to_string(removed) + " > n-1 vertices");
        alive.and_not(del);
    }

    if (alive.none()) throw Error("build_control_greedy: no vertex survives to level 1");
    int a1 = alive.first();
    A[0] = a1;
    VertexSet C = alive;
    C &= W;
    C.and_not(g.row(a1));
    C.reset(a1);

    // deletion accounting of the proof; the k = 1 base loses one extra
    // vertex because a_1 itself cannot stay in C
    long long slack = (k == 1) ? 1 : 0;
    if ((__int128)C.count() < (__int128)W.count() - (__int128)k * k * Delta - slack)
        throw Error("build_control_greedy: |C| fell below |W| - k^2*Delta");

    ControlGraphWitness w;
    w.A = A;
    w.Bparts = B;
    // a C smaller than k^2-1 cannot be a part; dropping it is still a valid
    // witness because the B-structure alone makes the A-degrees 0..k-1
    if (C.any() && (long long)C.count() >= (long long)k * k - 1) w.Cparts.push_back(C.to_vector());

    auto chk = oracle::verify_control_graph(g, w);
    if (!chk) throw Error("build_control_greedy: witness failed verification: " + chk.str());
    return w;
}

VertexSet distinct_from_control(const Graph& g, const ControlGraphWitness& w, uint64_t seed,
                                int retries) {
    if (retries < 1) throw PreconditionViolated("retries >= 1", std::to_string(retries));
    auto chk = oracle::verify_control_graph(g, w);
    if (!chk) throw PreconditionViolated("verify_control_graph(g, w)", chk.str());
    const int n = g.order();
    VertexSet ab = w.a_set(n);
    ab |= w.b_set(n);

    int best_score = -1;
    VertexSet best(n);
    for (int attempt = 0; attempt < retries; ++attempt) {
        Rng rng(mix_seed(seed, uint64_t(attempt)));
        VertexSet fp = ab;
        for (const auto& cp : w.Cparts) {
            int m = int(rng.below(uint64_t(cp.size()) + 1));  // uniform in [0, |C_i|]
            for (int i = 0; i < m; ++i) fp.set(cp[static_cast<size_t>(i)]);
        }
        std::vector<int> degs;
        degs.reserve(w.A.size());
        for (int a : w.A) degs.push_back(g.degree_in(a, fp));
        int distinct = count_distinct_sorted(degs);
        if (distinct == int(w.A.size())) return fp;
        if (distinct > best_score) {
            best_score = distinct;
            best = fp;
        }
    }
    throw RetriesExhausted("distinct_from_control", retries, best, VertexSet(n),
                           best_score);
}

Association associate_exceptional(const Graph& g, const structure::BlowupDescription& bd,
                                  long long Delta1) {
    const int n = g.order();
    VertexSet W = bd.w_set();
    Association assoc;
    assoc.Usets.assign(bd.parts.size(), VertexSet(n));
    assoc.uncovered = VertexSet(n);
    bd.R.for_each([&](int v) {
        bool any = false;
        for (size_t i = 0; i < bd.centers.size(); ++i) {
            if (sym_diff_size_excl(g, v, bd.centers[i], W) <= Delta1) {
                assoc.Usets[i].set(v);
                any = true;
            }
        }
        if (!any) assoc.uncovered.set(v);
    });
    return assoc;
}

namespace {

// largest adjacency-signature class over `anchors`, ties to the class of the
// lowest-index member; uniform subsets stay uniform, so every complete/empty
// relation that already held keeps holding on the trimmed part
std::vector<int> dominant_signature_class(const Graph& g, const std::vector<int>& anchors,
                                          const std::vector<int>& part) {
    std::map<std::vector<bool>, std::vector<int>> classes;
    for (int v : part) {
        std::vector<bool> sig;
        sig.reserve(anchors.size());
        for (int a : anchors) sig.push_back(g.has_edge(a, v));
        classes[sig].push_back(v);
    }
    const std::vector<int>* best = nullptr;
    for (auto& [sig, members] : classes)
        if (!best || members.size() > best->size() ||
            (members.size() == best->size() && members.front() < best->front()))
            best = &members;
    return best ? *best : std::vector<int>{};
}

}  // namespace

ControlGraphWitness assemble_from_blowup(const Graph& g, const structure::BlowupDescription& bd,
                                         const AssemblyParams& params, uint64_t seed) {
    (void)seed;  // the construction is greedy; randomness only enters extraction
    const int N = g.order();
    const int k = params.k;
    const int n = params.n;
    if (k < 1) throw PreconditionViolated("k >= 1", std::to_string(k));
    if (n < 2) throw PreconditionViolated("n >= 2", std::to_string(n));
    if (params.Delta < 0 || params.Delta1 < 0)
        throw PreconditionViolated("Delta, Delta1 >= 0", "assembly");
    if (params.paper_faithful) {
        auto pp = paper_params(k);
        if (params.D1 != pp.D1 || params.Delta != pp.Delta || params.Delta1 != pp.Delta1 ||
            params.T != pp.T || params.n0 != pp.n0)
            throw PreconditionViolated("paper-faithful constants", "derived-from-k values");
    }
    if (!structure::verify_perturbation(g, bd))
        throw PreconditionViolated("bd passes verify_perturbation", "assembly");
    if (!structure::verify_nondegenerate(bd))
        throw PreconditionViolated("bd passes verify_nondegenerate", "assembly");
    const int M = int(bd.parts.size());
    if (M == 0) throw PreconditionViolated("bd has parts", "empty description");

    auto assoc = associate_exceptional(g, bd, params.Delta1);
    const bool use_a0 = assoc.uncovered.any();
    const int a0 = use_a0 ? assoc.uncovered.first() : -1;
    // a_0's adjacency splits every round part, so those are carved at double
    // size and trimmed back after normalisation
    const long long K = (use_a0 ? 2LL : 1LL) * k * k;

    // rounds process parts in decreasing size ("possibly by relabelling"),
    // ties by part index
    std::vector<int> order(static_cast<size_t>(M));
    for (int i = 0; i < M; ++i) order[static_cast<size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return bd.parts[static_cast<size_t>(a)].count() > bd.parts[static_cast<size_t>(b)].count();
    });

    ControlGraphWitness wit;
    std::vector<std::vector<int>> cparts;

    // an uncovered a_0 gets, per part, a k^2 block on one side of the
    // symmetric difference between N(a_0) and the part's ideal row; the
    // parts are cleaned below so every surviving vertex sees those blocks
    // exactly as the pattern does, leaving a_0 the unique dissenter
    VertexSet c0all(static_cast<size_t>(N));
    if (use_a0) {
        wit.A.push_back(a0);
        wit.Bparts.emplace_back();
        for (int r = 0; r < M; ++r) {
            int p = order[static_cast<size_t>(r)];
            std::vector<int> block;
            for (int j = 0; j < M && block.empty(); ++j) {
                for (int side = 0; side < 2 && block.empty(); ++side) {
                    // side 0: a_0 adjacent where the ideal row of p is empty;
                    // side 1: a_0 non-adjacent where it is complete
                    bool ideal = bd.pattern[static_cast<size_t>(p)][static_cast<size_t>(j)];
                    if (side == 0 ? ideal : !ideal) continue;
                    VertexSet cand = bd.parts[static_cast<size_t>(j)];
                    if (side == 0)
                        cand &= g.row(a0);
                    else
                        cand.and_not(g.row(a0));
                    cand.and_not(c0all);
                    if ((long long)cand.count() < (long long)k * k) continue;
                    cand.for_each([&](int v) {
                        if ((long long)block.size() < (long long)k * k) block.push_back(v);
                    });
                }
            }
            if (block.empty())
                throw AssemblyFailure(0, "no k^2 block separates a_0 from part " +
                                             std::to_string(p));
            for (int v : block) c0all.set(v);
            cparts.push_back(std::move(block));
        }
    }

    // working copies of the parts; the a_0 case keeps only vertices whose
    // adjacency to C_0 agrees with the ideal pattern
    std::vector<VertexSet> wcur(bd.parts.begin(), bd.parts.end());
    if (use_a0) {
        std::vector<VertexSet> c0sets;
        std::vector<int> c0home;  // part housing each block
        for (size_t b = 0; b < cparts.size(); ++b) {
            c0sets.push_back(from_vector(N, cparts[b]));
            int home = -1;
            for (int j = 0; j < M && home < 0; ++j)
                if (bd.parts[static_cast<size_t>(j)].test(cparts[b].front())) home = j;
            c0home.push_back(home);
        }
        for (int p = 0; p < M; ++p) {
            VertexSet keep(static_cast<size_t>(N));
            wcur[static_cast<size_t>(p)].for_each([&](int w) {
                if (c0all.test(w)) return;
                for (size_t b = 0; b < c0sets.size(); ++b) {
                    bool ideal = bd.pattern[static_cast<size_t>(p)][static_cast<size_t>(c0home[b])];
                    int want = ideal ? c0sets[b].count() : 0;
                    if (g.degree_in(w, c0sets[b]) != want) return;
                }
                keep.set(w);
            });
            wcur[static_cast<size_t>(p)] = keep;
        }
    }

    std::optional<Graph> comp;
    auto working = [&](bool complemented) -> const Graph& {
        if (!complemented) return g;
        if (!comp) comp.emplace(complement(g));
        return *comp;
    };

    long long budget = k - (use_a0 ? 1 : 0);
    for (int r = 0; r < M; ++r) {
        const int p = order[static_cast<size_t>(r)];
        const int round_no = r + 1;
        VertexSet Wp = wcur[static_cast<size_t>(p)];
        VertexSet Up(static_cast<size_t>(N));
        long long delta_eff = params.Delta;
        // the merged first round absorbs U_1 when the largest part dominates;
        // with an a_0 in play the round must stay inside W so that every
        // A-vertex sees C_0 ideally
        if (r == 0 && !use_a0 && 2 * (long long)bd.parts[static_cast<size_t>(p)].count() >= n &&
            assoc.Usets[static_cast<size_t>(p)].any() && 2 * (long long)assoc.Usets[static_cast<size_t>(p)].count() <= n) {
            Up = assoc.Usets[static_cast<size_t>(p)];
            delta_eff = 2 * params.Delta1;
        }

        long long ki = std::min(phi((long long)Wp.count() + Up.count(), n), budget);
        VertexSet eset(static_cast<size_t>(N));
        if (ki == 0) {
            // budget exhausted: the part still contributes a C block so that
            // pattern rows distinguish A-vertices of different rounds
            if ((long long)Wp.count() < K)
                throw AssemblyFailure(round_no,
                                      "part " + std::to_string(p) + " exhausted (" +
                                          std::to_string(Wp.count()) + " < " + std::to_string(K) +
                                          " for a C block)");
            std::vector<int> block;
            Wp.for_each([&](int v) {
                if ((long long)block.size() < K) block.push_back(v);
            });
            for (int v : block) eset.set(v);
            cparts.push_back(std::move(block));
        } else {
            ControlGraphWitness rw;
            try {
                rw = build_control_greedy(working(bd.pattern[static_cast<size_t>(p)][static_cast<size_t>(p)]), int(ki), n,
                                          delta_eff, Wp, Up, params.assume_hom_lt_n);
            } catch (const AssemblyFailure&) {
                throw;
            } catch (const Error& e) {
                throw AssemblyFailure(round_no, e.what());
            }
            if (rw.Cparts.empty() || (long long)rw.Cparts[0].size() < K)
                throw AssemblyFailure(round_no, "round C has fewer than K = " + std::to_string(K) +
                                                    " vertices");
            std::vector<int> block(rw.Cparts[0].begin(), rw.Cparts[0].begin() + static_cast<size_t>(K));
            for (size_t i = 0; i < rw.A.size(); ++i) {
                wit.A.push_back(rw.A[i]);
                wit.Bparts.push_back(rw.Bparts[i]);
                eset.set(rw.A[i]);
                for (int b : rw.Bparts[i]) eset.set(b);
            }
            for (int v : block) eset.set(v);
            cparts.push_back(std::move(block));
            budget -= ki;
        }

        // clean later parts: keep only vertices seeing all of E_r exactly as
        // the pattern prescribes
        long long in_w = 0, in_r = 0;
        eset.for_each([&](int v) { bd.R.test(v) ? ++in_r : ++in_w; });
        const long long esz = eset.count();
        for (int r2 = r + 1; r2 < M; ++r2) {
            const int q = order[static_cast<size_t>(r2)];
            bool complete = bd.pattern[static_cast<size_t>(p)][static_cast<size_t>(q)];
            const int want = complete ? int(esz) : 0;
            VertexSet keep(static_cast<size_t>(N));
            wcur[static_cast<size_t>(q)].for_each([&](int w) {
                if (g.degree_in(w, eset) == want) keep.set(w);
            });
            long long removed = (long long)wcur[static_cast<size_t>(q)].count() - keep.count();
            __int128 bound = (__int128)in_w * bd.delta + (__int128)in_r * (params.Delta1 + bd.delta);
            if ((__int128)removed > bound)
                throw AssemblyFailure(round_no, "cleaning removed " + std::to_string(removed) +
                                                    " vertices from part " + std::to_string(q) +
                                                    ", more than the perturbation allows");
            wcur[static_cast<size_t>(q)] = keep;
        }
    }

    // normalisation: trim every C part to one adjacency class of A, fixing
    // the spots where a_0 (or a merged-round exceptional vertex) cuts across
    // a block; clean distinguishers are one-class already and survive intact
    for (auto& cp : cparts) cp = dominant_signature_class(g, wit.A, cp);
    wit.Cparts = cparts;

    auto chk = oracle::verify_control_graph(g, wit);
    if (!chk) throw AssemblyFailure(M, "final verification: " + chk.str());

    // displayed size estimate, meaningful only at theorem scale
    if (params.paper_faithful && (long long)n >= params.n0) {
        __int128 lose = (__int128)4 * M * params.Delta1 * k * k;
        long long want = 0;
        for (int i = 0; i < M; ++i) {
            __int128 x = (__int128)bd.parts[static_cast<size_t>(i)].count() - lose;
            want += phi(sat_ll(x), n);
        }
        if ((long long)wit.A.size() < std::min<long long>(want, k))
            throw Error("assemble_from_blowup: |A| below the displayed estimate");
    }
    return wit;
}

Theorem3Result theorem3_check(const Graph& g, int k, int n, const AssemblyParams& params,
                              uint64_t seed) {
    const int N = g.order();
    if (k < 1) throw PreconditionViolated("k >= 1", std::to_string(k));
    if (n < 2) throw PreconditionViolated("n >= 2", std::to_string(n));
    if ((long long)N <= (long long)(k - 1) * (n - 1))
        throw PreconditionViolated("|V| > (k-1)(n-1)", std::to_string(N));

    Theorem3Result res;
    bool hom_below_n = false;

    if (N <= 64) {
        auto hw = oracle::exact_hom(g);
        if (hw.size >= n) {
            long long inside = 0;
            hw.subset.for_each([&](int v) { inside += g.degree_in(v, hw.subset); });
            long long full = (long long)hw.size * (hw.size - 1);
            bool okay = hw.kind == oracle::HomKind::clique ? inside == full : inside == 0;
            if (!okay) throw Error("theorem3_check: hom witness failed recomputation");
            res.branch = Theorem3Branch::homogeneous;
            res.witness = hw.subset;
            res.value = hw.size;
            return res;
        }
        hom_below_n = true;
        res.diagnostics.push_back("hom oracle: largest homogeneous set has " +
                                  std::to_string(hw.size) + " < n = " + std::to_string(n));
    } else {
        res.diagnostics.push_back("hom oracle skipped: " + std::to_string(N) +
                                  " vertices exceed the 64-vertex cap");
    }

    try {
        int threshold = std::max(1, params.D1 / 2);
        auto sp = structure::coarse_partition(g, threshold);
        structure::StructureParams stp;
        stp.D1 = params.D1;
        stp.D2 = sat_ll((__int128)8 * (long long)sp.parts.size() * params.D1);
        stp.Delta = params.Delta;
        stp.T = params.T;
        stp.paper_faithful = params.paper_faithful;
        auto bd = structure::refine_to_blowup(g, sp, stp);
        AssemblyParams ap = params;
        ap.k = k;
        ap.n = n;
        if (hom_below_n) ap.assume_hom_lt_n = true;
        auto wit = assemble_from_blowup(g, bd, ap, mix_seed(seed, 1));
        auto subset = distinct_from_control(g, wit, mix_seed(seed, 2));
        auto prof = degree_profile(g, subset);
        if (prof.distinct_count >= k) {
            res.branch = Theorem3Branch::distinct;
            res.witness = subset;
            res.value = prof.distinct_count;
            return res;
        }
        res.diagnostics.push_back("assembly extracted only " +
                                  std::to_string(prof.distinct_count) + " distinct degrees");
    } catch (const Error& e) {
        res.diagnostics.push_back(std::string("structure/assembly: ") + e.what());
    }

    if (N <= 24) {
        auto fw = oracle::exact_f(g);
        if (fw.distinct_count >= k) {
            if (degree_profile(g, fw.subset).distinct_count != fw.distinct_count)
                throw Error("theorem3_check: f witness failed recomputation");
            res.branch = Theorem3Branch::distinct;
            res.witness = fw.subset;
            res.value = fw.distinct_count;
            return res;
        }
        res.diagnostics.push_back("f oracle: maximum is " + std::to_string(fw.distinct_count) +
                                  " < k = " + std::to_string(k));
    } else {
        res.diagnostics.push_back("f oracle skipped: " + std::to_string(N) +
                                  " vertices exceed the 24-vertex cap");
    }

    res.branch = Theorem3Branch::inconclusive;
    return res;
}

}  // namespace ddg::control
