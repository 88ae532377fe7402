#include "ddg/structure.hpp"

#include <algorithm>
#include <string>

#include "ddg/rng.hpp"

namespace ddg::structure {

namespace {

std::string pair_str(int u, int v) {
    return "{" + std::to_string(u) + "," + std::to_string(v) + "}";
}

// worst-case mismatch of v's row against the ideal (full or empty) on part,
// with v itself discounted — see verify_perturbation
int ideal_mismatch(const Graph& g, int v, const VertexSet& part, bool complete) {
    int c;
    if (complete) {
        c = part.count() - count_and(g.row(v), part);
        if (part.test(v)) --c;
    } else {
        c = count_and(g.row(v), part);
    }
    return c;
}

}  // namespace

SimilarityPartition coarse_partition(const Graph& g, int threshold) {
    if (threshold < 1) throw PreconditionViolated("threshold >= 1", std::to_string(threshold));
    int n = g.order();
    VertexSet all = g.vertices();

    SimilarityPartition sp;
    sp.threshold = threshold;
    for (int v = 0; v < n; ++v) {
        bool far = true;
        for (int c : sp.centers)
            if (sym_diff_size(g, v, c, all) < threshold) {
                far = false;
                break;
            }
        if (far) sp.centers.push_back(v);
    }
    sp.parts.assign(sp.centers.size(), VertexSet(n));
    for (int v = 0; v < n; ++v) {
        int home = -1;
        for (size_t i = 0; i < sp.centers.size(); ++i)
            if (sym_diff_size(g, v, sp.centers[i], all) < threshold) {
                home = int(i);
                break;
            }
        if (home < 0) throw Error("coarse_partition: maximality broken");  // unreachable
        sp.parts[static_cast<size_t>(home)].set(v);
    }

    // triangle inequality of the symmetric difference gives <= 2*threshold
    for (const auto& part : sp.parts) {
        auto vs = part.to_vector();
        for (size_t i = 0; i < vs.size(); ++i)
            for (size_t j = i + 1; j < vs.size(); ++j)
                if (sym_diff_size(g, vs[i], vs[j], all) > 2 * threshold)
                    throw Error("coarse_partition: within-part bound broken at " +
                                pair_str(vs[i], vs[j]));
    }
    return sp;
}

PairClass classify_pair(const Graph& g, const VertexSet& V1, const VertexSet& V2, long long D,
                        const VertexSet& ambient) {
    if (D < 0) throw PreconditionViolated("D >= 0", std::to_string(D));
    auto v1 = V1.to_vector();
    if ((long long)v1.size() < std::max(2 * D, 1LL))
        throw PreconditionViolated("|V1| >= max(2D, 1)", std::to_string(v1.size()));
    if (!V1.subset_of(ambient) || !V2.subset_of(ambient))
        throw PreconditionViolated("V1, V2 within ambient", "subset check failed");

    auto check_similar = [&](const std::vector<int>& vs, const char* which) {
        for (size_t i = 0; i < vs.size(); ++i)
            for (size_t j = i + 1; j < vs.size(); ++j)
                if (sym_diff_size_excl(g, vs[i], vs[j], ambient) > D)
                    throw PreconditionViolated(std::string(which) + " pairwise similarity <= D",
                                               pair_str(vs[i], vs[j]));
    };
    auto v2 = V2.to_vector();
    check_similar(v1, "V1");
    check_similar(v2, "V2");

    bool all_sparse = true, all_dense = true;
    long long sum_deg = 0, sum_cap = 0;
    for (int v : v1) {
        int cap = V2.count() - (V2.test(v) ? 1 : 0);  // v cannot neighbour itself
        int c = g.degree_in(v, V2);
        sum_deg += c;
        sum_cap += cap;
        if (c > 4 * D) all_sparse = false;
        if (c < cap - 4 * D) all_dense = false;
    }
    if (all_sparse && all_dense)  // overlap zone: side nearer the counts wins
        return 2 * sum_deg <= sum_cap ? PairClass::sparse : PairClass::dense;
    if (all_sparse) return PairClass::sparse;
    if (all_dense) return PairClass::dense;
    throw DichotomyViolated("classify_pair: counts match neither clause");
}

PairClass classify_pair(const Graph& g, const VertexSet& V1, const VertexSet& V2, long long D) {
    return classify_pair(g, V1, V2, D, g.vertices());
}

BlowupDescription refine_to_blowup(const Graph& g, const SimilarityPartition& sp,
                                   const StructureParams& params) {
    int n = g.order();
    if (params.D1 < 0 || params.D2 < 0 || params.Delta < 0 || params.T < 0)
        throw PreconditionViolated("params nonnegative", "structure");
    if (params.paper_faithful) {
        long long L = (long long)sp.parts.size();
        if (params.D2 != 8 * L * params.D1 || params.T < 5 * params.Delta ||
            (long long)params.Delta * 5 < 200 * L * L * params.D1)
            throw PreconditionViolated("paper-faithful constant relations",
                                       "D2 = 8LD1 and T >= 5*Delta >= 200 L^2 D1");
    }

    BlowupDescription bd;
    bd.delta = params.Delta;
    bd.R = VertexSet(n);
    std::vector<int> merged_of;  // how many original parts each working part absorbs
    for (const auto& part : sp.parts) {
        if (part.count() <= params.T) {
            bd.R |= part;
        } else {
            bd.parts.push_back(part);
            merged_of.push_back(1);
        }
    }
    VertexSet W = bd.w_set();

    // merge while some cross-part pair sits within D2 in g[W]; lowest pair first
    int initial = int(bd.parts.size());
    int merges = 0;
    for (bool again = true; again;) {
        again = false;
        for (size_t i = 0; i < bd.parts.size() && !again; ++i)
            for (size_t j = i + 1; j < bd.parts.size() && !again; ++j) {
                bool witness = false;
                bd.parts[i].for_each([&](int x) {
                    if (witness) return;
                    bd.parts[j].for_each([&](int y) {
                        if (!witness && sym_diff_size(g, x, y, W) <= params.D2) witness = true;
                    });
                });
                if (witness) {
                    bd.parts[i] |= bd.parts[j];
                    merged_of[i] += merged_of[j];
                    bd.parts.erase(bd.parts.begin() + long(j));
                    merged_of.erase(merged_of.begin() + long(j));
                    again = true;
                    ++merges;
                }
            }
    }
    if (merges > std::max(0, initial - 1)) throw Error("refine_to_blowup: merge count impossible");

    // within-part similarity in g[W]: unmerged parts inherit the coarse bound,
    // merged ones must obey t*D1 + (t-1)*D2 per the merge analysis
    for (size_t i = 0; i < bd.parts.size(); ++i) {
        long long t = merged_of[i];
        long long bound = t >= 2 ? t * params.D1 + (t - 1) * params.D2 : 2LL * sp.threshold;
        auto vs = bd.parts[i].to_vector();
        for (size_t a = 0; a < vs.size(); ++a)
            for (size_t b = a + 1; b < vs.size(); ++b)
                if (sym_diff_size(g, vs[a], vs[b], W) > bound)
                    throw StructureFailure("refine_to_blowup: merged-part similarity " +
                                           pair_str(vs[a], vs[b]) + " exceeds " +
                                           std::to_string(bound));
    }

    int m = int(bd.parts.size());
    for (const auto& part : bd.parts) bd.centers.push_back(part.first());
    bd.pattern.assign(static_cast<size_t>(m), std::vector<bool>(static_cast<size_t>(m), false));
    long long D = params.Delta / 4;
    try {
        for (int i = 0; i < m; ++i)
            for (int j = i; j < m; ++j) {
                bool dense = classify_pair(g, bd.parts[static_cast<size_t>(i)], bd.parts[static_cast<size_t>(j)], D, W) ==
                             PairClass::dense;
                bd.pattern[static_cast<size_t>(i)][static_cast<size_t>(j)] = dense;
                bd.pattern[static_cast<size_t>(j)][static_cast<size_t>(i)] = dense;
            }
    } catch (const PreconditionViolated& e) {
        throw StructureFailure(std::string("refine_to_blowup: classification impossible: ") +
                               e.what());
    }

    if (!verify_perturbation(g, bd))
        throw StructureFailure("refine_to_blowup: output fails the perturbation check");
    if (!verify_nondegenerate(bd))
        throw StructureFailure("refine_to_blowup: output pattern is degenerate");
    return bd;
}

bool verify_perturbation(const Graph& g, const BlowupDescription& bd) {
    int m = int(bd.parts.size());
    for (int a = 0; a < m; ++a) {
        if (bd.parts[static_cast<size_t>(a)].none()) return false;
        for (int b = 0; b < m; ++b) {
            if (a != b && bd.parts[static_cast<size_t>(a)].intersects(bd.parts[static_cast<size_t>(b)])) return false;
        }
    }
    if (bd.R.intersects(bd.w_set())) return false;
    // for v,v' in X the compared sets drop {v,v'}, so the binding case per v
    // is its plain mismatch against the ideal row (v' = v)
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            bool complete = bd.pattern[static_cast<size_t>(a)][static_cast<size_t>(b)];
            bool bad = false;
            bd.parts[static_cast<size_t>(a)].for_each([&](int v) {
                if (!bad && ideal_mismatch(g, v, bd.parts[static_cast<size_t>(b)], complete) > bd.delta)
                    bad = true;
            });
            if (bad) return false;
        }
    return true;
}

bool verify_nondegenerate(const PatternMatrix& pattern) {
    int m = int(pattern.size());
    for (int i = 0; i < m; ++i)
        if (int(pattern[static_cast<size_t>(i)].size()) != m) throw Error("pattern not square");
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            bool mergeable = pattern[static_cast<size_t>(i)][static_cast<size_t>(i)] == pattern[static_cast<size_t>(j)][static_cast<size_t>(j)] &&
                             pattern[static_cast<size_t>(i)][static_cast<size_t>(i)] == pattern[static_cast<size_t>(i)][static_cast<size_t>(j)];
            for (int z = 0; mergeable && z < m; ++z)
                if (z != i && z != j &&
                    pattern[static_cast<size_t>(i)][static_cast<size_t>(z)] != pattern[static_cast<size_t>(j)][static_cast<size_t>(z)])
                    mergeable = false;
            if (mergeable) return false;
        }
    return true;
}

bool verify_nondegenerate(const BlowupDescription& bd) { return verify_nondegenerate(bd.pattern); }

SimilarityAudit audit_similarity_partition(const Graph& g, const SimilarityPartition& sp,
                                           int trials, uint64_t seed) {
    if (trials < 1) throw PreconditionViolated("trials >= 1", std::to_string(trials));
    int n = g.order();
    SimilarityAudit audit;
    audit.trials = trials;
    long long ej_total = 0, half_hits = 0;
    int s = int(sp.centers.size());
    for (int t = 0; t < trials; ++t) {
        Rng rng(mix_seed(seed, uint64_t(t)));
        VertexSet w(n);
        for (int v = 0; v < n; ++v)
            if (rng.next_u64() & 1) w.set(v);
        std::vector<int> in;
        for (int c : sp.centers)
            if (w.test(c)) in.push_back(c);
        int ej = 0;
        for (size_t i = 0; i < in.size(); ++i)
            for (size_t j = i + 1; j < in.size(); ++j)
                if (g.degree_in(in[i], w) == g.degree_in(in[j], w)) ++ej;
        ej_total += ej;
        audit.max_ej = std::max(audit.max_ej, ej);
        if (2 * int(in.size()) >= s) ++half_hits;
    }
    audit.mean_ej = double(ej_total) / trials;
    audit.frac_half_centers = double(half_hits) / trials;
    return audit;
}

}  // namespace ddg::structure
