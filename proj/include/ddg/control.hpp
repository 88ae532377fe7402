#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddg/control_witness.hpp"
#include "ddg/graph.hpp"
#include "ddg/structure.hpp"

namespace ddg::control {

struct AssemblyParams {
    int k = 1;
    int n = 4;
    int D1 = 0;
    long long Delta = 0;
    long long Delta1 = 0;
    long long T = 0;
    long long n0 = 0;
    bool paper_faithful = false;
    // when the instance is too large for the hom oracle the caller certifies
    // hom(g[...]) < n instead of having it checked
    bool assume_hom_lt_n = false;
};

// paper-faithful constants from k: D1 = 2^11 k^2, Delta = 2^25 k^4,
// Delta1 = 2^5 Delta k, T = 2^4 Delta1 k^2, n0 = 2^9 Delta1 k^4
AssemblyParams paper_params(int k);

// phi(x) = ceil(x / (n-1)) for x > 0, else 0
long long phi(long long x, int n);

// Greedy k-level construction of a control-graph witness inside the graph on
// W ∪ U: level i takes a maximum-degree surviving vertex a_i, its i-1
// lowest-index neighbours as B_i, and deletes U, a_i and N(B_i ∪ {a_i});
// C is what survives level 1 outside N[a_1]. At most n-1 vertices die per
// level (asserted). Preconditions (n >= 4kDelta, |W∪U| > (k-1)(n-1),
// |U| <= n/2, every vertex <= Delta neighbours in W, alpha < n) are checked;
// alpha via the oracle when |W∪U| is within cap, else alpha_checked must
// certify it.
ControlGraphWitness build_control_greedy(const Graph& g, int k, int n, long long Delta,
                                         const VertexSet& W, const VertexSet& U,
                                         bool alpha_checked = false);

// Random prefix subsets C_i' (|C_i'| ~ uniform [0, |C_i|]) until all A-degrees
// in F' = A ∪ B ∪ C' are pairwise distinct; per-trial success probability
// exceeds 1/2, so retries rarely bind. Throws RetriesExhausted past the cap.
VertexSet distinct_from_control(const Graph& g, const ControlGraphWitness& w, uint64_t seed,
                                int retries = 64);

struct Association {
    std::vector<VertexSet> Usets;  // Usets[i]: R-vertices within Delta1 of center w_i on W
    VertexSet uncovered;           // R-vertices qualifying for no part
};

Association associate_exceptional(const Graph& g, const structure::BlowupDescription& bd,
                                  long long Delta1);

// Multi-round assembly over a blowup description: one build_control_greedy
// round per part (largest first) on g or its complement per the diagonal
// pattern, cleaning later parts to the ideal pattern after each round;
// uncovered exceptional vertices are handled through an a_0 with dedicated
// distinguishing C-parts. Rounds stop once |A| reaches params.k.
ControlGraphWitness assemble_from_blowup(const Graph& g, const structure::BlowupDescription& bd,
                                         const AssemblyParams& params, uint64_t seed);

enum class Theorem3Branch { homogeneous, distinct, inconclusive };

struct Theorem3Result {
    Theorem3Branch branch = Theorem3Branch::inconclusive;
    VertexSet witness;
    int value = 0;  // hom size or distinct-degree count achieved
    std::vector<std::string> diagnostics;
};

// Staged driver: (1) hom oracle when within cap, (2) structure + assembly +
// extraction, (3) exact_f when within cap. Witnesses are verified before
// being returned; inconclusive carries per-stage diagnostics.
Theorem3Result theorem3_check(const Graph& g, int k, int n, const AssemblyParams& params,
                              uint64_t seed);

}  // namespace ddg::control
