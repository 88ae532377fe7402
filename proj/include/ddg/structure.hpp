#pragma once

#include <vector>

#include "ddg/graph.hpp"

namespace ddg::structure {

struct SimilarityPartition {
    std::vector<VertexSet> parts;  // ordered by center index
    std::vector<int> centers;      // centers[i] in parts[i]
    int threshold = 0;             // centers pairwise >= threshold, members < threshold from center
};

struct BlowupDescription {
    std::vector<VertexSet> parts;  // cover W = union
    PatternMatrix pattern;
    long long delta = 0;  // certified perturbation bound
    VertexSet R;          // exceptional vertices (small parts), disjoint from W
    std::vector<int> centers;  // lowest-index vertex per part

    VertexSet w_set() const {
        VertexSet s(R.size_bits());
        for (const auto& p : parts) s |= p;
        return s;
    }
};

struct StructureParams {
    int D1 = 0;          // within-part similarity certificate of the input partition
    long long D2 = 0;    // merge threshold (proof formula: 8 * L * D1)
    long long Delta = 0;  // perturbation bound for the output description
    long long T = 0;      // parts of size <= T are exceptional
    bool paper_faithful = false;  // enforce the paper's constant relations
};

enum class PairClass { sparse, dense };

// Greedy maximal center set scanned by vertex index, then assignment of every
// vertex to its lowest-index center closer than `threshold`.
SimilarityPartition coarse_partition(const Graph& g, int threshold);

// Dichotomy: either every v in V1 has <= 4D neighbours in V2 (sparse) or
// every v has >= |V2 \ {v}| - 4D (dense). Preconditions (|V1| >= max(2D, 1),
// within-part similarity <= D with self-pairs excluded) are re-checked.
// When both clauses hold (possible only if |V2| <= 8D+1) the side nearer the
// observed counts wins. Neighbourhoods are restricted to `ambient`.
PairClass classify_pair(const Graph& g, const VertexSet& V1, const VertexSet& V2, long long D,
                        const VertexSet& ambient);
PairClass classify_pair(const Graph& g, const VertexSet& V1, const VertexSet& V2, long long D);

// Splits off parts of size <= T into R, repeatedly merges the lowest-index
// part pair with a witness pair of W-restricted symmetric difference <= D2,
// then infers the pattern with classify_pair (D = Delta/4) and certifies the
// result against verify_perturbation / verify_nondegenerate.
BlowupDescription refine_to_blowup(const Graph& g, const SimilarityPartition& sp,
                                   const StructureParams& params);

// Delta-perturbation check of g[W] against the pattern blowup: for all parts
// X, Y and v, v' in X, |(N_g(v) ∩ Y) xor (N_H(v') ∩ Y)| <= delta, with the
// pair {v, v'} excluded from both sides (an exact blowup is a 0-perturbation
// of itself under this convention).
bool verify_perturbation(const Graph& g, const BlowupDescription& bd);

// no two parts may be merged: merging X, Y requires pattern[X][Z] ==
// pattern[Y][Z] for all other Z and pattern[X][X] == pattern[Y][Y] ==
// pattern[X][Y]
bool verify_nondegenerate(const PatternMatrix& pattern);
bool verify_nondegenerate(const BlowupDescription& bd);

struct SimilarityAudit {
    int trials = 0;
    double mean_ej = 0;          // collision-graph edges among centers in W
    int max_ej = 0;
    double frac_half_centers = 0;  // trials with |W ∩ centers| >= |centers|/2
};

// The randomized experiment behind the coarse-partition size bound: sample
// W uniformly, build the collision graph J on centers ∩ W (equal degree in
// g[W]), report e(J) statistics. Diagnostic only; nothing depends on it.
SimilarityAudit audit_similarity_partition(const Graph& g, const SimilarityPartition& sp,
                                           int trials, uint64_t seed);

}  // namespace ddg::structure
