#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ddg/experiment.hpp"
#include "ddg/fraction.hpp"
#include "ddg/graph.hpp"

namespace ddg::pipeline {

// probability vector over V: base is 1/2 + sum_u (m_u/N) u_v, truncated is
// base clamped to [0.1, 0.9]; entries outside V are meaningless
struct ProbVector {
    std::vector<double> base;
    std::vector<double> truncated;
    VertexSet V;
};

struct SeparatedFamily {
    std::vector<int> members;      // ascending vertex ids (the family U')
    std::vector<double> expected;  // aligned expected degrees
};

struct PipelineParams {
    Fraction delta{1, 5};
    int u_target = 0;  // 0 = ceil(n^(2/3) / 2)
    int retries = 64;
    uint64_t seed = 0;
};

struct PipelineResult {
    VertexSet subset;       // U ∪ W
    VertexSet distinct_set; // certified pairwise-distinct-degree vertices
    int distinct_count = 0; // == |distinct_set|
    ExperimentRecord record;
};

// conflict graph: edge u~v iff |N(u) xor N(v)| < delta * n (exact compare);
// OpenMP kernel plus a serial reference twin
Graph build_conflict_graph(const Graph& g, const Fraction& delta);
Graph build_conflict_graph_serial(const Graph& g, const Fraction& delta);

// greedy independent set of the conflict graph, truncated to the `target`
// lowest-index members when larger
VertexSet extract_diverse_set(const Graph& g, const Fraction& delta, int target);

// returns (p, good). Requires |U| <= |V|^(2/3) (the caller shrinks U per the
// proof). good = u with at most delta*|V|/2 coordinates of p - (m_u/N)u
// outside [0.2, 0.8]; all threshold comparisons are exact in integers.
std::pair<ProbVector, VertexSet> build_prob_vector(const Graph& g, const VertexSet& U,
                                                   const VertexSet& V, const Fraction& delta,
                                                   uint64_t seed);
// deterministic-m variant used by tests and by build_prob_vector itself;
// m is indexed by vertex id and read only at U's positions
std::pair<ProbVector, VertexSet> build_prob_vector_with_m(const Graph& g, const VertexSet& U,
                                                          const VertexSet& V,
                                                          const Fraction& delta,
                                                          const std::vector<int64_t>& m);

// E d(u) = d_{G[U]}(u) + sum_{v in N(u) ∩ V} p'_v, indexed by vertex id
std::vector<double> expected_degrees(const Graph& g, const VertexSet& U, const VertexSet& V,
                                     const ProbVector& p);

// greedy independent set of the "expected degrees within 1" event graph on
// U_good; needs the full U because expected degrees carry the d_{G[U]} term
SeparatedFamily select_separated(const Graph& g, const VertexSet& U, const VertexSet& U_good,
                                 const VertexSet& V, const ProbVector& p);

struct SampleResult {
    VertexSet W;
    VertexSet distinct_set;
    int balanced_size = 0;
    int attempts = 0;
};

// samples W ~ p' until the balanced set B covers half of U' and the
// equal-degree pair graph J is sparse, then Turán-extracts from J[B];
// throws RetriesExhausted (carrying the best attempt) past `retries`
SampleResult sample_and_extract(const Graph& g, const SeparatedFamily& fam, const VertexSet& U,
                                const VertexSet& V, const ProbVector& p, const Fraction& delta,
                                uint64_t seed, int retries);

// e(J) acceptance threshold: 2 * max(1, ceil(16 * delta^(-3/2))) * usize
int64_t ej_threshold(const Fraction& delta, int usize);

// the full chain: extract -> shrink -> prob vector -> expected degrees ->
// separated family -> sample; distinct_count is the certified |distinct_set|
PipelineResult run_pipeline(const Graph& g, const PipelineParams& params);

}  // namespace ddg::pipeline
