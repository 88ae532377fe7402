#pragma once

#include <string>

#include "ddg/control_witness.hpp"
#include "ddg/fraction.hpp"
#include "ddg/graph.hpp"

namespace ddg::oracle {

struct FWitness {
    VertexSet subset;
    int distinct_count = 0;
};

enum class HomKind { clique, independent };

struct HomWitness {
    VertexSet subset;
    HomKind kind = HomKind::clique;
    int size = 0;
};

// Maximum number of distinct degrees over all nonempty induced subgraphs.
// Gray-code subset scan, split over OpenMP workers with a deterministic
// (count desc, numerically-least subset) merge. Throws CapExceeded past cap.
FWitness exact_f(const Graph& g, int cap = 24);
// plain serial reference twin, kept for testing the parallel kernel
FWitness exact_f_serial(const Graph& g, int cap = 24);

// max(max clique, max independent set) via coloring-bounded branch and bound
// on g and its complement; ties resolve to kind=clique.
HomWitness exact_hom(const Graph& g, int cap = 64);
// exposed separately for independence-number checks (clique of complement)
VertexSet max_clique(const Graph& g, int cap = 64);

// Largest delta-diverse subset: pairwise |N(u) xor N(v)| >= delta * n, the
// comparison done in exact rational arithmetic.
VertexSet exact_max_diverse(const Graph& g, const Fraction& delta, int cap = 40);

enum class ControlCheck {
    ok,
    empty_a,
    vertex_out_of_range,
    shape_mismatch,  // Bparts count != k, or an empty C part
    overlapping_sets,
    c_part_too_small,
    condition_i,   // some F[a_i, C_j] neither empty nor complete
    condition_ii,  // equal C-neighbourhoods but equal F[A∪B]-degrees
};

struct ControlCheckResult {
    ControlCheck code = ControlCheck::ok;
    int detail_i = -1, detail_j = -1;
    explicit operator bool() const { return code == ControlCheck::ok; }
    std::string str() const;
};

ControlCheckResult verify_control_graph(const Graph& g, const ControlGraphWitness& w);

}  // namespace ddg::oracle
