#pragma once

#include <vector>

#include "ddg/graph.hpp"

namespace ddg {

// Witness for a k-control graph: ordered centers A, one (possibly empty)
// B-part per center, and C split into parts. F is g induced on the union.
struct ControlGraphWitness {
    std::vector<int> A;
    std::vector<std::vector<int>> Bparts;  // Bparts[i] belongs to A[i]
    std::vector<std::vector<int>> Cparts;

    int k() const { return int(A.size()); }

    VertexSet a_set(int n) const { return from_vector(n, A); }
    VertexSet b_set(int n) const {
        VertexSet s(n);
        for (const auto& bp : Bparts)
            for (int v : bp) s.set(v);
        return s;
    }
    VertexSet c_set(int n) const {
        VertexSet s(n);
        for (const auto& cp : Cparts)
            for (int v : cp) s.set(v);
        return s;
    }
    VertexSet f_set(int n) const {
        VertexSet s = a_set(n);
        s |= b_set(n);
        s |= c_set(n);
        return s;
    }
};

}  // namespace ddg
