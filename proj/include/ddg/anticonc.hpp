#pragma once

#include <cstdint>
#include <vector>

#include "ddg/graph.hpp"

namespace ddg::anticonc {

// Mixture split of a Bernoulli(p): X  =d  Y*Z + (1-Y)*(W/2-ish) — concretely,
// X = Z' where Z' is Bernoulli(1/2) with probability w and the constant z
// otherwise. For p in [0.1, 0.9] the returned w is >= 0.2 (up to one ulp at
// the boundary, since fl(0.9) sits just above 9/10) and p = w/2 + (1-w)z
// holds exactly in double arithmetic.
struct Decomposition {
    double w = 0, z = 0;
};
Decomposition bernoulli_decompose(double p);

struct AtomResult {
    int64_t x_star = 0;
    double pmax = 0;
};

// Exact distribution of sum a_i X_i, X_i ~ Bernoulli(p_i) independent, by
// dynamic-programming convolution in a fixed ascending-index order.
// weights must be nonzero; throws CapExceeded if the state table would
// exceed state_cap entries.
AtomResult atom_probability_dp(const std::vector<int64_t>& weights,
                               const std::vector<double>& probs,
                               int64_t state_cap = 10'000'000);

struct McResult {
    double x_star = 0;
    double pmax = 0;
};

// Monte-Carlo estimate of the largest atom. Integer-valued weights are binned
// exactly; otherwise bin_width > 0 is required. Trials run under OpenMP with
// per-trial derived seeds, so results do not depend on the thread count.
McResult atom_probability_mc(const std::vector<double>& weights,
                             const std::vector<double>& probs, int64_t trials,
                             uint64_t seed, double bin_width = 0.0);
McResult atom_probability_mc_serial(const std::vector<double>& weights,
                                    const std::vector<double>& probs, int64_t trials,
                                    uint64_t seed, double bin_width = 0.0);

}  // namespace ddg::anticonc
