#include "ddg/anticonc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "ddg/errors.hpp"
#include "ddg/rng.hpp"

namespace ddg::anticonc {

Decomposition bernoulli_decompose(double p) {
    if (!(p >= 0.1 && p <= 0.9))
        throw PreconditionViolated("p in [0.1, 0.9]", "p=" + std::to_string(p));
    // Both branches are exact: 1-p is exact by Sterbenz for p in [1/2, 1],
    // scaling by 2 only moves the exponent, and the recombination
    // w/2 + (1-w)z reproduces p without rounding.
    if (p <= 0.5) return {2 * p, 0.0};
    return {2 * (1 - p), 1.0};
}

namespace {

void check_dist(size_t nw, const std::vector<double>& probs, const char* who) {
    if (probs.size() != nw)
        throw PreconditionViolated("weights and probs aligned",
                                   std::string(who) + ": " + std::to_string(nw) + " weights vs " +
                                       std::to_string(probs.size()) + " probs");
    for (double p : probs)
        if (!(p >= 0.0 && p <= 1.0))
            throw PreconditionViolated("probs in [0, 1]",
                                       std::string(who) + ": p=" + std::to_string(p));
}

struct BinScan {
    // (count desc, key asc) winner across a count map; deterministic
    int64_t best_key = 0;
    int64_t best_count = -1;
    void feed(int64_t key, int64_t count) {
        if (count > best_count || (count == best_count && key < best_key)) {
            best_key = key;
            best_count = count;
        }
    }
};

using CountMap = std::unordered_map<int64_t, int64_t>;

McResult mc_finish(const CountMap& counts, int64_t trials, double bin_width) {
    BinScan scan;
    for (const auto& [key, cnt] : counts) scan.feed(key, cnt);
    McResult r;
    r.pmax = double(scan.best_count) / double(trials);
    r.x_star = bin_width == 0.0 ? double(scan.best_key)
                                : (double(scan.best_key) + 0.5) * bin_width;
    return r;
}

int64_t mc_trial(const std::vector<double>& weights, const std::vector<double>& probs,
                 uint64_t trial_seed, double bin_width) {
    Rng rng(trial_seed);
    double sum = 0;
    for (size_t i = 0; i < weights.size(); ++i)
        if (rng.chance(probs[i])) sum += weights[i];
    return bin_width == 0.0 ? int64_t(std::llround(sum)) : int64_t(std::floor(sum / bin_width));
}

void mc_check(const std::vector<double>& weights, const std::vector<double>& probs,
              int64_t trials, double bin_width) {
    check_dist(weights.size(), probs, "atom_probability_mc");
    if (trials < 1) throw PreconditionViolated("trials >= 1", std::to_string(trials));
    if (bin_width < 0) throw PreconditionViolated("bin_width >= 0", std::to_string(bin_width));
    if (bin_width == 0.0)
        for (double w : weights)
            if (!std::isfinite(w) || w != std::floor(w))
                throw PreconditionViolated("integer weights when bin_width == 0",
                                           "w=" + std::to_string(w));
}

}  // namespace

AtomResult atom_probability_dp(const std::vector<int64_t>& weights,
                               const std::vector<double>& probs, int64_t state_cap) {
    check_dist(weights.size(), probs, "atom_probability_dp");
    int64_t lo = 0, hi = 0;
    for (int64_t w : weights) {
        if (w == 0) throw PreconditionViolated("nonzero weights", "zero weight");
        (w < 0 ? lo : hi) += w;
    }
    int64_t range = hi - lo + 1;
    if (range > state_cap)
        throw CapExceeded("atom_probability_dp",
                          int(std::min<int64_t>(range, std::numeric_limits<int>::max())),
                          int(std::min<int64_t>(state_cap, std::numeric_limits<int>::max())));

    // dist[x - lo] = P(sum == x); one Bernoulli convolved in per step, in the
    // fixed ascending-index order so the double roundoff is reproducible
    std::vector<double> dist(static_cast<size_t>(range), 0.0), next(static_cast<size_t>(range), 0.0);
    dist[static_cast<size_t>(-lo)] = 1.0;
    for (size_t i = 0; i < weights.size(); ++i) {
        double p = probs[i];
        int64_t w = weights[i];
        std::fill(next.begin(), next.end(), 0.0);
        for (int64_t x = 0; x < range; ++x) {
            double q = dist[static_cast<size_t>(x)];
            if (q == 0.0) continue;
            next[static_cast<size_t>(x)] += q * (1 - p);
            next[static_cast<size_t>(x + w)] += q * p;  // x+w stays in [0, range) by construction
        }
        dist.swap(next);
    }

    AtomResult r;
    r.pmax = -1;
    for (int64_t x = 0; x < range; ++x)
        if (dist[static_cast<size_t>(x)] > r.pmax) {
            r.pmax = dist[static_cast<size_t>(x)];
            r.x_star = x + lo;
        }
    return r;
}

McResult atom_probability_mc(const std::vector<double>& weights, const std::vector<double>& probs,
                             int64_t trials, uint64_t seed, double bin_width) {
    mc_check(weights, probs, trials, bin_width);
    CountMap counts;
#pragma omp parallel
    {
        CountMap local;
#pragma omp for schedule(static)
        for (int64_t t = 0; t < trials; ++t)
            ++local[mc_trial(weights, probs, mix_seed(seed, uint64_t(t)), bin_width)];
#pragma omp critical(ddg_mc_merge)
        for (const auto& [key, cnt] : local) counts[key] += cnt;
    }
    return mc_finish(counts, trials, bin_width);
}

McResult atom_probability_mc_serial(const std::vector<double>& weights,
                                    const std::vector<double>& probs, int64_t trials,
                                    uint64_t seed, double bin_width) {
    mc_check(weights, probs, trials, bin_width);
    CountMap counts;
    for (int64_t t = 0; t < trials; ++t)
        ++counts[mc_trial(weights, probs, mix_seed(seed, uint64_t(t)), bin_width)];
    return mc_finish(counts, trials, bin_width);
}

}  // namespace ddg::anticonc
