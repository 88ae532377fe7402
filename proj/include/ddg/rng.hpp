#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace ddg {

// SplitMix64. Chosen over std::mt19937_64 + std::uniform_int_distribution
// because the std distributions are not bit-stable across standard library
// implementations; every byte of output here is pinned by the seed alone.
class Rng {
public:
    explicit Rng(uint64_t seed) : s_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound), unbiased by rejection; bound >= 1
    uint64_t below(uint64_t bound) {
        uint64_t lim = (0 - bound) % bound;  // 2^64 mod bound
        uint64_t r = next_u64();
        while (r < lim) r = next_u64();
        return r % bound;
    }

    int64_t uniform_int(int64_t lo, int64_t hi) {  // inclusive
        return lo + int64_t(below(uint64_t(hi - lo + 1)));
    }

    double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return uniform01() < p; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    uint64_t s_;
};

// Stable derivation of per-item substream seeds: mix(seed, index).
inline uint64_t mix_seed(uint64_t a, uint64_t b) {
    uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
    return Rng(x).next_u64();
}
inline uint64_t mix_seed(uint64_t a, uint64_t b, uint64_t c) {
    return mix_seed(mix_seed(a, b), c);
}

}  // namespace ddg
