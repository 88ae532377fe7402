#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace ddg {

// Dynamic bit row. Binary operations require both operands to have the same
// bit length; trailing bits past size_bits() are kept zero as an invariant.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int nbits) : n_(nbits), w_(words_for(nbits), 0) {}

    static Bitset full(int nbits) {
        Bitset b(nbits);
        for (auto& w : b.w_) w = ~0ull;
        b.trim();
        return b;
    }

    int size_bits() const { return n_; }

    bool test(int i) const {
        assert(i >= 0 && i < n_);
        return (w_[size_t(i) >> 6] >> (i & 63)) & 1u;
    }
    void set(int i) {
        assert(i >= 0 && i < n_);
        w_[size_t(i) >> 6] |= 1ull << (i & 63);
    }
    void reset(int i) {
        assert(i >= 0 && i < n_);
        w_[size_t(i) >> 6] &= ~(1ull << (i & 63));
    }
    void assign(int i, bool v) { v ? set(i) : reset(i); }

    int count() const {
        int c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }
    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }
    bool operator==(const Bitset&) const = default;

    Bitset& operator&=(const Bitset& o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bitset& operator^=(const Bitset& o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }
    // this &= ~o
    Bitset& and_not(const Bitset& o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }
    Bitset complemented() const {
        Bitset r(*this);
        for (auto& w : r.w_) w = ~w;
        r.trim();
        return r;
    }

    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator^(Bitset a, const Bitset& b) { return a ^= b; }

    bool subset_of(const Bitset& o) const {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }
    bool intersects(const Bitset& o) const {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    // first set bit, or -1
    int first() const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return int(i * 64) + std::countr_zero(w_[i]);
        return -1;
    }
    // first set bit strictly after i, or -1
    int next(int i) const {
        ++i;
        if (i >= n_) return -1;
        size_t wi = size_t(i) >> 6;
        uint64_t w = w_[wi] & (~0ull << (i & 63));
        while (true) {
            if (w) return int(wi * 64) + std::countr_zero(w);
            if (++wi >= w_.size()) return -1;
            w = w_[wi];
        }
    }
    template <class F>
    void for_each(F&& f) const {
        for (size_t i = 0; i < w_.size(); ++i) {
            uint64_t w = w_[i];
            while (w) {
                f(int(i * 64) + std::countr_zero(w));
                w &= w - 1;
            }
        }
    }
    std::vector<int> to_vector() const {
        std::vector<int> v;
        v.reserve(size_t(count()));
        for_each([&](int i) { v.push_back(i); });
        return v;
    }

    // numeric comparison (used for deterministic tie-breaking on witnesses)
    static int compare(const Bitset& a, const Bitset& b) {
        assert(a.n_ == b.n_);
        for (size_t i = a.w_.size(); i-- > 0;) {
            if (a.w_[i] != b.w_[i]) return a.w_[i] < b.w_[i] ? -1 : 1;
        }
        return 0;
    }

    const std::vector<uint64_t>& words() const { return w_; }

private:
    static size_t words_for(int nbits) { return (size_t(nbits) + 63) / 64; }
    void trim() {
        if ((n_ & 63) != 0 && !w_.empty()) w_.back() &= ~0ull >> (64 - (n_ & 63));
    }
    int n_ = 0;
    std::vector<uint64_t> w_;
};

inline int count_and(const Bitset& a, const Bitset& b) {
    const auto &wa = a.words(), &wb = b.words();
    int c = 0;
    for (size_t i = 0; i < wa.size(); ++i) c += std::popcount(wa[i] & wb[i]);
    return c;
}

// popcount((a ^ b) & mask)
inline int count_xor_and(const Bitset& a, const Bitset& b, const Bitset& mask) {
    const auto &wa = a.words(), &wb = b.words(), &wm = mask.words();
    int c = 0;
    for (size_t i = 0; i < wa.size(); ++i) c += std::popcount((wa[i] ^ wb[i]) & wm[i]);
    return c;
}

inline Bitset from_vector(int nbits, const std::vector<int>& idx) {
    Bitset b(nbits);
    for (int i : idx) b.set(i);
    return b;
}

}  // namespace ddg
