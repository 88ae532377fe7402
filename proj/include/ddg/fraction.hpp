#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ddg {

// Exact nonnegative rational, used wherever a threshold like delta*n must be
// compared without floating-point boundary ambiguity.
struct Fraction {
    int64_t num = 0;
    int64_t den = 1;

    Fraction() = default;
    Fraction(int64_t n, int64_t d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("fraction: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    // accepts "P/Q" or a bare integer "P"
    static Fraction parse(const std::string& s) {
        auto bad = [&] { throw std::invalid_argument("fraction: expected P/Q, got '" + s + "'"); };
        if (s.empty()) bad();
        size_t slash = s.find('/');
        try {
            if (slash == std::string::npos) {
                size_t pos = 0;
                int64_t p = std::stoll(s, &pos);
                if (pos != s.size()) bad();
                return Fraction(p, 1);
            }
            size_t pos = 0;
            int64_t p = std::stoll(s.substr(0, slash), &pos);
            if (pos != slash) bad();
            int64_t q = std::stoll(s.substr(slash + 1), &pos);
            if (pos != s.size() - slash - 1) bad();
            return Fraction(p, q);
        } catch (const std::invalid_argument&) {
            bad();
        } catch (const std::out_of_range&) {
            bad();
        }
        return {};
    }

    double to_double() const { return double(num) / double(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
    bool operator==(const Fraction&) const = default;
};

// value < f * scale, exactly
inline bool lt_scaled(int64_t value, const Fraction& f, int64_t scale) {
    return (__int128)value * f.den < (__int128)f.num * scale;
}
// value <= f * scale, exactly
inline bool le_scaled(int64_t value, const Fraction& f, int64_t scale) {
    return (__int128)value * f.den <= (__int128)f.num * scale;
}

}  // namespace ddg
