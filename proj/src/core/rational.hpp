#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "err.hpp"

namespace cbg {

// Exact nonnegative-friendly rational on int64, normalized, compared via
// 128-bit cross multiplication. Radii and metric distances stay exact.
struct rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    rat() = default;
    rat(std::int64_t n) : num(n), den(1) {}
    rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        require(den != 0, "rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    friend bool operator==(const rat& a, const rat& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(const rat& a, const rat& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const rat& a, const rat& b) { return a < b || a == b; }
    friend bool operator>(const rat& a, const rat& b) { return b < a; }
    friend bool operator>=(const rat& a, const rat& b) { return b <= a; }

    friend rat operator+(const rat& a, const rat& b) { return rat(a.num * b.den + b.num * a.den, a.den * b.den); }
    friend rat operator-(const rat& a, const rat& b) { return rat(a.num * b.den - b.num * a.den, a.den * b.den); }

    std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

    // Accepts "3", "-3", "3/2".
    static rat parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return rat(std::stoll(s));
            return rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        } catch (const std::exception&) {
            fail_input("bad rational literal: " + s);
        }
    }
};

} // namespace cbg
