#include "point.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "err.hpp"

namespace cbg {

bool operator<(const point& a, const point& b) {
    if (a.v.index() != b.v.index()) return a.v.index() < b.v.index();
    switch (a.v.index()) {
    case 0:
        return a.index() < b.index();
    case 1:
        return a.vec() < b.vec();
    case 2: {
        const auto& x = a.word();
        const auto& y = b.word();
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    }
    default: {
        const auto& x = a.tuple();
        const auto& y = b.tuple();
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
    }
    }
}

std::size_t hash_value(const point& p) {
    std::size_t h = p.v.index() * 0x9e3779b97f4a7c15ull;
    auto mix = [&h](std::size_t x) { h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
    switch (p.v.index()) {
    case 0:
        mix(std::hash<std::int64_t>{}(p.index()));
        break;
    case 1:
        for (auto x : p.vec()) mix(std::hash<std::int64_t>{}(x));
        break;
    case 2:
        mix(std::hash<std::string>{}(p.word()));
        break;
    default:
        for (const auto& q : p.tuple()) mix(hash_value(q));
        break;
    }
    return h;
}

std::string point::str() const {
    switch (v.index()) {
    case 0:
        return std::to_string(index());
    case 1: {
        std::string s = "(";
        const auto& xs = vec();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(xs[i]);
        }
        return s + ")";
    }
    case 2:
        return word().empty() ? "e" : word();
    default: {
        const auto& t = tuple();
        std::string s = "<";
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i) s += "|";
            s += t[i].str();
        }
        return s + ">";
    }
    }
}

namespace {

bool letters_cancel(char x, char y) {
    return x != y && std::tolower(x) == std::tolower(y);
}

} // namespace

bool is_reduced_word(const std::string& w, int rank) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        char c = w[i];
        char low = static_cast<char>(std::tolower(c));
        if (low < 'a' || low >= 'a' + rank) return false;
        if (i && letters_cancel(w[i - 1], c)) return false;
    }
    return true;
}

std::string reduce_word(const std::string& w) {
    std::string out;
    out.reserve(w.size());
    for (char c : w) {
        if (!out.empty() && letters_cancel(out.back(), c))
            out.pop_back();
        else
            out.push_back(c);
    }
    return out;
}

std::string word_mul(const std::string& a, const std::string& b) {
    std::string out = a;
    for (char c : b) {
        if (!out.empty() && letters_cancel(out.back(), c))
            out.pop_back();
        else
            out.push_back(c);
    }
    return out;
}

std::string word_inv(const std::string& a) {
    std::string out;
    out.reserve(a.size());
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        char c = *it;
        out.push_back(std::islower(c) ? static_cast<char>(std::toupper(c)) : static_cast<char>(std::tolower(c)));
    }
    return out;
}

std::vector<std::string> word_ball(int rank, std::int64_t radius) {
    require(rank >= 1, "word ball needs rank >= 1");
    require(radius >= 0, "word ball needs radius >= 0");
    // Guard against runaway enumeration; callers stay well below this.
    require(radius <= 12 || rank == 1, "word ball radius too large to enumerate");
    std::vector<std::string> out{""};
    std::size_t level_begin = 0;
    for (std::int64_t r = 1; r <= radius; ++r) {
        std::size_t level_end = out.size();
        for (std::size_t i = level_begin; i < level_end; ++i) {
            for (int g = 0; g < rank; ++g) {
                for (char c : {static_cast<char>('a' + g), static_cast<char>('A' + g)}) {
                    const std::string& w = out[i];
                    if (!w.empty() && letters_cancel(w.back(), c)) continue;
                    out.push_back(w + c);
                }
            }
        }
        level_begin = level_end;
        require(out.size() < (1u << 22), "word ball enumeration cap exceeded");
    }
    return out;
}

lattice_vec vec_add(const lattice_vec& a, const lattice_vec& b) {
    require(a.size() == b.size(), "lattice dimension mismatch");
    lattice_vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

lattice_vec vec_sub(const lattice_vec& a, const lattice_vec& b) {
    require(a.size() == b.size(), "lattice dimension mismatch");
    lattice_vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

lattice_vec vec_neg(const lattice_vec& a) {
    lattice_vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return out;
}

std::vector<point> lattice_box(int dim, std::int64_t m) {
    require(dim >= 1 && m >= 0, "bad lattice box");
    double count = 1;
    for (int i = 0; i < dim; ++i) count *= static_cast<double>(2 * m + 1);
    require(count <= (1 << 22), "lattice box too large");
    std::vector<point> out;
    lattice_vec cur(dim, -m);
    while (true) {
        out.emplace_back(cur);
        int i = dim - 1;
        while (i >= 0 && cur[i] == m) {
            cur[i] = -m;
            --i;
        }
        if (i < 0) break;
        ++cur[i];
    }
    return out;
}

} // namespace cbg
