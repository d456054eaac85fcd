#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace cbg {

struct point;
using lattice_vec = std::vector<std::int64_t>;
using point_tuple = std::vector<point>; // product-space tuples, always size 2

// One ground-set element. Finite sets index their points; lattices use
// integer vectors; finitely generated free groups use reduced words
// (letters 'a'.. are generators, 'A'.. their inverses); product spaces
// pair points of the factors.
struct point {
    std::variant<std::int64_t, lattice_vec, std::string, point_tuple> v;

    point() : v(std::int64_t{0}) {}
    point(std::int64_t i) : v(i) {}
    point(lattice_vec xs) : v(std::move(xs)) {}
    point(std::string w) : v(std::move(w)) {}
    static point pair(point a, point b) {
        point p;
        p.v = point_tuple{std::move(a), std::move(b)};
        return p;
    }

    bool is_index() const { return v.index() == 0; }
    bool is_vec() const { return v.index() == 1; }
    bool is_word() const { return v.index() == 2; }
    bool is_tuple() const { return v.index() == 3; }

    std::int64_t index() const { return std::get<std::int64_t>(v); }
    const lattice_vec& vec() const { return std::get<lattice_vec>(v); }
    const std::string& word() const { return std::get<std::string>(v); }
    const point_tuple& tuple() const { return std::get<point_tuple>(v); }

    friend bool operator==(const point& a, const point& b) { return a.v == b.v; }
    friend bool operator!=(const point& a, const point& b) { return !(a == b); }
    friend bool operator<(const point& a, const point& b);

    std::string str() const;
};

bool operator<(const point& a, const point& b);

std::size_t hash_value(const point& p);

struct point_hash {
    std::size_t operator()(const point& p) const { return hash_value(p); }
};

// --- reduced-word arithmetic (free groups; rank 1 behaves like Z) ---

bool is_reduced_word(const std::string& w, int rank);
std::string reduce_word(const std::string& w);
std::string word_mul(const std::string& a, const std::string& b);
std::string word_inv(const std::string& a);
inline std::int64_t word_len(const std::string& a) { return static_cast<std::int64_t>(a.size()); }

// All reduced words of length <= radius over the given rank (identity included).
std::vector<std::string> word_ball(int rank, std::int64_t radius);

// --- lattice helpers ---

inline std::int64_t max_norm(const lattice_vec& a) {
    std::int64_t m = 0;
    for (auto x : a) m = std::max(m, x < 0 ? -x : x);
    return m;
}

lattice_vec vec_add(const lattice_vec& a, const lattice_vec& b);
lattice_vec vec_sub(const lattice_vec& a, const lattice_vec& b);
lattice_vec vec_neg(const lattice_vec& a);

// Axis-aligned box [-m, m]^dim as explicit points.
std::vector<point> lattice_box(int dim, std::int64_t m);

} // namespace cbg
