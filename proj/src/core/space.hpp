#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "point.hpp"
#include "rational.hpp"

namespace cbg {

// ---------------------------------------------------------------------------
// Cover members
// ---------------------------------------------------------------------------

enum class side { left, right, join, meet };

std::string side_name(side s);
side side_parse(const std::string& s);

// Explicitly listed member: a finite point set (sorted, duplicate-free).
struct explicit_set {
    std::vector<point> points;
};

// Metric ball B(center, radius) = { y : dist(y, center) < radius }  (strict).
struct metric_ball {
    point center;
    rat radius;
};

// Group translate of the word ball U_r = { g : |g| <= r }  (closed).
// left: cU_r, right: U_r c, join: cU_r ∩ U_r c, meet: U_r c U_r.
struct group_ball {
    side s = side::left;
    point center;
    std::int64_t radius = 0;
};

using cover_member = std::variant<explicit_set, metric_ball, group_ball>;

// ---------------------------------------------------------------------------
// Covers: an indexed family of members, explicit or lazily indexed by center
// ---------------------------------------------------------------------------

struct explicit_family {
    std::vector<cover_member> members;
    // When this cover was produced by restriction, position of each surviving
    // member in the unrestricted cover (empty otherwise).
    std::vector<int> source_index;
};

// One metric ball per center x in the ground set.
struct ball_family {
    rat radius;
};

// One group translate per center g in the group.
struct translate_family {
    side s = side::right;
    std::int64_t radius = 0;
};

// Pairwise products of two covers of the factor spaces.
struct product_family {
    int left_cover = 0;
    int right_cover = 0;
};

struct cover {
    std::string label;
    std::variant<explicit_family, ball_family, translate_family, product_family> family;
    // u|Z: members are intersected with Z (lazy families keep the full index
    // set; membership is filtered).
    std::optional<std::vector<point>> restriction;

    bool is_explicit() const { return family.index() == 0; }
    const explicit_family& explicit_members() const { return std::get<explicit_family>(family); }
};

// ---------------------------------------------------------------------------
// Member references and certificates
// ---------------------------------------------------------------------------

// Reference to one member of a cover: an index for explicit covers, a center
// for lazy families, a pair of references for product covers.
struct member_ref {
    enum class tag { index, center, pair };
    tag t = tag::index;
    int index = -1;
    point center;
    std::vector<member_ref> parts; // size 2 when t == pair

    static member_ref by_index(int i) {
        member_ref m;
        m.t = tag::index;
        m.index = i;
        return m;
    }
    static member_ref by_center(point p) {
        member_ref m;
        m.t = tag::center;
        m.center = std::move(p);
        return m;
    }
    static member_ref by_pair(member_ref a, member_ref b) {
        member_ref m;
        m.t = tag::pair;
        m.parts = {std::move(a), std::move(b)};
        return m;
    }

    friend bool operator==(const member_ref& a, const member_ref& b);
    friend bool operator<(const member_ref& a, const member_ref& b);
    std::string str() const;
};

// A finite subfamily of one cover; its union is the bounded set the second
// player produces in a round. Empty lists encode the empty bounded set.
struct certificate {
    int cover_index = -1;
    std::vector<member_ref> members;

    friend bool operator==(const certificate& a, const certificate& b) {
        return a.cover_index == b.cover_index && a.members == b.members;
    }
    std::size_t size() const { return members.size(); }
};

// Canonical order + dedupe for deterministic outputs.
void normalize_members(std::vector<member_ref>& ms);

// ---------------------------------------------------------------------------
// Ground sets and auxiliary models
// ---------------------------------------------------------------------------

struct finite_ground {
    std::vector<point> points; // sorted, duplicate-free, nonempty
};

struct lattice_ground {
    int dim = 1;
};

struct free_group_ground {
    int rank = 1;
};

struct product_ground {};

// Group structure attached to a space (ground chooses the element encoding).
struct group_model {
    enum class kind { table, lattice, free_group } k = kind::table;

    // table groups: points are indices into the finite ground
    std::vector<std::vector<int>> mul; // mul[a][b]
    std::vector<int> inv;
    int identity = 0;
    std::vector<std::int64_t> word_length_table; // BFS distance from identity over generators

    std::vector<point> generators; // the declared generating set X
    bool closed_under_inverse = false;

    int lattice_dim = 1;
    int free_rank = 1;

    bool abelian() const;
};

struct metric_model {
    std::vector<std::vector<rat>> dist; // symmetric, zero diagonal, triangle inequality
};

struct space;

struct product_model {
    std::shared_ptr<const space> left;
    std::shared_ptr<const space> right;
};

// ---------------------------------------------------------------------------
// The multicovered space
// ---------------------------------------------------------------------------

struct space {
    std::string name;
    std::variant<finite_ground, lattice_ground, free_group_ground, product_ground> ground;
    std::vector<cover> covers; // declared order is the ≺-direction
    std::map<std::pair<int, int>, int> centered_witness;
    std::vector<std::vector<point>> probes;

    std::optional<group_model> group;
    std::optional<metric_model> metric;
    std::optional<product_model> product;

    bool finite() const;
    bool lazy() const { return !finite(); }
    // All points of a finite (or finite-product) ground set.
    std::vector<point> universe() const;
    // Probe to quantify over: first declared probe, else the universe.
    std::vector<point> default_probe() const;
    bool ground_contains(const point& p) const;

    const cover& cover_at(int i) const;
};

// --- group arithmetic on space points ---

point group_identity(const group_model& g);
point group_mul(const group_model& g, const point& a, const point& b);
point group_inv(const group_model& g, const point& a);
std::int64_t group_word_length(const group_model& g, const point& a);

// ---------------------------------------------------------------------------
// Membership and enumeration
// ---------------------------------------------------------------------------

// Decides p ∈ m where m refers to a member of cover u in sp. Restrictions of
// u are honored.
bool member_contains(const space& sp, const cover& u, const member_ref& m, const point& p);

// Raw translate-ball membership (no cover restriction applied).
bool group_ball_member(const space& sp, side s, const point& center, std::int64_t radius, const point& p);

// Union membership: p in the union of the certificate's members.
bool certificate_contains(const space& sp, const cover& u, const certificate& c, const point& p);
bool certificate_contains(const space& sp, const certificate& c, const point& p);

// Explicit point list of a member, when it is enumerable at desk scale.
std::optional<std::vector<point>> enumerate_member(const space& sp, const cover& u, const member_ref& m,
                                                   std::size_t cap = 1u << 20);

// Number of explicit members; nullopt for lazy families.
std::optional<int> member_count(const space& sp, const cover& u);

// Checks a cover covers the given probe (every probe point in some member);
// for explicit covers over finite grounds, probe = universe gives the exact
// cover invariant.
bool cover_covers(const space& sp, const cover& u, const std::vector<point>& probe);

// Validates structural invariants (ground nonempty/duplicate-free, covers
// cover the universe or all probes, group tables are groups, metrics satisfy
// the triangle inequality, probes lie in the ground set). Throws on failure.
void validate_space(const space& sp);

// Metric distance between ground points (finite metric model or lattice
// max-norm metric).
rat metric_dist(const space& sp, const point& a, const point& b);

} // namespace cbg
