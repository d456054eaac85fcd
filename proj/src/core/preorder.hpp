#pragma once

#include <memory>

#include "bounded.hpp"
#include "space.hpp"

namespace cbg {

enum class verdict { yes, no, unknown };

// Three-valued answer with replayable evidence. Lazy instances only ever get
// probe-scoped yes answers; finite explicit instances are exact.
struct tri_bool {
    verdict v = verdict::unknown;
    bool probe_scoped = false; // yes was verified on probes, not globally
    std::string note;

    // yes: one certificate per checked member / cover
    std::vector<certificate> evidence;
    // no: the member (or cover index) and points that defeat every candidate
    std::optional<member_ref> bad_member;
    int bad_cover = -1;
    std::vector<point> counterexample;

    static tri_bool yes(std::vector<certificate> ev = {}, bool probe = false, std::string note = {}) {
        tri_bool t;
        t.v = verdict::yes;
        t.evidence = std::move(ev);
        t.probe_scoped = probe;
        t.note = std::move(note);
        return t;
    }
    static tri_bool no(std::string note = {}) {
        tri_bool t;
        t.v = verdict::no;
        t.note = std::move(note);
        return t;
    }
    static tri_bool unknown(std::string note) {
        tri_bool t;
        t.v = verdict::unknown;
        t.note = std::move(note);
        return t;
    }
    bool is_yes() const { return v == verdict::yes; }
    bool is_no() const { return v == verdict::no; }
};

inline int default_search_bound() { return 32; }

// u ≺ v: every v-bounded set is u-bounded; decided by covering each member of
// v with at most search_bound members of u. Exact (never unknown) on finite
// explicit instances; on lazy instances the members checked are those
// centered at probe points, and yes answers are probe-scoped.
tri_bool coarser_than(const space& sp, int u_index, int v_index, int search_bound = default_search_bound());

// Multicover lift of ≺ between the covers of two spaces over the same ground.
tri_bool multicover_coarser(const space& a, const space& b, int search_bound = default_search_bound());

// λ ≅ ν: ≺ in both directions.
tri_bool equivalent_multicovers(const space& a, const space& b, int search_bound = default_search_bound());

// Every pair of covers has an upper bound in the (finite, ordered) list;
// pairwise upper bounds extend to finite subsets by induction.
tri_bool is_centered(const space& sp, int search_bound = default_search_bound());

// u|Z on a nonempty subset Z of the ground set. Explicit members are
// intersected and empty members pruned (original positions recorded); lazy
// families carry the restriction.
space restrict_space(const space& sp, const std::vector<point>& Z);

// Product of two covers / spaces: the multicover of the product space has one
// cover per pair (row-major), certificates multiply member-wise.
cover product_cover(const space& a, int u_index, const space& b, int v_index);
space product_space(std::shared_ptr<const space> a, std::shared_ptr<const space> b);

// X is u-bounded for every u ∈ λ (probe-scoped on lazy spaces).
tri_bool is_totally_bounded(const space& sp, const budget& b);

// Every cover has a countable subcover. Explicit covers and center-indexed
// families over countable grounds are countable by construction.
tri_bool is_omega_bounded(const space& sp);

} // namespace cbg
