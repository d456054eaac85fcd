#pragma once

#include <functional>

#include "predicates.hpp"
#include "preorder.hpp"
#include "space.hpp"

namespace cbg {

// A function between two multicovered spaces together with its boundedness
// data.
//
//   uniformly bounded: assign maps each target cover to a source cover such
//   that images of assign(v)-bounded sets are v-bounded;
//   perfect: assign maps each source cover to a target cover such that
//   preimages of assign(u)-bounded sets are u-bounded.
//
// Both reduce to single members (certificates compose member-wise), which is
// what validate() checks — exactly on finite instances, on probes otherwise.
struct space_map {
    enum class kind { uniformly_bounded, perfect };

    kind k = kind::perfect;
    std::function<point(const point&)> fn;
    std::vector<int> assign;

    // optional transfer hooks for lazy instances, producing certificates
    // directly; finite instances derive them by exhaustive search
    std::function<std::optional<certificate>(const certificate&, int)> pull_hook; // target cert -> source cert
    std::function<std::optional<certificate>(const certificate&, int)> push_hook; // source cert -> target cert
};

// Image of a finite point set.
std::vector<point> map_image(const space_map& f, const std::vector<point>& pts);

// Preimage within an explicitly enumerable source (finite spaces / probes).
std::vector<point> map_preimage(const space_map& f, const std::vector<point>& source_pts, const set_pred& target_set);

// Member-wise validation of the declared boundedness data within the given
// search bound. Exact on finite instances; probe members otherwise.
tri_bool validate_map(const space& source, const space& target, const space_map& f,
                      int search_bound = default_search_bound());

// For a perfect map: transfer a certificate of target cover assign(u) into a
// certificate of source cover u (exhaustive on finite sources, hook on lazy).
// Throws bad_input with a diagnostic when no certificate exists.
certificate pull_certificate(const space& source, const space& target, const space_map& f, int source_cover,
                             const certificate& target_cert);

// For a uniformly bounded map: transfer a certificate of source cover
// assign(v) into a certificate of target cover v.
certificate push_certificate(const space& source, const space& target, const space_map& f, int target_cover,
                             const certificate& source_cert);

// Identity map witnessing λ ≺ ν on a shared ground set: perfect with the
// cover assignment produced by the ≺ search.
space_map identity_perfect_map(const space& source, const space& target,
                               int search_bound = default_search_bound());

} // namespace cbg
