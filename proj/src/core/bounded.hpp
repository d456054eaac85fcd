#pragma once

#include <optional>

#include "space.hpp"

namespace cbg {

// Budget on a certificate: number of members the second player may select.
// Empty optional means any finite subfamily.
using budget = std::optional<std::int64_t>;

inline bool within(const budget& b, std::size_t n) { return !b || static_cast<std::int64_t>(n) <= *b; }

// Searches for a certificate of <= budget members of u whose union contains S.
//
// Explicit covers and finite center families are searched exhaustively in
// lexicographic order (smallest size first, then lex member list), so absence
// is a proof. Lazy lattice families use an exact sweep in dimension 1 and a
// canonical slab construction in higher dimensions; lazy word-ball families
// use a canonical greedy construction. When a canonical construction misses
// the budget but exhaustive search is infeasible, the search throws
// status::unknown rather than claiming absence.
std::optional<certificate> bounded_by(const space& sp, int cover_index, const std::vector<point>& S,
                                      const budget& b);

std::optional<certificate> bounded_by(const space& sp, const cover& u, int cover_index,
                                      const std::vector<point>& S, const budget& b);

// The canonical certificate covering the whole restricted ground set (finite
// grounds / restrictions only).
certificate full_certificate(const space& sp, int cover_index);

} // namespace cbg
