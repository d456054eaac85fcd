#pragma once

#include <functional>
#include <vector>

#include "space.hpp"

namespace cbg {

// A family member as a decidable point set.
using set_pred = std::function<bool(const point&)>;

set_pred pred_of_points(std::vector<point> pts);
set_pred pred_of_certificate(const space& sp, certificate c);

// Every probe point lies in some family member. Empty probe -> true.
bool is_cover(const std::vector<set_pred>& family, const std::vector<point>& probe);

// Finite surrogate of the ω-cover property: every subset S ⊆ probe with
// |S| <= k lies inside a single member. Requires 1 <= k <= |probe|.
bool is_omega_cover(const std::vector<set_pred>& family, const std::vector<point>& probe, int k);

// Finite surrogate of the γ-cover property: every probe point belongs to
// family[n] for all n in [m, size) except at most f indices.
bool is_gamma_cover(const std::vector<set_pred>& family, const std::vector<point>& probe, int m, int f);

// Finite surrogate of "every finite set lies in infinitely many members":
// every subset of size <= k is contained in at least t distinct members.
bool is_proper_omega_cover(const std::vector<set_pred>& family, const std::vector<point>& probe, int k, int t);

// Incidence rows: rows[n][i] = probe[i] ∈ family[n]. The predicate variants
// above reduce to these; game evaluation uses the rows directly.
std::vector<std::vector<bool>> incidence(const std::vector<set_pred>& family, const std::vector<point>& probe);

bool is_cover_rows(const std::vector<std::vector<bool>>& rows);
bool is_omega_cover_rows(const std::vector<std::vector<bool>>& rows, int k);
bool is_gamma_cover_rows(const std::vector<std::vector<bool>>& rows, int m, int f);
bool is_proper_omega_cover_rows(const std::vector<std::vector<bool>>& rows, int k, int t);

// Enumerates all index subsets of {0..n-1} of size exactly k in lexicographic
// order and calls fn; fn returning false stops and propagates false.
bool for_each_k_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& fn);

} // namespace cbg
