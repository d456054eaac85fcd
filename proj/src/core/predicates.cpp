#include "predicates.hpp"

#include <algorithm>

#include "err.hpp"

namespace cbg {

set_pred pred_of_points(std::vector<point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return [pts = std::move(pts)](const point& p) { return std::binary_search(pts.begin(), pts.end(), p); };
}

set_pred pred_of_certificate(const space& sp, certificate c) {
    return [&sp, c = std::move(c)](const point& p) { return certificate_contains(sp, c, p); };
}

std::vector<std::vector<bool>> incidence(const std::vector<set_pred>& family, const std::vector<point>& probe) {
    std::vector<std::vector<bool>> rows(family.size(), std::vector<bool>(probe.size(), false));
    for (std::size_t n = 0; n < family.size(); ++n)
        for (std::size_t i = 0; i < probe.size(); ++i) rows[n][i] = family[n](probe[i]);
    return rows;
}

bool for_each_k_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& fn) {
    if (k > n) return true;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        if (!fn(idx)) return false;
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return true;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

bool is_cover_rows(const std::vector<std::vector<bool>>& rows) {
    if (rows.empty()) return false;
    std::size_t np = rows.front().size();
    for (std::size_t i = 0; i < np; ++i) {
        bool hit = false;
        for (const auto& r : rows)
            if (r[i]) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

bool is_omega_cover_rows(const std::vector<std::vector<bool>>& rows, int k) {
    require(k >= 1, "omega cover needs k >= 1");
    if (rows.empty()) return false;
    int np = static_cast<int>(rows.front().size());
    require(k <= np, "omega cover needs k <= |probe|");
    // a member holding the whole probe engulfs every subset
    for (const auto& r : rows)
        if (std::all_of(r.begin(), r.end(), [](bool b) { return b; })) return true;
    // checking subsets of size exactly j for every j <= k; smaller sets are
    // covered by supersets but engulfing is checked directly for clarity
    for (int j = 1; j <= k; ++j) {
        bool ok = for_each_k_subset(np, j, [&](const std::vector<int>& s) {
            for (const auto& r : rows) {
                bool all = true;
                for (int i : s)
                    if (!r[static_cast<std::size_t>(i)]) {
                        all = false;
                        break;
                    }
                if (all) return true;
            }
            return false;
        });
        if (!ok) return false;
    }
    return true;
}

bool is_gamma_cover_rows(const std::vector<std::vector<bool>>& rows, int m, int f) {
    require(m >= 0 && m < static_cast<int>(rows.size()), "gamma cover start round out of range");
    require(f >= 0, "gamma cover miss budget must be nonnegative");
    if (rows.empty()) return false;
    std::size_t np = rows.front().size();
    for (std::size_t i = 0; i < np; ++i) {
        int misses = 0;
        for (std::size_t n = static_cast<std::size_t>(m); n < rows.size(); ++n)
            if (!rows[n][i]) ++misses;
        if (misses > f) return false;
    }
    return true;
}

bool is_proper_omega_cover_rows(const std::vector<std::vector<bool>>& rows, int k, int t) {
    require(k >= 1 && t >= 1, "proper omega cover needs k >= 1, t >= 1");
    if (rows.empty()) return false;
    int np = static_cast<int>(rows.front().size());
    require(k <= np, "proper omega cover needs k <= |probe|");
    int full_rows = 0;
    for (const auto& r : rows)
        if (std::all_of(r.begin(), r.end(), [](bool b) { return b; })) ++full_rows;
    if (full_rows >= t) return true;
    for (int j = 1; j <= k; ++j) {
        bool ok = for_each_k_subset(np, j, [&](const std::vector<int>& s) {
            int count = 0;
            for (const auto& r : rows) {
                bool all = true;
                for (int i : s)
                    if (!r[static_cast<std::size_t>(i)]) {
                        all = false;
                        break;
                    }
                if (all && ++count >= t) return true;
            }
            return false;
        });
        if (!ok) return false;
    }
    return true;
}

bool is_cover(const std::vector<set_pred>& family, const std::vector<point>& probe) {
    if (probe.empty()) return true;
    return is_cover_rows(incidence(family, probe));
}

bool is_omega_cover(const std::vector<set_pred>& family, const std::vector<point>& probe, int k) {
    return is_omega_cover_rows(incidence(family, probe), k);
}

bool is_gamma_cover(const std::vector<set_pred>& family, const std::vector<point>& probe, int m, int f) {
    return is_gamma_cover_rows(incidence(family, probe), m, f);
}

bool is_proper_omega_cover(const std::vector<set_pred>& family, const std::vector<point>& probe, int k, int t) {
    return is_proper_omega_cover_rows(incidence(family, probe), k, t);
}

} // namespace cbg
