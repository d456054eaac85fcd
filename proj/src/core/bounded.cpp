#include "bounded.hpp"

#include <algorithm>
#include <map>

#include "err.hpp"

namespace cbg {

namespace {

// Exhaustive search over a finite member list: sizes ascending, lexicographic
// member order inside a size. Returns the first covering subfamily, which is
// therefore minimal-size with lex tie-break.
std::optional<std::vector<member_ref>> exact_search(const space& sp, const cover& u,
                                                    const std::vector<member_ref>& candidates,
                                                    const std::vector<point>& S, const budget& b) {
    std::size_t n = candidates.size();
    std::size_t max_size = b ? static_cast<std::size_t>(std::max<std::int64_t>(0, *b)) : n;
    max_size = std::min(max_size, n);

    // membership matrix candidate x point
    std::vector<std::vector<bool>> covers_pt(n, std::vector<bool>(S.size(), false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < S.size(); ++j) covers_pt[i][j] = member_contains(sp, u, candidates[i], S[j]);

    std::vector<int> chosen;
    std::vector<int> cover_count(S.size(), 0);
    std::size_t uncovered = S.size();

    // depth-limited search; sizes ascend, so the first hit is minimal-size
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t left) -> bool {
        if (uncovered == 0) return true;
        if (left == 0) return false;
        for (std::size_t i = start; i < n; ++i) {
            std::size_t newly = 0;
            for (std::size_t j = 0; j < S.size(); ++j)
                if (covers_pt[i][j] && cover_count[j]++ == 0) ++newly;
            uncovered -= newly;
            chosen.push_back(static_cast<int>(i));
            if (rec(i + 1, left - 1)) return true;
            chosen.pop_back();
            uncovered += newly;
            for (std::size_t j = 0; j < S.size(); ++j)
                if (covers_pt[i][j]) --cover_count[j];
        }
        return false;
    };

    for (std::size_t size = 0; size <= max_size; ++size) {
        chosen.clear();
        std::fill(cover_count.begin(), cover_count.end(), 0);
        uncovered = S.size();
        if (rec(0, size)) {
            std::vector<member_ref> out;
            for (int i : chosen) out.push_back(candidates[static_cast<std::size_t>(i)]);
            return out;
        }
    }
    return std::nullopt;
}

// Exact 1-D sweep: minimal number of closed intervals [c-r, c+r] covering a
// finite set of integers, left-aligned centers.
std::vector<std::int64_t> sweep_1d(std::vector<std::int64_t> xs, std::int64_t r) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<std::int64_t> centers;
    std::size_t i = 0;
    while (i < xs.size()) {
        std::int64_t c = xs[i] + r;
        centers.push_back(c);
        while (i < xs.size() && xs[i] <= c + r) ++i;
    }
    return centers;
}

// Canonical slab construction for closed max-norm boxes in dimension d:
// exact in the first coordinate, recursive on slabs. Optimal in 1-D.
void slab_cover(const std::vector<lattice_vec>& pts, std::size_t coord, std::int64_t r, lattice_vec& prefix,
                std::vector<lattice_vec>& out) {
    if (pts.empty()) return;
    std::size_t dim = pts.front().size();
    if (coord + 1 == dim) {
        std::vector<std::int64_t> xs;
        for (const auto& p : pts) xs.push_back(p[coord]);
        for (auto c : sweep_1d(xs, r)) {
            lattice_vec center = prefix;
            center.push_back(c);
            out.push_back(center);
        }
        return;
    }
    std::vector<std::int64_t> xs;
    for (const auto& p : pts) xs.push_back(p[coord]);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::size_t i = 0;
    while (i < xs.size()) {
        std::int64_t c = xs[i] + r;
        std::vector<lattice_vec> slab;
        for (const auto& p : pts)
            if (p[coord] >= c - r && p[coord] <= c + r) slab.push_back(p);
        prefix.push_back(c);
        slab_cover(slab, coord + 1, r, prefix, out);
        prefix.pop_back();
        while (i < xs.size() && xs[i] <= c + r) ++i;
    }
}

// Canonical greedy word-ball cover: an exact single-center test first, then
// longest uncovered word centered on itself. Exact for rank 1 via the
// integer sweep. in_ball(q, c) decides q ∈ (translate of U_r at center c).
std::vector<point> word_greedy(const std::vector<point>& S,
                               const std::function<bool(const point&, const point&)>& in_ball) {
    for (const auto& c : S) {
        bool all = true;
        for (const auto& q : S)
            if (!in_ball(q, c)) {
                all = false;
                break;
            }
        if (all) return {c};
    }
    std::vector<point> pts = S;
    std::sort(pts.begin(), pts.end(), [](const point& a, const point& b) {
        if (a.word().size() != b.word().size()) return a.word().size() > b.word().size();
        return a.word() < b.word();
    });
    std::vector<point> centers;
    std::vector<bool> covered(pts.size(), false);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (covered[i]) continue;
        centers.push_back(pts[i]);
        for (std::size_t j = i; j < pts.size(); ++j)
            if (!covered[j] && in_ball(pts[j], pts[i])) covered[j] = true;
    }
    return centers;
}

std::vector<point> restrict_to_cover(const cover& u, const std::vector<point>& S) {
    if (!u.restriction) return S;
    std::vector<point> out;
    for (const auto& p : S)
        if (std::binary_search(u.restriction->begin(), u.restriction->end(), p)) out.push_back(p);
    return out;
}

} // namespace

std::optional<certificate> bounded_by(const space& sp, const cover& u, int cover_index,
                                      const std::vector<point>& S, const budget& b) {
    certificate cert;
    cert.cover_index = cover_index;
    std::vector<point> pts = S;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.empty()) return cert;
    if (b && *b <= 0) return std::nullopt;

    // Points outside a restriction can never be covered by u|Z.
    if (u.restriction)
        for (const auto& p : pts)
            if (!std::binary_search(u.restriction->begin(), u.restriction->end(), p)) return std::nullopt;

    switch (u.family.index()) {
    case 0: {
        std::vector<member_ref> cand;
        int n = static_cast<int>(u.explicit_members().members.size());
        for (int i = 0; i < n; ++i) cand.push_back(member_ref::by_index(i));
        auto found = exact_search(sp, u, cand, pts, b);
        if (!found) return std::nullopt;
        cert.members = std::move(*found);
        return cert;
    }
    case 1:
    case 2: {
        // center families
        if (sp.finite()) {
            std::vector<member_ref> cand;
            for (const auto& p : sp.universe()) cand.push_back(member_ref::by_center(p));
            auto found = exact_search(sp, u, cand, pts, b);
            if (!found) return std::nullopt;
            cert.members = std::move(*found);
            return cert;
        }
        if (std::holds_alternative<lattice_ground>(sp.ground)) {
            std::int64_t r;
            if (u.family.index() == 1) {
                const auto& bf = std::get<ball_family>(u.family);
                if (bf.radius <= rat(0)) return std::nullopt; // empty members
                r = (bf.radius.num - 1) / bf.radius.den;      // max integer offset strictly inside
            } else {
                r = std::get<translate_family>(u.family).radius;
            }
            std::vector<lattice_vec> vs;
            for (const auto& p : pts) vs.push_back(p.vec());
            std::vector<lattice_vec> centers;
            lattice_vec prefix;
            slab_cover(vs, 0, r, prefix, centers);
            if (!within(b, centers.size())) {
                if (vs.front().size() == 1) return std::nullopt; // sweep is optimal in 1-D
                fail(status::unknown, "lattice cover search bound hit (canonical slab cover exceeds budget)");
            }
            for (auto& c : centers) cert.members.push_back(member_ref::by_center(point(std::move(c))));
            normalize_members(cert.members);
            return cert;
        }
        if (std::holds_alternative<free_group_ground>(sp.ground)) {
            require(u.family.index() == 2, "free groups carry translate families");
            const auto& tf = std::get<translate_family>(u.family);
            std::int64_t r = tf.radius;
            auto in_ball = [&](const point& q, const point& c) {
                return group_ball_member(sp, tf.s, c, r, q);
            };
            auto centers = word_greedy(pts, in_ball);
            if (!within(b, centers.size())) {
                if (std::get<free_group_ground>(sp.ground).rank == 1) {
                    // rank 1 is Z: exact integer sweep
                    std::vector<std::int64_t> xs;
                    for (const auto& p : pts) {
                        const auto& w = p.word();
                        std::int64_t v = static_cast<std::int64_t>(w.size());
                        if (!w.empty() && std::isupper(static_cast<unsigned char>(w[0]))) v = -v;
                        xs.push_back(v);
                    }
                    auto cs = sweep_1d(xs, r);
                    if (!within(b, cs.size())) return std::nullopt;
                    centers.clear();
                    for (auto c : cs) {
                        std::string w(static_cast<std::size_t>(c < 0 ? -c : c), c < 0 ? 'A' : 'a');
                        centers.push_back(point(w));
                    }
                } else {
                    fail(status::unknown, "word-ball cover search bound hit (greedy cover exceeds budget)");
                }
            }
            for (auto& c : centers) cert.members.push_back(member_ref::by_center(std::move(c)));
            normalize_members(cert.members);
            return cert;
        }
        fail(status::unknown, "no bounded-set search for this lazy ground");
    }
    default: {
        // product cover: rectangle construction — cover each projection, pair up
        require(sp.product.has_value(), "product cover outside a product space");
        const auto& pf = std::get<product_family>(u.family);
        std::vector<point> ls, rs;
        for (const auto& p : pts) {
            require(p.is_tuple() && p.tuple().size() == 2, "product point expected");
            ls.push_back(p.tuple()[0]);
            rs.push_back(p.tuple()[1]);
        }
        const auto& lsp = *sp.product->left;
        const auto& rsp = *sp.product->right;
        auto lc = bounded_by(lsp, lsp.cover_at(pf.left_cover), pf.left_cover, ls, std::nullopt);
        auto rc = bounded_by(rsp, rsp.cover_at(pf.right_cover), pf.right_cover, rs, std::nullopt);
        if (!lc || !rc) return std::nullopt;
        for (const auto& lm : lc->members)
            for (const auto& rm : rc->members) cert.members.push_back(member_ref::by_pair(lm, rm));
        if (!within(b, cert.members.size())) {
            if (sp.finite()) {
                // small finite products: fall back to the exhaustive pair search
                std::vector<member_ref> cand;
                auto lcount = member_count(lsp, lsp.cover_at(pf.left_cover));
                auto rcount = member_count(rsp, rsp.cover_at(pf.right_cover));
                if (lcount && rcount && *lcount * *rcount <= 4096) {
                    std::vector<member_ref> lrefs, rrefs;
                    if (lsp.cover_at(pf.left_cover).is_explicit())
                        for (int i = 0; i < *lcount; ++i) lrefs.push_back(member_ref::by_index(i));
                    else
                        for (const auto& p : lsp.universe()) lrefs.push_back(member_ref::by_center(p));
                    if (rsp.cover_at(pf.right_cover).is_explicit())
                        for (int i = 0; i < *rcount; ++i) rrefs.push_back(member_ref::by_index(i));
                    else
                        for (const auto& p : rsp.universe()) rrefs.push_back(member_ref::by_center(p));
                    for (const auto& lm : lrefs)
                        for (const auto& rm : rrefs) cand.push_back(member_ref::by_pair(lm, rm));
                    auto found = exact_search(sp, u, cand, pts, b);
                    if (!found) return std::nullopt;
                    cert.members = std::move(*found);
                    return cert;
                }
            }
            fail(status::unknown, "product cover search bound hit (rectangle cover exceeds budget)");
        }
        normalize_members(cert.members);
        return cert;
    }
    }
}

std::optional<certificate> bounded_by(const space& sp, int cover_index, const std::vector<point>& S,
                                      const budget& b) {
    return bounded_by(sp, sp.cover_at(cover_index), cover_index, S, b);
}

certificate full_certificate(const space& sp, int cover_index) {
    const auto& u = sp.cover_at(cover_index);
    std::vector<point> ground = u.restriction ? *u.restriction : sp.universe();
    ground = restrict_to_cover(u, ground);
    auto c = bounded_by(sp, u, cover_index, ground, std::nullopt);
    require(c.has_value(), "cover does not bound its own ground set");
    return *c;
}

} // namespace cbg
