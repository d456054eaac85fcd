#include "space.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "err.hpp"

namespace cbg {

std::string side_name(side s) {
    switch (s) {
    case side::left: return "L";
    case side::right: return "R";
    case side::join: return "join";
    default: return "meet";
    }
}

side side_parse(const std::string& s) {
    if (s == "L" || s == "left") return side::left;
    if (s == "R" || s == "right") return side::right;
    if (s == "join" || s == "LvR") return side::join;
    if (s == "meet" || s == "L^R") return side::meet;
    fail_input("bad side: " + s);
}

bool operator==(const member_ref& a, const member_ref& b) {
    if (a.t != b.t) return false;
    switch (a.t) {
    case member_ref::tag::index: return a.index == b.index;
    case member_ref::tag::center: return a.center == b.center;
    default: return a.parts == b.parts;
    }
}

bool operator<(const member_ref& a, const member_ref& b) {
    if (a.t != b.t) return a.t < b.t;
    switch (a.t) {
    case member_ref::tag::index: return a.index < b.index;
    case member_ref::tag::center: return a.center < b.center;
    default: return std::lexicographical_compare(a.parts.begin(), a.parts.end(), b.parts.begin(), b.parts.end());
    }
}

std::string member_ref::str() const {
    switch (t) {
    case tag::index: return "#" + std::to_string(index);
    case tag::center: return "@" + center.str();
    default: return "<" + parts[0].str() + "," + parts[1].str() + ">";
    }
}

void normalize_members(std::vector<member_ref>& ms) {
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
}

bool group_model::abelian() const {
    switch (k) {
    case kind::lattice: return true;
    case kind::free_group: return free_rank <= 1;
    case kind::table:
        for (std::size_t a = 0; a < mul.size(); ++a)
            for (std::size_t b = a + 1; b < mul.size(); ++b)
                if (mul[a][b] != mul[b][a]) return false;
        return true;
    }
    return false;
}

bool space::finite() const {
    if (std::holds_alternative<finite_ground>(ground)) return true;
    if (product && std::holds_alternative<product_ground>(ground))
        return product->left->finite() && product->right->finite();
    return false;
}

std::vector<point> space::universe() const {
    if (const auto* f = std::get_if<finite_ground>(&ground)) return f->points;
    if (product && std::holds_alternative<product_ground>(ground)) {
        auto ls = product->left->universe();
        auto rs = product->right->universe();
        std::vector<point> out;
        out.reserve(ls.size() * rs.size());
        for (const auto& l : ls)
            for (const auto& r : rs) out.push_back(point::pair(l, r));
        return out;
    }
    fail(status::bad_input, "universe() on a lazy ground set");
}

std::vector<point> space::default_probe() const {
    if (!probes.empty()) return probes.front();
    if (finite()) return universe();
    fail_input("lazy space without a declared probe");
}

bool space::ground_contains(const point& p) const {
    if (const auto* f = std::get_if<finite_ground>(&ground))
        return std::binary_search(f->points.begin(), f->points.end(), p);
    if (const auto* l = std::get_if<lattice_ground>(&ground))
        return p.is_vec() && static_cast<int>(p.vec().size()) == l->dim;
    if (const auto* fg = std::get_if<free_group_ground>(&ground))
        return p.is_word() && is_reduced_word(p.word(), fg->rank);
    if (product)
        return p.is_tuple() && p.tuple().size() == 2 && product->left->ground_contains(p.tuple()[0]) &&
               product->right->ground_contains(p.tuple()[1]);
    return false;
}

const cover& space::cover_at(int i) const {
    require(i >= 0 && i < static_cast<int>(covers.size()), "cover index out of range");
    return covers[static_cast<std::size_t>(i)];
}

// ---------------------------------------------------------------------------
// Group arithmetic
// ---------------------------------------------------------------------------

point group_identity(const group_model& g) {
    switch (g.k) {
    case group_model::kind::table: return point(static_cast<std::int64_t>(g.identity));
    case group_model::kind::lattice: return point(lattice_vec(g.lattice_dim, 0));
    default: return point(std::string());
    }
}

point group_mul(const group_model& g, const point& a, const point& b) {
    switch (g.k) {
    case group_model::kind::table: {
        auto i = a.index(), j = b.index();
        return point(static_cast<std::int64_t>(g.mul[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
    }
    case group_model::kind::lattice:
        return point(vec_add(a.vec(), b.vec()));
    default:
        return point(word_mul(a.word(), b.word()));
    }
}

point group_inv(const group_model& g, const point& a) {
    switch (g.k) {
    case group_model::kind::table: return point(static_cast<std::int64_t>(g.inv[static_cast<std::size_t>(a.index())]));
    case group_model::kind::lattice: return point(vec_neg(a.vec()));
    default: return point(word_inv(a.word()));
    }
}

std::int64_t group_word_length(const group_model& g, const point& a) {
    switch (g.k) {
    case group_model::kind::table: return g.word_length_table[static_cast<std::size_t>(a.index())];
    case group_model::kind::lattice: return max_norm(a.vec());
    default: return word_len(a.word());
    }
}

// ---------------------------------------------------------------------------
// Membership
// ---------------------------------------------------------------------------

namespace {

bool in_restriction(const cover& u, const point& p) {
    if (!u.restriction) return true;
    return std::binary_search(u.restriction->begin(), u.restriction->end(), p);
}

bool group_ball_contains(const space& sp, side s, const point& center, std::int64_t radius, const point& p) {
    require(sp.group.has_value(), "group member on a non-group space");
    const auto& g = *sp.group;
    if (radius < 0) return false;
    auto wl = [&](const point& x) { return group_word_length(g, x); };
    auto inv = [&](const point& x) { return group_inv(g, x); };
    auto mul = [&](const point& x, const point& y) { return group_mul(g, x, y); };
    switch (s) {
    case side::left: // p in cU  <=>  |c^-1 p| <= r
        return wl(mul(inv(center), p)) <= radius;
    case side::right: // p in Uc  <=>  |p c^-1| <= r
        return wl(mul(p, inv(center))) <= radius;
    case side::join:
        return wl(mul(inv(center), p)) <= radius && wl(mul(p, inv(center))) <= radius;
    case side::meet: {
        // p in U c U  <=>  exists u1 with |u1| <= r and |c^-1 u1^-1 p| <= r;
        // abelian groups collapse to p - c in U + U.
        if (g.abelian()) return wl(mul(inv(center), p)) <= 2 * radius;
        if (g.k == group_model::kind::table) {
            for (std::size_t u = 0; u < g.mul.size(); ++u) {
                point up(static_cast<std::int64_t>(u));
                if (wl(up) > radius) continue;
                point rest = mul(inv(center), mul(inv(up), p));
                if (wl(rest) <= radius) return true;
            }
            return false;
        }
        require(radius <= 8, "meet-side membership on free groups needs radius <= 8");
        for (const auto& w : word_ball(g.free_rank, radius)) {
            point up(w);
            point rest = mul(inv(center), mul(inv(up), p));
            if (wl(rest) <= radius) return true;
        }
        return false;
    }
    }
    return false;
}

} // namespace

bool group_ball_member(const space& sp, side s, const point& center, std::int64_t radius, const point& p) {
    return group_ball_contains(sp, s, center, radius, p);
}

rat metric_dist(const space& sp, const point& a, const point& b) {
    if (sp.metric) {
        const auto* f = std::get_if<finite_ground>(&sp.ground);
        require(f != nullptr, "metric model needs a finite ground set");
        auto pos = [&](const point& p) {
            auto it = std::lower_bound(f->points.begin(), f->points.end(), p);
            require(it != f->points.end() && *it == p, "metric distance of a non-ground point");
            return static_cast<std::size_t>(it - f->points.begin());
        };
        return sp.metric->dist[pos(a)][pos(b)];
    }
    // lattice max-norm metric; also covers finite restrictions of lattices
    if (a.is_vec() && b.is_vec()) return rat(max_norm(vec_sub(a.vec(), b.vec())));
    fail_input("no metric on this space");
}

bool member_contains(const space& sp, const cover& u, const member_ref& m, const point& p) {
    if (!in_restriction(u, p)) return false;
    switch (u.family.index()) {
    case 0: { // explicit
        const auto& fam = std::get<explicit_family>(u.family);
        require(m.t == member_ref::tag::index, "explicit cover member referenced by non-index");
        require(m.index >= 0 && m.index < static_cast<int>(fam.members.size()), "member index out of range");
        const auto& cm = fam.members[static_cast<std::size_t>(m.index)];
        if (const auto* es = std::get_if<explicit_set>(&cm))
            return std::binary_search(es->points.begin(), es->points.end(), p);
        if (const auto* mb = std::get_if<metric_ball>(&cm)) return metric_dist(sp, p, mb->center) < mb->radius;
        const auto& gb = std::get<group_ball>(cm);
        return group_ball_contains(sp, gb.s, gb.center, gb.radius, p);
    }
    case 1: { // ball family
        require(m.t == member_ref::tag::center, "ball family member referenced by non-center");
        return metric_dist(sp, p, m.center) < std::get<ball_family>(u.family).radius;
    }
    case 2: { // translate family
        require(m.t == member_ref::tag::center, "translate family member referenced by non-center");
        const auto& tf = std::get<translate_family>(u.family);
        return group_ball_contains(sp, tf.s, m.center, tf.radius, p);
    }
    default: { // product family
        require(m.t == member_ref::tag::pair && m.parts.size() == 2, "product member needs a pair reference");
        require(sp.product.has_value(), "product cover on a non-product space");
        if (!p.is_tuple() || p.tuple().size() != 2) return false;
        const auto& pf = std::get<product_family>(u.family);
        const auto& ls = *sp.product->left;
        const auto& rs = *sp.product->right;
        return member_contains(ls, ls.cover_at(pf.left_cover), m.parts[0], p.tuple()[0]) &&
               member_contains(rs, rs.cover_at(pf.right_cover), m.parts[1], p.tuple()[1]);
    }
    }
}

bool certificate_contains(const space& sp, const cover& u, const certificate& c, const point& p) {
    for (const auto& m : c.members)
        if (member_contains(sp, u, m, p)) return true;
    return false;
}

bool certificate_contains(const space& sp, const certificate& c, const point& p) {
    return certificate_contains(sp, sp.cover_at(c.cover_index), c, p);
}

std::optional<std::vector<point>> enumerate_member(const space& sp, const cover& u, const member_ref& m,
                                                   std::size_t cap) {
    auto restrict_filter = [&](std::vector<point> pts) {
        if (u.restriction) {
            std::vector<point> out;
            for (auto& p : pts)
                if (std::binary_search(u.restriction->begin(), u.restriction->end(), p)) out.push_back(p);
            pts = std::move(out);
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        return pts;
    };

    // Finite universes: filter by membership.
    if (sp.finite()) {
        std::vector<point> out;
        for (const auto& p : sp.universe())
            if (member_contains(sp, u, m, p)) out.push_back(p);
        return out;
    }

    // Lazy grounds: balls are boxes / word balls around the center.
    auto ball_points = [&](const point& center, std::int64_t radius) -> std::optional<std::vector<point>> {
        if (std::holds_alternative<lattice_ground>(sp.ground)) {
            int dim = std::get<lattice_ground>(sp.ground).dim;
            double n = 1;
            for (int i = 0; i < dim; ++i) n *= static_cast<double>(2 * radius + 1);
            if (n > static_cast<double>(cap)) return std::nullopt;
            std::vector<point> out;
            for (const auto& d : lattice_box(dim, radius)) out.push_back(point(vec_add(center.vec(), d.vec())));
            return out;
        }
        if (std::holds_alternative<free_group_ground>(sp.ground)) {
            int rank = std::get<free_group_ground>(sp.ground).rank;
            if (rank > 1 && radius > 10) return std::nullopt;
            std::vector<point> out;
            for (const auto& w : word_ball(rank, radius)) out.push_back(point(word_mul(w, center.word())));
            if (out.size() > cap) return std::nullopt;
            return out;
        }
        return std::nullopt;
    };

    switch (u.family.index()) {
    case 0: {
        const auto& fam = std::get<explicit_family>(u.family);
        require(m.t == member_ref::tag::index && m.index >= 0 && m.index < static_cast<int>(fam.members.size()),
                "bad explicit member reference");
        const auto& cm = fam.members[static_cast<std::size_t>(m.index)];
        if (const auto* es = std::get_if<explicit_set>(&cm)) return restrict_filter(es->points);
        if (const auto* gb = std::get_if<group_ball>(&cm)) {
            // closed translate ball: enumerate U_r then translate by side
            if (gb->s == side::left || (sp.group && sp.group->abelian())) {
                auto pts = ball_points(gb->center, gb->radius);
                if (!pts) return std::nullopt;
                return restrict_filter(std::move(*pts));
            }
            if (gb->s == side::right && std::holds_alternative<free_group_ground>(sp.ground)) {
                auto ball = word_ball(std::get<free_group_ground>(sp.ground).rank, gb->radius);
                std::vector<point> out;
                for (const auto& w : ball) out.push_back(point(word_mul(w, gb->center.word())));
                return restrict_filter(std::move(out));
            }
            return std::nullopt;
        }
        const auto& mb = std::get<metric_ball>(cm);
        if (std::holds_alternative<lattice_ground>(sp.ground)) {
            // strict rational radius: integer extent is ceil(radius) - 1 .. exact
            std::int64_t extent = (mb.radius.num - 1) / mb.radius.den; // max integer < radius
            if (extent < 0) return std::vector<point>{};
            auto pts = ball_points(mb.center, extent);
            if (!pts) return std::nullopt;
            return restrict_filter(std::move(*pts));
        }
        return std::nullopt;
    }
    case 1: {
        const auto& bf = std::get<ball_family>(u.family);
        require(m.t == member_ref::tag::center, "ball family member referenced by non-center");
        if (std::holds_alternative<lattice_ground>(sp.ground)) {
            std::int64_t extent = (bf.radius.num - 1) / bf.radius.den;
            if (extent < 0) return std::vector<point>{};
            auto pts = ball_points(m.center, extent);
            if (!pts) return std::nullopt;
            return restrict_filter(std::move(*pts));
        }
        return std::nullopt;
    }
    case 2: {
        const auto& tf = std::get<translate_family>(u.family);
        require(m.t == member_ref::tag::center, "translate family member referenced by non-center");
        if (std::holds_alternative<lattice_ground>(sp.ground)) {
            auto pts = ball_points(m.center, tf.radius);
            if (!pts) return std::nullopt;
            return restrict_filter(std::move(*pts));
        }
        if (std::holds_alternative<free_group_ground>(sp.ground)) {
            int rank = std::get<free_group_ground>(sp.ground).rank;
            if (rank > 1 && tf.radius > 10) return std::nullopt;
            auto ball = word_ball(rank, tf.radius);
            std::vector<point> out;
            for (const auto& w : ball) {
                switch (tf.s) {
                case side::left: out.push_back(point(word_mul(m.center.word(), w))); break;
                case side::right: out.push_back(point(word_mul(w, m.center.word()))); break;
                default: return std::nullopt;
                }
            }
            return restrict_filter(std::move(out));
        }
        return std::nullopt;
    }
    default: {
        require(m.t == member_ref::tag::pair && sp.product, "bad product member");
        const auto& pf = std::get<product_family>(u.family);
        auto ls = enumerate_member(*sp.product->left, sp.product->left->cover_at(pf.left_cover), m.parts[0], cap);
        auto rs = enumerate_member(*sp.product->right, sp.product->right->cover_at(pf.right_cover), m.parts[1], cap);
        if (!ls || !rs) return std::nullopt;
        if (ls->size() * rs->size() > cap) return std::nullopt;
        std::vector<point> out;
        for (const auto& l : *ls)
            for (const auto& r : *rs) out.push_back(point::pair(l, r));
        return restrict_filter(std::move(out));
    }
    }
}

std::optional<int> member_count(const space& sp, const cover& u) {
    if (u.is_explicit()) return static_cast<int>(u.explicit_members().members.size());
    if (u.family.index() == 3) {
        const auto& pf = std::get<product_family>(u.family);
        auto l = member_count(*sp.product->left, sp.product->left->cover_at(pf.left_cover));
        auto r = member_count(*sp.product->right, sp.product->right->cover_at(pf.right_cover));
        if (l && r) return *l * *r;
        return std::nullopt;
    }
    if (sp.finite()) return static_cast<int>(sp.universe().size()); // one member per center
    return std::nullopt;
}

// All member references of a cover when the member index set is finite.
static std::optional<std::vector<member_ref>> all_member_refs(const space& sp, const cover& u) {
    switch (u.family.index()) {
    case 0: {
        std::vector<member_ref> out;
        int n = static_cast<int>(u.explicit_members().members.size());
        for (int i = 0; i < n; ++i) out.push_back(member_ref::by_index(i));
        return out;
    }
    case 1:
    case 2: {
        if (!sp.finite()) return std::nullopt;
        std::vector<member_ref> out;
        for (const auto& p : sp.universe()) out.push_back(member_ref::by_center(p));
        return out;
    }
    default: {
        const auto& pf = std::get<product_family>(u.family);
        auto ls = all_member_refs(*sp.product->left, sp.product->left->cover_at(pf.left_cover));
        auto rs = all_member_refs(*sp.product->right, sp.product->right->cover_at(pf.right_cover));
        if (!ls || !rs) return std::nullopt;
        std::vector<member_ref> out;
        for (const auto& l : *ls)
            for (const auto& r : *rs) out.push_back(member_ref::by_pair(l, r));
        return out;
    }
    }
}

bool cover_covers(const space& sp, const cover& u, const std::vector<point>& probe) {
    for (const auto& p : probe) {
        if (u.restriction && !std::binary_search(u.restriction->begin(), u.restriction->end(), p)) continue;
        bool hit = false;
        if (u.is_explicit()) {
            int n = static_cast<int>(u.explicit_members().members.size());
            for (int i = 0; i < n && !hit; ++i) hit = member_contains(sp, u, member_ref::by_index(i), p);
        } else if (u.family.index() == 3) {
            auto refs = all_member_refs(sp, u);
            if (!refs) {
                // lazy product: the member centered at p itself
                hit = true;
                if (p.is_tuple()) {
                    auto lm = member_ref::by_center(p.tuple()[0]);
                    auto rm = member_ref::by_center(p.tuple()[1]);
                    hit = member_contains(sp, u, member_ref::by_pair(lm, rm), p);
                }
            } else {
                for (const auto& m : *refs) {
                    if (member_contains(sp, u, m, p)) {
                        hit = true;
                        break;
                    }
                }
            }
        } else {
            // lazy families: the member centered at p contains p (radius >= 0
            // translate, or strict ball with positive radius)
            hit = member_contains(sp, u, member_ref::by_center(p), p);
        }
        if (!hit) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

static void validate_group(const space& sp) {
    const auto& g = *sp.group;
    if (g.k == group_model::kind::table) {
        const auto* f = std::get_if<finite_ground>(&sp.ground);
        require(f != nullptr, "table group needs a finite ground set");
        std::size_t n = f->points.size();
        require(g.mul.size() == n && g.inv.size() == n, "group table size mismatch");
        for (std::size_t a = 0; a < n; ++a) {
            require(g.mul[a].size() == n, "group table row size mismatch");
            require(g.mul[static_cast<std::size_t>(g.identity)][a] == static_cast<int>(a) &&
                        g.mul[a][static_cast<std::size_t>(g.identity)] == static_cast<int>(a),
                    "group identity fails");
            require(g.mul[a][static_cast<std::size_t>(g.inv[a])] == g.identity, "group inverse fails");
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    require(g.mul[static_cast<std::size_t>(g.mul[a][b])][c] ==
                                g.mul[a][static_cast<std::size_t>(g.mul[b][c])],
                            "group associativity fails");
        require(g.word_length_table.size() == n, "missing word-length table");
    }
}

static void validate_metric(const space& sp) {
    const auto* f = std::get_if<finite_ground>(&sp.ground);
    require(f != nullptr, "metric model needs a finite ground set");
    const auto& d = sp.metric->dist;
    std::size_t n = f->points.size();
    require(d.size() == n, "metric size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        require(d[i].size() == n, "metric row size mismatch");
        require(d[i][i] == rat(0), "metric diagonal must be zero");
        for (std::size_t j = 0; j < n; ++j) {
            require(!(d[i][j] < rat(0)), "negative distance");
            require(d[i][j] == d[j][i], "metric must be symmetric");
            for (std::size_t k = 0; k < n; ++k)
                require(!(d[i][k] + d[k][j] < d[i][j]), "triangle inequality fails");
        }
    }
}

void validate_space(const space& sp) {
    if (const auto* f = std::get_if<finite_ground>(&sp.ground)) {
        require(!f->points.empty(), "empty ground set");
        require(std::is_sorted(f->points.begin(), f->points.end()), "finite ground must be sorted");
        require(std::adjacent_find(f->points.begin(), f->points.end()) == f->points.end(),
                "duplicate ground points");
    }
    if (sp.group) validate_group(sp);
    if (sp.metric) validate_metric(sp);
    for (const auto& pr : sp.probes) {
        require(!pr.empty(), "empty probe");
        for (const auto& p : pr) require(sp.ground_contains(p), "probe point outside the ground set");
    }
    for (std::size_t i = 0; i < sp.covers.size(); ++i) {
        const auto& u = sp.covers[i];
        if (u.is_explicit())
            for (const auto& cm : u.explicit_members().members)
                if (const auto* es = std::get_if<explicit_set>(&cm)) {
                    require(std::is_sorted(es->points.begin(), es->points.end()), "member points must be sorted");
                    require(std::adjacent_find(es->points.begin(), es->points.end()) == es->points.end(),
                            "duplicate member points");
                }
        if (sp.finite()) {
            auto pts = u.restriction ? *u.restriction : sp.universe();
            require(cover_covers(sp, u, pts), "cover " + std::to_string(i) + " does not cover the ground set");
        } else {
            for (const auto& pr : sp.probes)
                require(cover_covers(sp, u, pr), "cover " + std::to_string(i) + " misses a probe point");
        }
    }
}

} // namespace cbg
