#include "maps.hpp"

#include <algorithm>

#include "err.hpp"

namespace cbg {

std::vector<point> map_image(const space_map& f, const std::vector<point>& pts) {
    std::vector<point> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(f.fn(p));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<point> map_preimage(const space_map& f, const std::vector<point>& source_pts,
                                const set_pred& target_set) {
    std::vector<point> out;
    for (const auto& p : source_pts)
        if (target_set(f.fn(p))) out.push_back(p);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

std::vector<point> source_scope(const space& source) {
    return source.finite() ? source.universe() : source.default_probe();
}

// member point sets of a cover, exhaustive when enumerable, probe-centered otherwise
struct member_list {
    std::vector<std::pair<member_ref, std::vector<point>>> members;
    bool exhaustive = true;
};

member_list list_members(const space& sp, int cover_index) {
    member_list out;
    const auto& u = sp.cover_at(cover_index);
    if (u.is_explicit()) {
        for (int i = 0; i < static_cast<int>(u.explicit_members().members.size()); ++i) {
            auto pts = enumerate_member(sp, u, member_ref::by_index(i));
            require(pts.has_value(), "cover member not enumerable");
            out.members.emplace_back(member_ref::by_index(i), std::move(*pts));
        }
        return out;
    }
    std::vector<point> centers;
    if (sp.finite()) {
        centers = sp.universe();
    } else {
        out.exhaustive = false;
        centers = sp.default_probe();
        if (sp.group) centers.push_back(group_identity(*sp.group));
    }
    std::sort(centers.begin(), centers.end());
    centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
    for (const auto& c : centers) {
        auto pts = enumerate_member(sp, u, member_ref::by_center(c));
        require(pts.has_value(), "cover member not enumerable");
        out.members.emplace_back(member_ref::by_center(c), std::move(*pts));
    }
    return out;
}

} // namespace

tri_bool validate_map(const space& source, const space& target, const space_map& f, int search_bound) {
    bool probe_scoped = source.lazy() || target.lazy();
    std::vector<certificate> evidence;
    if (f.k == space_map::kind::uniformly_bounded) {
        require(f.assign.size() == target.covers.size(), "assignment must map every target cover");
        for (int v = 0; v < static_cast<int>(target.covers.size()); ++v) {
            int u = f.assign[static_cast<std::size_t>(v)];
            auto ms = list_members(source, u);
            probe_scoped |= !ms.exhaustive;
            for (auto& [m, pts] : ms.members) {
                auto img = map_image(f, pts);
                auto c = bounded_by(target, v, img, budget(search_bound));
                if (!c) {
                    tri_bool t = tri_bool::no("image of a source member is not target-bounded");
                    t.bad_member = m;
                    t.bad_cover = v;
                    t.counterexample = img;
                    return t;
                }
                evidence.push_back(std::move(*c));
            }
        }
        return tri_bool::yes(std::move(evidence), probe_scoped);
    }
    require(f.assign.size() == source.covers.size(), "assignment must map every source cover");
    auto scope = source_scope(source);
    for (int u = 0; u < static_cast<int>(source.covers.size()); ++u) {
        int v = f.assign[static_cast<std::size_t>(u)];
        auto ms = list_members(target, v);
        probe_scoped |= !ms.exhaustive || source.lazy();
        for (auto& [m, pts] : ms.members) {
            auto pre = map_preimage(f, scope, pred_of_points(pts));
            auto c = bounded_by(source, u, pre, budget(search_bound));
            if (!c) {
                tri_bool t = tri_bool::no("preimage of a target member is not source-bounded");
                t.bad_member = m;
                t.bad_cover = u;
                t.counterexample = pre;
                return t;
            }
            evidence.push_back(std::move(*c));
        }
    }
    return tri_bool::yes(std::move(evidence), probe_scoped);
}

certificate pull_certificate(const space& source, const space& target, const space_map& f, int source_cover,
                             const certificate& target_cert) {
    require(f.k == space_map::kind::perfect, "pulling certificates needs a perfect map");
    require(source_cover >= 0 && source_cover < static_cast<int>(source.covers.size()),
            "source cover out of range");
    require(f.assign[static_cast<std::size_t>(source_cover)] == target_cert.cover_index,
            "certificate cover does not match the perfectness assignment");
    if (f.pull_hook) {
        auto c = f.pull_hook(target_cert, source_cover);
        require(c.has_value(), "pull hook failed to produce a certificate");
        return *c;
    }
    auto scope = source_scope(source);
    auto pre = map_preimage(f, scope, pred_of_certificate(target, target_cert));
    auto c = bounded_by(source, source_cover, pre, std::nullopt);
    if (!c)
        fail_input("preimage of the certificate union is not representable in source cover " +
                   std::to_string(source_cover));
    return *c;
}

certificate push_certificate(const space& source, const space& target, const space_map& f, int target_cover,
                             const certificate& source_cert) {
    require(f.k == space_map::kind::uniformly_bounded, "pushing certificates needs a uniformly bounded map");
    require(target_cover >= 0 && target_cover < static_cast<int>(target.covers.size()),
            "target cover out of range");
    require(f.assign[static_cast<std::size_t>(target_cover)] == source_cert.cover_index,
            "certificate cover does not match the boundedness assignment");
    if (f.push_hook) {
        auto c = f.push_hook(source_cert, target_cover);
        require(c.has_value(), "push hook failed to produce a certificate");
        return *c;
    }
    // image of the certificate union: enumerate the members
    std::vector<point> pts;
    const auto& u = source.cover_at(source_cert.cover_index);
    for (const auto& m : source_cert.members) {
        auto mp = enumerate_member(source, u, m);
        require(mp.has_value(), "certificate member not enumerable for image transfer");
        pts.insert(pts.end(), mp->begin(), mp->end());
    }
    auto img = map_image(f, pts);
    auto c = bounded_by(target, target_cover, img, std::nullopt);
    if (!c)
        fail_input("image of the certificate union is not representable in target cover " +
                   std::to_string(target_cover));
    return *c;
}

space_map identity_perfect_map(const space& source, const space& target, int search_bound) {
    space_map f;
    f.k = space_map::kind::perfect;
    f.fn = [](const point& p) { return p; };
    // combined space so coarser_than sees both multicovers
    space combined = source;
    std::size_t base = combined.covers.size();
    for (const auto& c : target.covers) combined.covers.push_back(c);
    for (std::size_t u = 0; u < source.covers.size(); ++u) {
        int found = -1;
        for (std::size_t v = 0; v < target.covers.size() && found < 0; ++v) {
            auto t = coarser_than(combined, static_cast<int>(u), static_cast<int>(base + v), search_bound);
            if (t.is_yes()) found = static_cast<int>(v);
        }
        require(found >= 0, "identity map is not perfect: no target cover dominates source cover " +
                                std::to_string(u));
        f.assign.push_back(found);
    }
    return f;
}

} // namespace cbg
