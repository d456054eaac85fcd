#include "spaces.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "err.hpp"
#include "game.hpp"
#include "solver.hpp"

namespace cbg {

space make_finite_space(int n_points, const std::vector<std::vector<std::vector<std::int64_t>>>& covers,
                        std::string name) {
    require(n_points >= 1, "empty ground set");
    space sp;
    sp.name = std::move(name);
    finite_ground fg;
    for (int i = 0; i < n_points; ++i) fg.points.emplace_back(static_cast<std::int64_t>(i));
    sp.ground = std::move(fg);
    for (std::size_t u = 0; u < covers.size(); ++u) {
        cover c;
        c.label = "u" + std::to_string(u);
        explicit_family fam;
        for (const auto& mem : covers[u]) {
            explicit_set es;
            for (auto i : mem) {
                require(i >= 0 && i < n_points, "member point out of range");
                es.points.emplace_back(i);
            }
            std::sort(es.points.begin(), es.points.end());
            es.points.erase(std::unique(es.points.begin(), es.points.end()), es.points.end());
            fam.members.push_back(std::move(es));
        }
        c.family = std::move(fam);
        sp.covers.push_back(std::move(c));
    }
    validate_space(sp);
    return sp;
}

space make_metric_space(std::vector<std::vector<rat>> dist, const std::vector<rat>& radii, std::string name) {
    space sp;
    sp.name = std::move(name);
    finite_ground fg;
    for (std::size_t i = 0; i < dist.size(); ++i) fg.points.emplace_back(static_cast<std::int64_t>(i));
    sp.ground = std::move(fg);
    sp.metric = metric_model{std::move(dist)};
    require(!radii.empty(), "metric multicover needs at least one radius");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        require(radii[i] > rat(0), "radii must be positive");
        if (i) require(radii[i] < radii[i - 1], "radii must be strictly decreasing");
        cover c;
        c.label = "balls<" + radii[i].str();
        c.family = ball_family{radii[i]};
        sp.covers.push_back(std::move(c));
    }
    // smaller radius refines, so the later cover is the pairwise upper bound
    for (std::size_t i = 0; i < sp.covers.size(); ++i)
        for (std::size_t j = i + 1; j < sp.covers.size(); ++j)
            sp.centered_witness[{static_cast<int>(i), static_cast<int>(j)}] = static_cast<int>(j);
    validate_space(sp);
    return sp;
}

space make_lattice_metric_space(int dim, const std::vector<rat>& radii, std::int64_t probe_box) {
    space sp;
    sp.name = "Z^" + std::to_string(dim) + "-metric";
    sp.ground = lattice_ground{dim};
    sp.probes.push_back(lattice_box(dim, probe_box));
    require(!radii.empty(), "metric multicover needs at least one radius");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        require(radii[i] > rat(0), "radii must be positive");
        if (i) require(radii[i] < radii[i - 1], "radii must be strictly decreasing");
        cover c;
        c.label = "balls<" + radii[i].str();
        c.family = ball_family{radii[i]};
        sp.covers.push_back(std::move(c));
    }
    for (std::size_t i = 0; i < sp.covers.size(); ++i)
        for (std::size_t j = i + 1; j < sp.covers.size(); ++j)
            sp.centered_witness[{static_cast<int>(i), static_cast<int>(j)}] = static_cast<int>(j);
    validate_space(sp);
    return sp;
}

void neighborhood_schedule::validate() const {
    require(!radii.empty(), "empty neighborhood schedule");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        require(radii[i] >= 0, "negative neighborhood radius");
        if (i) {
            require(radii[i] < radii[i - 1], "schedule radii must be strictly decreasing");
            require(radii[i] <= radii[i - 1] / 2, "schedule violates the shrink law r' <= floor(r/2)");
        }
    }
}

namespace {

void add_translate_covers(space& sp, const neighborhood_schedule& sched, side s) {
    sched.validate();
    for (std::size_t i = 0; i < sched.radii.size(); ++i) {
        cover c;
        c.label = side_name(s) + "-ball" + std::to_string(sched.radii[i]);
        c.family = translate_family{s, sched.radii[i]};
        sp.covers.push_back(std::move(c));
    }
    // smaller radius refines (U_r c ⊆ U_r' c for r <= r')
    for (std::size_t i = 0; i < sp.covers.size(); ++i)
        for (std::size_t j = i + 1; j < sp.covers.size(); ++j)
            sp.centered_witness[{static_cast<int>(i), static_cast<int>(j)}] = static_cast<int>(j);
}

std::vector<std::int64_t> bfs_word_lengths(const std::vector<std::vector<int>>& mul, int identity,
                                           const std::vector<int>& gens) {
    std::vector<std::int64_t> dist(mul.size(), -1);
    std::deque<int> q{identity};
    dist[static_cast<std::size_t>(identity)] = 0;
    while (!q.empty()) {
        int a = q.front();
        q.pop_front();
        for (int g : gens) {
            int b = mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(g)];
            if (dist[static_cast<std::size_t>(b)] < 0) {
                dist[static_cast<std::size_t>(b)] = dist[static_cast<std::size_t>(a)] + 1;
                q.push_back(b);
            }
        }
    }
    for (auto d : dist) require(d >= 0, "generators do not generate the group");
    return dist;
}

} // namespace

space make_table_group_space(std::vector<std::vector<int>> mul, std::vector<std::int64_t> generators,
                             const neighborhood_schedule& sched, side s, std::string name) {
    space sp;
    sp.name = std::move(name);
    int n = static_cast<int>(mul.size());
    require(n >= 1, "empty group");
    finite_ground fg;
    for (int i = 0; i < n; ++i) fg.points.emplace_back(static_cast<std::int64_t>(i));
    sp.ground = std::move(fg);

    group_model g;
    g.k = group_model::kind::table;
    g.mul = std::move(mul);
    int identity = -1;
    for (int e = 0; e < n && identity < 0; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            ok = g.mul[static_cast<std::size_t>(e)][static_cast<std::size_t>(a)] == a &&
                 g.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(e)] == a;
        if (ok) identity = e;
    }
    require(identity >= 0, "table has no identity");
    g.identity = identity;
    g.inv.assign(static_cast<std::size_t>(n), -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] == identity)
                g.inv[static_cast<std::size_t>(a)] = b;
    for (int a = 0; a < n; ++a) require(g.inv[static_cast<std::size_t>(a)] >= 0, "table has a non-invertible element");

    // close the generating set under inverses for the word metric
    std::vector<int> gens;
    for (auto x : generators) {
        require(x >= 0 && x < n, "generator out of range");
        gens.push_back(static_cast<int>(x));
        gens.push_back(g.inv[static_cast<std::size_t>(x)]);
        g.generators.emplace_back(x);
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    g.closed_under_inverse = true;
    g.word_length_table = bfs_word_lengths(g.mul, identity, gens);
    sp.group = std::move(g);

    add_translate_covers(sp, sched, s);
    validate_space(sp);
    return sp;
}

space make_cyclic_group_space(int n, const neighborhood_schedule& sched, side s) {
    require(n >= 1, "cyclic group needs n >= 1");
    std::vector<std::vector<int>> mul(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
    std::vector<std::int64_t> gens{n > 1 ? 1 : 0};
    return make_table_group_space(std::move(mul), gens, sched, s, "Z" + std::to_string(n));
}

space make_lattice_group_space(int dim, const neighborhood_schedule& sched, std::int64_t probe_box) {
    space sp;
    sp.name = "Z^" + std::to_string(dim);
    sp.ground = lattice_ground{dim};
    group_model g;
    g.k = group_model::kind::lattice;
    g.lattice_dim = dim;
    for (int i = 0; i < dim; ++i) {
        lattice_vec e(static_cast<std::size_t>(dim), 0);
        e[static_cast<std::size_t>(i)] = 1;
        g.generators.emplace_back(e);
    }
    sp.group = std::move(g);
    sp.probes.push_back(lattice_box(dim, probe_box));
    add_translate_covers(sp, sched, side::right); // abelian: all sides coincide
    validate_space(sp);
    return sp;
}

space make_free_group_space(int rank, const neighborhood_schedule& sched, side s, std::int64_t probe_word_len) {
    require(rank >= 1 && rank <= 26, "free group rank out of range");
    space sp;
    sp.name = "F" + std::to_string(rank);
    sp.ground = free_group_ground{rank};
    group_model g;
    g.k = group_model::kind::free_group;
    g.free_rank = rank;
    for (int i = 0; i < rank; ++i) g.generators.emplace_back(std::string(1, static_cast<char>('a' + i)));
    sp.group = std::move(g);
    std::vector<point> probe;
    for (const auto& w : word_ball(rank, probe_word_len)) probe.emplace_back(w);
    std::sort(probe.begin(), probe.end());
    sp.probes.push_back(std::move(probe));
    add_translate_covers(sp, sched, s);
    validate_space(sp);
    return sp;
}

space make_trivial_group_space(const neighborhood_schedule& sched) {
    std::vector<std::vector<int>> mul{{0}};
    return make_table_group_space(std::move(mul), {0}, sched, side::right, "1");
}

space materialize(const space& sp) {
    if (!sp.finite()) return sp;
    space out = sp;
    auto uni = sp.universe();
    for (auto& u : out.covers) {
        if (u.is_explicit()) continue;
        explicit_family fam;
        if (u.family.index() == 3) {
            const auto& pf = std::get<product_family>(u.family);
            const auto& lsp = *sp.product->left;
            const auto& rsp = *sp.product->right;
            auto refs_of = [](const space& s, const cover& c) {
                std::vector<member_ref> refs;
                if (c.is_explicit())
                    for (int i = 0; i < static_cast<int>(c.explicit_members().members.size()); ++i)
                        refs.push_back(member_ref::by_index(i));
                else
                    for (const auto& p : s.universe()) refs.push_back(member_ref::by_center(p));
                return refs;
            };
            for (const auto& lm : refs_of(lsp, lsp.cover_at(pf.left_cover)))
                for (const auto& rm : refs_of(rsp, rsp.cover_at(pf.right_cover))) {
                    auto m = member_ref::by_pair(lm, rm);
                    explicit_set es;
                    for (const auto& p : uni)
                        if (member_contains(sp, u, m, p)) es.points.push_back(p);
                    fam.members.push_back(std::move(es));
                }
        } else {
            for (const auto& c : uni) {
                explicit_set es;
                for (const auto& p : uni)
                    if (member_contains(sp, u, member_ref::by_center(c), p)) es.points.push_back(p);
                fam.members.push_back(std::move(es));
            }
        }
        u.family = std::move(fam);
        u.restriction.reset(); // restriction already applied to the member sets
    }
    return out;
}

void generator_chain::validate(const space& group_space) const {
    require(group_space.group.has_value(), "generator chain needs a group space");
    const auto& g = *group_space.group;
    for (std::size_t n = 0; n < sets.size(); ++n) {
        const auto& K = sets[n];
        require(!K.empty(), "empty chain set");
        require(std::is_sorted(K.begin(), K.end()), "chain sets must be sorted");
        for (const auto& x : K)
            require(std::binary_search(K.begin(), K.end(), group_inv(g, x)), "chain set is not symmetric");
        if (n + 1 < sets.size()) {
            std::unordered_set<point, point_hash> next(sets[n + 1].begin(), sets[n + 1].end());
            for (const auto& x : K)
                for (const auto& y : K)
                    require(next.count(group_mul(g, x, y)) > 0, "chain violates K_n + K_n ⊆ K_{n+1}");
        }
    }
}

generator_chain box_chain(int dim, int length) {
    generator_chain ch;
    std::int64_t r = 1;
    for (int n = 0; n < length; ++n) {
        ch.sets.push_back(lattice_box(dim, r));
        r *= 2;
    }
    return ch;
}

tri_bool addition_map_perfect(const space& lattice_group, int n_fold, std::int64_t probe_box) {
    require(lattice_group.group.has_value(), "addition-map check needs a group space");
    require(lattice_group.group->k == group_model::kind::lattice,
            "addition-map check is defined for abelian lattice groups");
    require(n_fold >= 1, "n-fold addition needs n >= 1");
    int dim = lattice_group.group->lattice_dim;
    auto box = lattice_box(dim, probe_box);

    // For a member B = U_r + c of a group cover, the clipped preimage
    // { (x_1..x_n) in box^n : x_1 + ... + x_n in B } projects into the probe
    // box on every factor, so per-factor sweep certificates in the same
    // radius cover it; their product is the product-cover certificate.
    std::vector<certificate> evidence;
    for (int ci = 0; ci < static_cast<int>(lattice_group.covers.size()); ++ci) {
        for (int f = 0; f < n_fold; ++f) {
            auto c = bounded_by(lattice_group, ci, box, std::nullopt);
            if (!c) {
                tri_bool t = tri_bool::no("factor projection of the clipped preimage is not bounded");
                t.bad_cover = ci;
                return t;
            }
            evidence.push_back(std::move(*c));
        }
    }
    return tri_bool::yes(std::move(evidence), true,
                         "clipped preimages are product-bounded via factor sweeps");
}

space group_space_on_side(const space& G, side s) {
    require(G.group.has_value(), "side switch needs a group space");
    space out = G;
    for (auto& u : out.covers) {
        if (auto* tf = std::get_if<translate_family>(&u.family)) {
            tf->s = s;
            u.label = side_name(s) + "-ball" + std::to_string(tf->radius);
        }
    }
    validate_space(out);
    return out;
}

transcript group_game_on_side(const space& G, side s, const game_config& cfg, const player_one& one,
                              const strategy& two) {
    return group_game(group_space_on_side(G, s), cfg, one, two);
}

tri_bool o_bounded(const space& group_space, const game_config& cfg) {
    if (group_space.finite()) return check_principle(group_space, principle::menger, cfg);
    return tri_bool::unknown("o-boundedness on lazy groups needs probe games");
}

tri_bool strictly_o_bounded(const space& group_space, const game_config& cfg) {
    auto res = solve(group_space, cfg);
    if (res.winner == player::two) return tri_bool::yes();
    return tri_bool::no("first player wins the group game");
}

} // namespace cbg
