#include <doctest.h>

#include <core/combinators.hpp>
#include <core/io.hpp>
#include <core/lifts.hpp>
#include <core/solver.hpp>
#include <core/spaces.hpp>

#include "support/brute.hpp"

using namespace cbg;

namespace {

std::vector<point> pts(std::initializer_list<std::int64_t> xs) {
    std::vector<point> out;
    for (auto x : xs) out.emplace_back(x);
    return out;
}

certificate cert_of(int cover, std::initializer_list<int> members) {
    certificate c;
    c.cover_index = cover;
    for (int m : members) c.members.push_back(member_ref::by_index(m));
    return c;
}

} // namespace

TEST_CASE("union strategy") {
    SUBCASE("two singleton pieces with summed budgets") {
        auto sp = make_finite_space(4, {{{0}, {1}, {2}, {3}}});
        auto a = solve(sp, game_config::cover_game(3, budget(1), pts({0, 1}))); // piece 0, full horizon
        auto b = solve(sp, game_config::cover_game(2, budget(1), pts({2, 3}))); // piece 1, tail horizon
        REQUIRE(a.winner == player::two);
        REQUIRE(b.winner == player::two);
        auto u = union_strategy({a.policy, b.policy});
        auto budgets = u->declared_budgets(3);
        REQUIRE(budgets.size() == 3);
        CHECK(*budgets[0] == 1);
        CHECK(*budgets[1] == 2);
        CHECK(*budgets[2] == 2);
        auto cfg = game_config::cover_game(3, budget(1), sp.universe());
        auto wc = evaluate_strategy(sp, cfg, *u, true); // declared schedule governs legality
        CHECK(wc.winner == player::two);
    }
    SUBCASE("a single whole-space piece reproduces the piece strategy at round zero") {
        auto sp = make_finite_space(3, {{{0, 1}, {2}}, {{0}, {1, 2}}});
        auto res = solve(sp, game_config::cover_game(2, budget(1), sp.universe()));
        auto u = union_strategy({res.policy});
        for (int c = 0; c < 2; ++c) {
            cover_seq h{cover_handle::of_index(c)};
            CHECK(u->respond(sp, h) == res.policy->respond(sp, h));
        }
    }
    SUBCASE("round-n certificate is the set union of the shifted piece certificates") {
        auto sp = make_finite_space(4, {{{0}, {1}, {2}, {3}}, {{0, 1}, {2, 3}}});
        auto a = solve(sp, game_config::cover_game(3, budget(1), pts({0, 1})));
        auto b = solve(sp, game_config::cover_game(2, budget(1), pts({2, 3})));
        auto u = union_strategy({a.policy, b.policy});
        cover_seq h{cover_handle::of_index(0), cover_handle::of_index(1), cover_handle::of_index(0)};
        auto combined = u->respond(sp, h);
        cover_seq shifted{h[1], h[2]};
        auto ca = a.policy->respond(sp, h);
        auto cb = b.policy->respond(sp, shifted);
        std::vector<member_ref> expect = ca.members;
        expect.insert(expect.end(), cb.members.begin(), cb.members.end());
        normalize_members(expect);
        CHECK(combined.members == expect);
    }
    SUBCASE("witness form keeps the class on stacked pieces") {
        auto sp = make_finite_space(4, {{{0, 1}, {2, 3}, {0, 1, 2, 3}}});
        // three stacked γ witnesses for pieces {0,1}, {2,3}, {0..3}
        std::vector<std::vector<certificate>> stacks;
        stacks.push_back({cert_of(0, {0}), cert_of(0, {0}), cert_of(0, {0}), cert_of(0, {0})});
        stacks.push_back({cert_of(0, {1}), cert_of(0, {1}), cert_of(0, {1})});
        stacks.push_back({cert_of(0, {2}), cert_of(0, {2})});
        auto w = union_witnesses(sp, stacks, witness_class::gamma, 0);
        CHECK(w.m == 2);
        CHECK(witness_holds(sp, w, sp.universe()));
    }
}

TEST_CASE("gamma upgrade") {
    auto sp = make_finite_space(3, {{{0}, {1}, {2}}, {{0, 1}, {2}}});
    auto res = solve(sp, game_config::cover_game(3, budget(1), sp.universe()));
    REQUIRE(res.winner == player::two);
    auto up = gamma_upgrade(res.policy);

    SUBCASE("history of length one is the base response") {
        for (int c = 0; c < 2; ++c) {
            cover_seq h{cover_handle::of_index(c)};
            CHECK(up->respond(sp, h) == res.policy->respond(sp, h));
        }
    }
    SUBCASE("length three unions the four subsequence responses") {
        cover_seq h{cover_handle::of_index(0), cover_handle::of_index(1), cover_handle::of_index(0)};
        auto got = up->respond(sp, h);
        std::vector<member_ref> expect;
        for (auto idxs : std::vector<std::vector<int>>{{2}, {0, 2}, {1, 2}, {0, 1, 2}}) {
            cover_seq sub;
            for (int i : idxs) sub.push_back(h[static_cast<std::size_t>(i)]);
            auto c = res.policy->respond(sp, sub);
            expect.insert(expect.end(), c.members.begin(), c.members.end());
        }
        normalize_members(expect);
        CHECK(got.members == expect);
    }
    SUBCASE("subsequence containment holds exhaustively") {
        int L = 3;
        for (const auto& seq : all_index_sequences(2, L)) {
            for (std::uint64_t mask = 1; mask < (1u << L); ++mask) {
                std::vector<int> idxs;
                for (int i = 0; i < L; ++i)
                    if (mask & (1u << i)) idxs.push_back(i);
                cover_seq sub;
                for (std::size_t j = 0; j < idxs.size(); ++j) {
                    sub.push_back(cover_handle::of_index(seq[static_cast<std::size_t>(idxs[j])]));
                    cover_seq pre;
                    for (int q = 0; q <= idxs[j]; ++q)
                        pre.push_back(cover_handle::of_index(seq[static_cast<std::size_t>(q)]));
                    auto base_cert = res.policy->respond(sp, sub);
                    auto up_cert = up->respond(sp, pre);
                    for (const auto& p : sp.universe())
                        if (certificate_contains(sp, base_cert, p)) CHECK(certificate_contains(sp, up_cert, p));
                }
            }
        }
    }
    SUBCASE("budget schedule doubles per round") {
        auto budgets = up->declared_budgets(4);
        CHECK(*budgets[0] == 1);
        CHECK(*budgets[1] == 2);
        CHECK(*budgets[2] == 4);
        CHECK(*budgets[3] == 8);
    }
    SUBCASE("horizon cap rejects long histories") {
        cover_seq h(14, cover_handle::of_index(0));
        CHECK_THROWS_AS((void)up->respond(sp, h), error);
    }
    SUBCASE("constant strategies pass through unchanged") {
        auto cf = std::make_shared<constant_full_strategy>();
        CHECK(gamma_upgrade(cf) == cf);
    }
}

TEST_CASE("product strategy") {
    SUBCASE("two single-point factors win trivially") {
        auto a = std::make_shared<space>(make_finite_space(1, {{{0}}}));
        auto prod = product_space(a, a);
        auto ra = solve(*a, game_config::cover_game(1, budget(1), a->universe()));
        auto ps = product_strategy(gamma_upgrade(ra.policy), gamma_upgrade(ra.policy));
        auto cfg = game_config::cover_game(1, budget{}, prod.universe());
        CHECK(evaluate_strategy(prod, cfg, *ps).winner == player::two);
    }
    SUBCASE("two solved two-point instances win the product game") {
        // factors whose upgraded policies have the γ-output property at this
        // horizon (the combinator's precondition)
        auto a = std::make_shared<space>(make_finite_space(2, {{{0}, {1}}}));
        auto b = std::make_shared<space>(make_finite_space(2, {{{0}, {1}}}));
        int L = 2;
        auto ra = solve(*a, game_config::cover_game(L, budget(1), a->universe()));
        auto rb = solve(*b, game_config::cover_game(L, budget(1), b->universe()));
        REQUIRE(ra.winner == player::two);
        REQUIRE(rb.winner == player::two);
        auto prod = product_space(a, b);
        auto ps = product_strategy(gamma_upgrade(ra.policy), gamma_upgrade(rb.policy));
        auto cfg = game_config::cover_game(L, budget{}, prod.universe());
        auto wc = evaluate_strategy(prod, cfg, *ps);
        CHECK(wc.winner == player::two);
        CHECK(wc.plays == 1); // one product cover, horizon 2
    }
    SUBCASE("two strictly-o-bounded group factors stay winning") {
        neighborhood_schedule sched{{1}};
        auto g1 = std::make_shared<space>(materialize(make_cyclic_group_space(4, sched, side::left)));
        auto g2 = std::make_shared<space>(materialize(make_cyclic_group_space(3, sched, side::left)));
        int L = 2;
        auto r1 = solve(*g1, game_config::cover_game(L, budget(1), g1->universe()));
        auto r2 = solve(*g2, game_config::cover_game(L, budget(1), g2->universe()));
        REQUIRE(r1.winner == player::two);
        REQUIRE(r2.winner == player::two);
        auto u1 = gamma_upgrade(r1.policy);
        auto u2 = gamma_upgrade(r2.policy);
        // γ-output property holds: both upgraded policies cover their group
        // at the final round along every play (the combinator's precondition)
        for (auto& [sp, up] : std::vector<std::pair<std::shared_ptr<space>, strategy_ptr>>{{g1, u1}, {g2, u2}})
            for (auto& seq : all_index_sequences(static_cast<int>(sp->covers.size()), L)) {
                cover_seq h;
                for (int i : seq) h.push_back(cover_handle::of_index(i));
                auto cert = up->respond(*sp, h);
                for (const auto& p : sp->universe()) REQUIRE(certificate_contains(*sp, cert, p));
            }
        auto prod = product_space(g1, g2);
        auto ps = product_strategy(u1, u2);
        auto cfg = game_config::cover_game(L, budget{}, prod.universe());
        CHECK(evaluate_strategy(prod, cfg, *ps).winner == player::two);
    }
    SUBCASE("non-product covers are rejected") {
        auto sp = make_finite_space(2, {{{0}, {1}}});
        auto res = solve(sp, game_config::cover_game(2, budget(1), sp.universe()));
        auto ps = product_strategy(res.policy, res.policy);
        cover_seq h{cover_handle::of_index(0)};
        CHECK_THROWS_AS((void)ps->respond(sp, h), error);
    }
}

TEST_CASE("pullback strategy") {
    SUBCASE("identity between equivalent multicovers translates the strategy") {
        auto src = make_finite_space(3, {{{0, 1}, {2}}});
        auto tgtv = make_finite_space(3, {{{0, 1}, {1, 2}}});
        auto tgt = std::make_shared<space>(tgtv);
        auto f = identity_perfect_map(src, *tgt);
        auto res = solve(*tgt, game_config::cover_game(2, budget(1), tgt->universe()));
        REQUIRE(res.winner == player::two);
        auto pb = pullback_strategy(tgt, f, res.policy);
        auto cfg = game_config::cover_game(2, budget{}, src.universe());
        CHECK(evaluate_strategy(src, cfg, *pb).winner == player::two);
    }
    SUBCASE("a two-to-one collapse pulls a winning strategy back") {
        // source: four points, target: two points, f(x) = x / 2
        auto src = make_finite_space(4, {{{0, 1}, {2, 3}}});
        auto tgt = std::make_shared<space>(make_finite_space(2, {{{0}, {1}}}));
        space_map f;
        f.k = space_map::kind::perfect;
        f.fn = [](const point& p) { return point(p.index() / 2); };
        f.assign = {0};
        REQUIRE(validate_map(src, *tgt, f).is_yes());
        auto res = solve(*tgt, game_config::cover_game(2, budget(1), tgt->universe()));
        REQUIRE(res.winner == player::two);
        auto pb = pullback_strategy(tgt, f, res.policy);
        auto cfg = game_config::cover_game(2, budget{}, src.universe());
        auto wc = evaluate_strategy(src, cfg, *pb);
        CHECK(wc.winner == player::two);
    }
}

TEST_CASE("pushforward witness") {
    SUBCASE("identity leaves the witness unchanged") {
        auto sp = make_finite_space(3, {{{0, 1, 2}}});
        space_map f;
        f.k = space_map::kind::uniformly_bounded;
        f.fn = [](const point& p) { return p; };
        f.assign = {0};
        witness_sequence w;
        w.cls = witness_class::gamma;
        w.items = {cert_of(0, {0}), cert_of(0, {0})};
        auto out = pushforward_witness(sp, sp, f, w, sp.universe());
        CHECK(out.cls == witness_class::gamma);
        CHECK(out.items.size() == 2);
        CHECK(witness_holds(sp, out, sp.universe()));
    }
    SUBCASE("collapse maps preserve the class when onto the probe") {
        auto src = make_finite_space(4, {{{0, 1}, {2, 3}}});
        auto tgt = make_finite_space(2, {{{0}, {1}}});
        space_map f;
        f.k = space_map::kind::uniformly_bounded;
        f.fn = [](const point& p) { return point(p.index() / 2); };
        f.assign = {0};
        REQUIRE(validate_map(src, tgt, f).is_yes());
        witness_sequence w;
        w.cls = witness_class::cover;
        w.items = {cert_of(0, {0}), cert_of(0, {1})};
        REQUIRE(witness_holds(src, w, src.universe()));
        auto out = pushforward_witness(src, tgt, f, w, tgt.universe());
        CHECK(out.cls == witness_class::cover);
        CHECK(witness_holds(tgt, out, tgt.universe()));
    }
    SUBCASE("non-surjective maps downgrade the class with a note") {
        auto src = make_finite_space(2, {{{0, 1}}});
        auto tgt = make_finite_space(2, {{{0}, {1}}, {{0, 1}}});
        space_map f;
        f.k = space_map::kind::uniformly_bounded;
        f.fn = [](const point&) { return point(std::int64_t{0}); };
        f.assign = {0, 0};
        witness_sequence w;
        w.cls = witness_class::gamma;
        w.items = {certificate{0, {member_ref::by_index(0)}}};
        auto out = pushforward_witness(src, tgt, f, w, tgt.universe());
        CHECK(out.cls == witness_class::cover);
        CHECK_FALSE(out.note.empty());
    }
    SUBCASE("quotient of Z onto the six-element cyclic group carries a gamma witness") {
        neighborhood_schedule zs{{1}};
        auto z = make_lattice_group_space(1, zs, 4);
        auto z6 = make_cyclic_group_space(6, neighborhood_schedule{{1}}, side::right);
        space_map f;
        f.k = space_map::kind::uniformly_bounded;
        f.fn = [](const point& p) { return point(((p.vec()[0] % 6) + 6) % 6); };
        f.assign = {0};
        REQUIRE(validate_map(z, z6, f).is_yes());
        witness_sequence w;
        w.cls = witness_class::gamma;
        for (int r = 0; r < 2; ++r) {
            certificate c;
            c.cover_index = 0;
            for (auto x : {-3, 0, 3}) c.members.push_back(member_ref::by_center(point(lattice_vec{x})));
            w.items.push_back(std::move(c));
        }
        REQUIRE(witness_holds(z, w, z.default_probe()));
        auto out = pushforward_witness(z, z6, f, w, z6.universe());
        CHECK(out.cls == witness_class::gamma);
        CHECK(witness_holds(z6, out, z6.universe()));
    }
}

TEST_CASE("omega witnesses from power witnesses") {
    SUBCASE("a single power-one stack reduces to a cover witness") {
        auto sp = make_finite_space(3, {{{0, 1}, {1, 2}, {0, 2}}});
        std::vector<std::vector<certificate>> stacks{{cert_of(0, {0}), cert_of(0, {1})}};
        auto w = scheepers_from_menger_powers(sp, stacks, sp.universe());
        CHECK(w.cls == witness_class::omega);
        CHECK(w.k == 1);
        CHECK(witness_holds(sp, w, sp.universe()));
    }
    SUBCASE("hand-built power witnesses on a three-point space give an omega-two witness") {
        auto sp = make_finite_space(3, {{{0, 1}, {1, 2}, {0, 2}}});
        std::vector<std::vector<certificate>> stacks;
        stacks.push_back({cert_of(0, {0}), cert_of(0, {1}), cert_of(0, {2})}); // power 1: a plain cover
        stacks.push_back({certificate{}, cert_of(0, {0, 1}), cert_of(0, {1, 2}), cert_of(0, {0, 2})});
        stacks[1][0].cover_index = -1; // power 2 joins from round 1
        auto w = scheepers_from_menger_powers(sp, stacks, sp.universe());
        CHECK(w.k == 2);
        CHECK(witness_holds(sp, w, sp.universe()));
    }
    SUBCASE("lattice box witnesses engulf probe triples") {
        neighborhood_schedule sched{{4, 2, 1}};
        auto z = make_lattice_group_space(1, sched, 6);
        auto probe = z.default_probe();
        std::vector<std::vector<certificate>> stacks(2);
        for (int r = 0; r < 3; ++r) {
            auto c = bounded_by(z, r, probe, std::nullopt);
            REQUIRE(c.has_value());
            stacks[0].push_back(*c);
            stacks[1].push_back(*c);
        }
        auto w = scheepers_from_menger_powers(z, stacks, probe);
        CHECK(w.k == 2);
        CHECK(witness_holds(z, w, probe));
        CHECK(is_omega_cover(witness_family(z, w), probe, 2));
    }
}

TEST_CASE("power witnesses from omega witnesses") {
    SUBCASE("power one is the identity transfer") {
        auto sp = make_finite_space(3, {{{0, 1, 2}}});
        witness_sequence w;
        w.cls = witness_class::omega;
        w.k = 1;
        w.items = {cert_of(0, {0})};
        auto pw = menger_power_from_scheepers(sp, w, 1, {{0}});
        REQUIRE(pw.factor_certs.size() == 1);
        REQUIRE(pw.factor_certs[0].size() == 1);
        for (const auto& p : sp.universe()) CHECK(certificate_contains(sp, pw.factor_certs[0][0], p));
    }
    SUBCASE("squares of omega rounds cover the power probe on a finite space") {
        auto sp = make_finite_space(3, {{{0, 1}, {1, 2}, {0, 2}}});
        witness_sequence w;
        w.cls = witness_class::omega;
        w.k = 2;
        w.items = {cert_of(0, {0}), cert_of(0, {1}), cert_of(0, {2})};
        REQUIRE(witness_holds(sp, w, sp.universe()));
        auto pw = menger_power_from_scheepers(sp, w, 2, {{0, 0}, {0, 0}, {0, 0}});
        // the squares cover the power probe: every pair engulfed by some round
        std::vector<set_pred> rounds;
        for (std::size_t r = 0; r < w.items.size(); ++r) rounds.push_back(pred_of_certificate(sp, w.items[r]));
        CHECK(is_omega_cover(rounds, sp.universe(), 2));
        // and each factor certificate replays the same bounded set
        for (std::size_t r = 0; r < pw.factor_certs.size(); ++r)
            for (const auto& fc : pw.factor_certs[r])
                for (const auto& p : sp.universe())
                    CHECK(certificate_contains(sp, w.items[r], p) == certificate_contains(sp, fc, p));
    }
    SUBCASE("lattice boxes transfer across covers") {
        neighborhood_schedule sched{{4, 2, 1}};
        auto z = make_lattice_group_space(1, sched, 6);
        auto probe = z.default_probe();
        witness_sequence w;
        w.cls = witness_class::omega;
        w.k = 2;
        for (int r = 0; r < 3; ++r) {
            auto c = bounded_by(z, r, probe, std::nullopt);
            REQUIRE(c.has_value());
            w.items.push_back(*c);
        }
        auto pw = menger_power_from_scheepers(z, w, 2, {{0, 1}, {1, 2}, {2, 2}});
        CHECK(pw.factor_certs.size() == 3);
        for (const auto& round : pw.factor_certs)
            for (const auto& fc : round)
                for (const auto& p : probe) CHECK(certificate_contains(z, fc, p));
    }
    SUBCASE("a transfer beyond the search bound is a missing-centeredness error") {
        neighborhood_schedule sched{{8, 1}};
        auto z = make_lattice_group_space(1, sched, 20);
        witness_sequence w;
        w.cls = witness_class::omega;
        w.k = 1;
        auto c = bounded_by(z, 0, z.default_probe(), std::nullopt);
        REQUIRE(c.has_value());
        w.items = {*c};
        CHECK_THROWS_AS((void)menger_power_from_scheepers(z, w, 2, {{0, 1}}, 2), error);
    }
}

TEST_CASE("proper omega witnesses from stacked omega witnesses") {
    SUBCASE("two identical stacks meet the default occurrence count") {
        auto sp = make_finite_space(2, {{{0, 1}}});
        std::vector<std::vector<certificate>> stacks;
        stacks.push_back({cert_of(0, {0}), cert_of(0, {0})});
        stacks.push_back({cert_of(0, {0}), cert_of(0, {0})});
        auto w = proper_omega_from_scheepers(sp, stacks, sp.universe(), 2, 2);
        CHECK(w.t == 2);
        CHECK(witness_holds(sp, w, sp.universe()));
    }
    SUBCASE("three shifted stacks on a four-point space reach three occurrences") {
        auto sp = make_finite_space(4, {{{0, 1}, {2, 3}, {0, 1, 2, 3}}});
        std::vector<std::vector<certificate>> stacks;
        stacks.push_back({cert_of(0, {2}), cert_of(0, {2}), cert_of(0, {2}), cert_of(0, {2})});
        stacks.push_back({cert_of(0, {2}), cert_of(0, {2}), cert_of(0, {2})});
        stacks.push_back({cert_of(0, {2}), cert_of(0, {2})});
        auto w = proper_omega_from_scheepers(sp, stacks, sp.universe(), 2, 3);
        CHECK(w.t == 3);
        CHECK(witness_holds(sp, w, sp.universe()));
    }
    SUBCASE("fewer stacks than requested occurrences reduce t with a warning") {
        auto sp = make_finite_space(2, {{{0, 1}}});
        std::vector<std::vector<certificate>> stacks{{cert_of(0, {0}), cert_of(0, {0})}};
        auto w = proper_omega_from_scheepers(sp, stacks, sp.universe(), 2, 3);
        CHECK(w.t == 1);
        CHECK_FALSE(w.note.empty());
    }
}

TEST_CASE("gamma products") {
    auto a = std::make_shared<space>(make_finite_space(2, {{{0, 1}, {0}}}));
    auto b = std::make_shared<space>(make_finite_space(2, {{{0, 1}, {1}}}));
    auto prod = product_space(a, b);
    SUBCASE("constant full witnesses multiply to a constant witness") {
        witness_sequence wa, wb;
        wa.cls = wb.cls = witness_class::gamma;
        wa.items = {cert_of(0, {0}), cert_of(0, {0})};
        wb.items = {cert_of(0, {0}), cert_of(0, {0})};
        auto w = hurewicz_product_witness(prod, wa, wb);
        CHECK(w.f == 0);
        CHECK(witness_holds(prod, w, prod.default_probe()));
    }
    SUBCASE("miss budgets add") {
        witness_sequence wa, wb;
        wa.cls = wb.cls = witness_class::gamma;
        wa.f = 1;
        wa.items = {cert_of(0, {1}), cert_of(0, {0}), cert_of(0, {0})}; // point 1 misses round 0
        wb.items = {cert_of(0, {0}), cert_of(0, {0}), cert_of(0, {0})};
        REQUIRE(witness_holds(*a, wa, a->universe()));
        REQUIRE(witness_holds(*b, wb, b->universe()));
        auto w = hurewicz_product_witness(prod, wa, wb);
        CHECK(w.f == 1);
        CHECK(witness_holds(prod, w, prod.default_probe()));
    }
    SUBCASE("length mismatch truncates with a note") {
        witness_sequence wa, wb;
        wa.cls = wb.cls = witness_class::gamma;
        wa.items = {cert_of(0, {0}), cert_of(0, {0}), cert_of(0, {0})};
        wb.items = {cert_of(0, {0}), cert_of(0, {0})};
        auto w = hurewicz_product_witness(prod, wa, wb);
        CHECK(w.items.size() == 2);
        CHECK_FALSE(w.note.empty());
    }
}

TEST_CASE("sigma-bounded products") {
    SUBCASE("a single finite piece is a pure pullback") {
        auto x = std::make_shared<space>(make_finite_space(2, {{{0}, {1}}}));
        auto y = std::make_shared<space>(make_finite_space(2, {{{0, 1}}}));
        auto prod = product_space(x, y);
        auto rx = solve(*x, game_config::cover_game(2, budget(1), x->universe()));
        REQUIRE(rx.winner == player::two);
        auto s = sigma_bounded_product_strategy(rx.policy, {y->universe()});
        auto cfg = game_config::cover_game(2, budget{}, prod.universe());
        auto wc = evaluate_strategy(prod, cfg, *s);
        CHECK(wc.winner == player::two);
        // the round-0 answer is exactly the pullback: Θ_X's certificate paired
        // with the piece certificate
        cover_seq h{cover_handle::of_index(0)};
        auto got = s->respond(prod, h);
        auto cx = rx.policy->respond(*x, h);
        CHECK(got.members.size() == cx.members.size()); // one Y member per X member
    }
    SUBCASE("growing pieces with a proper omega witness give an omega witness on the product") {
        neighborhood_schedule sched{{8, 4, 2}};
        auto z = std::make_shared<space>(make_lattice_group_space(1, sched, 6));
        auto y = std::make_shared<space>(make_finite_space(3, {{{0}, {1}, {2}}, {{0, 1, 2}}}));
        auto prod = product_space(z, y);
        auto probe = z->default_probe();
        // proper omega witness on Z: every round covers the whole probe box
        witness_sequence wz;
        wz.cls = witness_class::proper_omega;
        wz.k = 2;
        wz.t = 2;
        for (int r = 0; r < 3; ++r) {
            auto c = bounded_by(*z, r, probe, std::nullopt);
            REQUIRE(c.has_value());
            wz.items.push_back(*c);
        }
        REQUIRE(witness_holds(*z, wz, probe));
        std::vector<std::vector<point>> pieces{pts({0}), pts({0, 1}), pts({0, 1, 2})};
        auto w = sigma_bounded_product_omega(prod, wz, {1, 1, 1}, pieces);
        CHECK(w.cls == witness_class::omega);
        CHECK(witness_holds(prod, w, prod.default_probe()));
    }
    SUBCASE("winning case cross-checked by the oracle") {
        auto x = std::make_shared<space>(make_finite_space(3, {{{0, 1}, {2}}, {{0, 1, 2}}}));
        auto y = std::make_shared<space>(make_finite_space(2, {{{0}, {1}}, {{0, 1}}}));
        auto prod = product_space(x, y);
        int L = 3;
        // the shared X strategy must win from every tail; greed does here,
        // which the oracle confirms piece by piece
        for (int tail = L - 1; tail <= L; ++tail)
            REQUIRE(solve(*x, game_config::cover_game(tail, budget(1), x->universe())).winner == player::two);
        auto theta = std::make_shared<greedy_cover_strategy>(x->universe(), budget(1));
        std::vector<std::vector<point>> pieces{pts({0}), pts({0, 1})};
        auto s = sigma_bounded_product_strategy(theta, pieces);
        auto cfg = game_config::cover_game(L, budget{}, prod.universe());
        auto wc = evaluate_strategy(prod, cfg, *s);
        CHECK(wc.winner == player::two);
    }
    SUBCASE("a piece unbounded in a Y-cover is missing perfectness data") {
        auto x = std::make_shared<space>(make_finite_space(1, {{{0}}}));
        auto y = std::make_shared<space>(make_finite_space(2, {{{0}, {1}}}));
        auto prod = product_space(x, y);
        witness_sequence wx;
        wx.cls = witness_class::cover;
        wx.items = {cert_of(0, {0})};
        // budget-free bounded_by always succeeds on finite spaces, so force
        // the failure through a restricted cover
        space ybad = *y;
        ybad.covers[0].restriction = pts({0});
        auto prod_bad = product_space(std::make_shared<space>(*x), std::make_shared<space>(ybad));
        CHECK_THROWS_AS(
            (void)sigma_bounded_product_witness(prod_bad, wx, {0}, {{point(std::int64_t{0}), point(std::int64_t{1})}}),
            error);
    }
}

TEST_CASE("total-boundedness decomposition") {
    SUBCASE("constant witness puts the probe into the first piece") {
        auto sp = make_finite_space(3, {{{0, 1, 2}, {0}}});
        witness_sequence w;
        w.cls = witness_class::gamma;
        w.items = {cert_of(0, {0}), cert_of(0, {0}), cert_of(0, {0})};
        auto dec = totally_bounded_decomposition(sp, w, sp.universe());
        REQUIRE_FALSE(dec.pieces.empty());
        CHECK(dec.pieces[0].size() == 3);
    }
    SUBCASE("shrinking neighborhoods on the six-element cyclic group") {
        neighborhood_schedule sched{{2, 1, 0}};
        auto g = materialize(make_cyclic_group_space(6, sched, side::right));
        // gamma game from round 0 with growing budgets: solve and replay
        game_config cfg;
        cfg.horizon = 3;
        cfg.budgets.assign(3, budget{});
        cfg.win = win_gamma{0, 0, g.universe()};
        auto res = solve(g, cfg);
        REQUIRE(res.winner == player::two);
        auto t = play_game(g, cfg, std::vector<int>{0, 1, 2}, *res.policy);
        REQUIRE(t.winner == player::two);
        witness_sequence w;
        w.cls = witness_class::gamma;
        for (const auto& r : t.rounds) w.items.push_back(r.cert);
        auto dec = totally_bounded_decomposition(g, w, g.universe());
        // pieces cover the probe and sit inside every tail certificate union
        std::size_t covered = 0;
        for (std::size_t n = 0; n < dec.pieces.size(); ++n) {
            covered += dec.pieces[n].size();
            for (std::size_t kk = n; kk < w.items.size(); ++kk)
                for (const auto& p : dec.pieces[n]) CHECK(certificate_contains(g, w.items[kk], p));
        }
        CHECK(covered >= g.universe().size());
    }
    SUBCASE("lattice ball witness over the probe box") {
        neighborhood_schedule sched{{4, 2, 1}};
        auto z = make_lattice_group_space(1, sched, 10);
        auto probe = z.default_probe();
        witness_sequence w;
        w.cls = witness_class::gamma;
        for (int r = 0; r < 3; ++r) {
            auto c = bounded_by(z, r, probe, std::nullopt);
            REQUIRE(c.has_value());
            w.items.push_back(*c);
        }
        auto dec = totally_bounded_decomposition(z, w, probe);
        std::vector<point> all;
        for (const auto& piece : dec.pieces) all.insert(all.end(), piece.begin(), piece.end());
        std::sort(all.begin(), all.end());
        for (const auto& p : probe) CHECK(std::binary_search(all.begin(), all.end(), p));
    }
    SUBCASE("positive miss budgets are rejected") {
        auto sp = make_finite_space(2, {{{0, 1}}});
        witness_sequence w;
        w.cls = witness_class::gamma;
        w.f = 1;
        w.items = {cert_of(0, {0})};
        CHECK_THROWS_AS((void)totally_bounded_decomposition(sp, w, sp.universe()), error);
    }
}


TEST_CASE("combinators are deterministic and pure") {
    auto sp = make_finite_space(4, {{{0}, {1}, {2}, {3}}, {{0, 1}, {2, 3}}});
    auto res = solve(sp, game_config::cover_game(3, budget(1), sp.universe()));
    auto up = gamma_upgrade(res.policy);
    auto a2 = solve(sp, game_config::cover_game(2, budget(1), pts({2, 3})));
    auto u = union_strategy({res.policy, a2.policy});
    cover_seq h{cover_handle::of_index(1), cover_handle::of_index(0), cover_handle::of_index(1)};
    CHECK(up->respond(sp, h) == up->respond(sp, h));
    CHECK(u->respond(sp, h) == u->respond(sp, h));

    auto left = std::make_shared<space>(make_finite_space(2, {{{0}, {1}}}));
    auto prod = product_space(left, left);
    auto lres = solve(*left, game_config::cover_game(2, budget(1), left->universe()));
    auto ps = product_strategy(gamma_upgrade(lres.policy), gamma_upgrade(lres.policy));
    cover_seq ph{cover_handle::of_index(0), cover_handle::of_index(0)};
    CHECK(ps->respond(prod, ph) == ps->respond(prod, ph));
}
