#include <doctest.h>

#include <core/corpus.hpp>
#include <core/io.hpp>
#include <core/spaces.hpp>

using namespace cbg;

TEST_CASE("corpus counts are frozen") {
    // values fixed after the first verified enumeration; any change to the
    // enumeration scheme must be deliberate
    corpus_params p;
    p.max_points = 5;
    p.max_covers = 2;
    p.max_members = 5;
    auto insts = generate_corpus(p);
    std::map<int, int> by_n;
    for (const auto& i : insts) ++by_n[i.n_points];
    CHECK(by_n[1] == 2);
    CHECK(by_n[2] == 21);
    CHECK(by_n[3] == 2003);
    CHECK(by_n[4] == 38);
    CHECK(by_n[5] == 98);
    CHECK(insts.size() == 2162);
}

TEST_CASE("two-point single-cover corpus") {
    corpus_params p;
    p.max_points = 2;
    p.max_covers = 1;
    p.max_members = 2;
    auto insts = generate_corpus(p);
    // one instance on one point; on two points the three canonical covers
    CHECK(insts.size() == 4);
}

TEST_CASE("one-point corpus is the single trivial instance") {
    corpus_params p;
    p.max_points = 1;
    p.max_covers = 1;
    p.max_members = 1;
    CHECK(generate_corpus(p).size() == 1);
}

TEST_CASE("lazy comparisons are tagged as probe-scoped") {
    json spec{{"command", "compare-covers"},
              {"space", space_to_json(make_lattice_group_space(1, neighborhood_schedule{{2, 1}}, 5))},
              {"params", {{"cover", 1}, {"cover2", 0}, {"bound", 32}}}};
    auto res = run_spec(spec);
    CHECK(res.st == status::player_ii);
    CHECK(res.report.at("verdict") == "Verified-on-probe");
}

TEST_CASE("corpus instances are canonical and validate") {
    corpus_params p;
    p.max_points = 3;
    p.max_covers = 2;
    p.max_members = 3;
    auto insts = generate_corpus(p);
    for (const auto& i : insts) CHECK_NOTHROW((void)corpus_space(i));
}

TEST_CASE("fingerprints are stable across enumerations") {
    corpus_params p;
    p.max_points = 3;
    p.max_covers = 1;
    p.max_members = 3;
    auto a = generate_corpus(p);
    auto b = generate_corpus(p);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(fingerprint(space_to_json(corpus_space(a[i]))) == fingerprint(space_to_json(corpus_space(b[i]))));
}

TEST_CASE("corpus caps are enforced") {
    corpus_params p;
    p.max_points = 7;
    CHECK_THROWS_AS((void)generate_corpus(p), error);
}

TEST_CASE("space serialization round-trips") {
    auto roundtrip = [](const space& sp) {
        auto j = space_to_json(sp);
        auto back = space_from_json(j);
        CHECK(space_to_json(back).dump() == j.dump());
    };
    roundtrip(make_finite_space(4, {{{0, 1}, {2, 3}}, {{0}, {1}, {2}, {3}}}));
    roundtrip(make_metric_space({{rat(0), rat(1, 2)}, {rat(1, 2), rat(0)}}, {rat(1), rat(1, 4)}));
    roundtrip(make_lattice_group_space(2, neighborhood_schedule{{4, 2}}, 3));
    roundtrip(make_free_group_space(2, neighborhood_schedule{{2, 1}}, side::right, 2));
    roundtrip(make_cyclic_group_space(4, neighborhood_schedule{{1, 0}}, side::meet));
    auto a = std::make_shared<space>(make_finite_space(2, {{{0}, {1}}}));
    roundtrip(product_space(a, a));
}

TEST_CASE("config parsing") {
    auto sp = make_finite_space(3, {{{0, 1, 2}}});
    SUBCASE("scalar budgets broadcast") {
        auto cfg = config_from_json(json::parse(R"({"horizon":3,"budgets":2,"win":{"type":"cover"}})"), sp);
        CHECK(cfg.budgets.size() == 3);
        CHECK(*cfg.budgets[2] == 2);
    }
    SUBCASE("unbounded budgets") {
        auto cfg = config_from_json(json::parse(R"({"horizon":2,"budgets":"unbounded"})"), sp);
        CHECK_FALSE(cfg.budgets[0].has_value());
    }
    SUBCASE("probe defaults to the universe") {
        auto cfg = config_from_json(json::parse(R"({"horizon":1,"budgets":1,"win":{"type":"omega","k":2}})"), sp);
        CHECK(win_probe(cfg.win).size() == 3);
    }
    SUBCASE("schema violations throw") {
        CHECK_THROWS_AS((void)config_from_json(json::parse(R"({"horizon":0})"), sp), error);
        CHECK_THROWS_AS((void)config_from_json(json::parse(R"({"horizon":2,"win":{"type":"gamma","m":5}})"), sp),
                        error);
    }
}

TEST_CASE("run specs execute with contract exit codes") {
    json six = space_to_json(make_finite_space(6, {{{0}, {1}, {2}, {3}, {4}, {5}}}));
    SUBCASE("solve on the six-singleton instance at horizon five: first player") {
        json spec{{"command", "solve"}, {"space", six},
                  {"config", json{{"horizon", 5}, {"budgets", 1}, {"win", {{"type", "cover"}}}}}};
        auto res = run_spec(spec);
        CHECK(res.st == status::player_i);
        CHECK(res.report.at("verdict") == "I-wins");
        CHECK(res.report.at("exit") == 1);
    }
    SUBCASE("totally-bounded on a one-cover instance: yes") {
        json spec{{"command", "check-principle"}, {"space", space_to_json(make_finite_space(2, {{{0, 1}}}))},
                  {"params", {{"principle", "totally-bounded"}, {"budget", 1}}}};
        auto res = run_spec(spec);
        CHECK(res.st == status::player_ii);
        CHECK(res.report.at("verdict") == "Yes");
    }
    SUBCASE("schema violations exit above two") {
        auto res = run_spec(json{{"command", "solve"}});
        CHECK(res.st == status::bad_input);
        CHECK(res.report.at("exit") == 3);
    }
    SUBCASE("unknown command") {
        auto res = run_spec(json{{"command", "dance"}});
        CHECK(res.st == status::bad_input);
    }
}

TEST_CASE("reports are byte-identical modulo timings") {
    json six = space_to_json(make_finite_space(4, {{{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}}));
    json spec{{"command", "solve"}, {"space", six},
              {"config", json{{"horizon", 2}, {"budgets", 1}, {"win", {{"type", "cover"}}}}},
              {"params", {{"dump-policy", true}}}};
    auto a = run_spec(spec);
    auto b = run_spec(spec);
    a.report.erase("timings-ms");
    b.report.erase("timings-ms");
    CHECK(a.report.dump() == b.report.dump());
    CHECK(a.report.contains("fingerprint"));
}

TEST_CASE("refuted plays replay to the same verdict") {
    json six = space_to_json(make_finite_space(2, {{{0}, {1}}}));
    json cfg{{"horizon", 1}, {"budgets", 1}, {"win", {{"type", "cover"}}}};
    json spec{{"command", "play"}, {"space", six}, {"config", cfg},
              {"params", {{"i-seq", {0}}, {"strategy", "oracle"}}}};
    auto first = run_spec(spec);
    CHECK(first.st == status::player_i);
    auto again = run_spec(spec);
    CHECK(again.st == status::player_i);
    CHECK(first.report.at("transcripts").dump() == again.report.at("transcripts").dump());
}

TEST_CASE("make-space normalizes descriptors") {
    json spec{{"command", "make-space"},
              {"descriptor",
               {{"kind", "cyclic-group"}, {"order", 6}, {"radii", {1, 0}}, {"side", "R"}}},
              {"params", {{"materialize", true}}}};
    auto res = run_spec(spec);
    REQUIRE(res.st == status::player_ii);
    auto sp = space_from_json(res.report.at("space"));
    CHECK(sp.finite());
    CHECK(sp.covers.size() == 2);
    for (const auto& c : sp.covers) CHECK(c.is_explicit());
}

TEST_CASE("corpus command emits a deterministic manifest") {
    json spec{{"command", "corpus"},
              {"params", {{"max-x", 2}, {"max-covers", 1}, {"max-members", 2}, {"emit-spaces", true}}}};
    auto a = run_spec(spec);
    auto b = run_spec(spec);
    CHECK(a.report.at("count") == 4);
    CHECK(a.report.at("manifest").dump() == b.report.at("manifest").dump());
}

TEST_CASE("verify-combinator commands") {
    json four = space_to_json(make_finite_space(4, {{{0}, {1}, {2}, {3}}}));
    SUBCASE("union on a two-piece instance verifies") {
        json spec{{"command", "verify-combinator"}, {"name", "union"},
                  {"instance", {{"space", four}, {"horizon", 4}, {"budget", 1}}}};
        auto res = run_spec(spec);
        CHECK(res.st == status::player_ii);
        CHECK(res.report.at("verdict") == "Verified");
    }
    SUBCASE("gamma-upgrade containment verifies") {
        json spec{{"command", "verify-combinator"}, {"name", "gamma-upgrade"},
                  {"instance", {{"space", four}, {"horizon", 4}, {"budget", 1}}}};
        auto res = run_spec(spec);
        CHECK(res.st == status::player_ii);
    }
    SUBCASE("preconditions failures surface as input errors") {
        json spec{{"command", "verify-combinator"}, {"name", "gamma-upgrade"},
                  {"instance", {{"space", four}, {"horizon", 2}, {"budget", 1}}}};
        auto res = run_spec(spec); // four singletons cannot be covered in two rounds
        CHECK(res.st == status::bad_input);
    }
    SUBCASE("abelian lift route") {
        json spec{{"command", "verify-combinator"}, {"name", "lift-abelian"},
                  {"instance", {{"dim", 1}, {"levels", 7}, {"probe-box", 20}, {"route", "gamma"}}}};
        auto res = run_spec(spec);
        CHECK(res.st == status::player_ii);
    }
    SUBCASE("product route") {
        json two = space_to_json(make_finite_space(2, {{{0}, {1}}}));
        json spec{{"command", "verify-combinator"}, {"name", "product"},
                  {"instance", {{"left", {{"space", two}}}, {"right", {{"space", two}}},
                                {"horizon", 2}, {"budget", 1}}}};
        auto res = run_spec(spec);
        CHECK(res.st == status::player_ii);
        CHECK(res.report.at("verdict") == "Verified");
    }
    SUBCASE("group lift route on the rank-one free group") {
        json spec{{"command", "verify-combinator"}, {"name", "lift-group"},
                  {"instance", {{"group", "Z"}, {"horizon", 4}, {"probe-len", 3}}}};
        auto res = run_spec(spec);
        CHECK(res.st == status::player_ii);
    }
    SUBCASE("decomposition route") {
        json desc{{"command", "make-space"},
                  {"descriptor", {{"kind", "cyclic-group"}, {"order", 4}, {"radii", {1, 0}}}},
                  {"params", {{"materialize", true}}}};
        auto made = run_spec(desc);
        REQUIRE(made.st == status::player_ii);
        json spec{{"command", "verify-combinator"}, {"name", "decomposition"},
                  {"instance",
                   {{"space", made.report.at("space")},
                    {"config",
                     {{"horizon", 2}, {"budgets", "unbounded"}, {"win", {{"type", "gamma"}, {"m", 0}, {"f", 0}}}}},
                    {"i-seq", {0, 1}}}}};
        auto res = run_spec(spec);
        CHECK(res.st == status::player_ii);
        CHECK(res.report.at("verdict") == "Verified");
    }
}
