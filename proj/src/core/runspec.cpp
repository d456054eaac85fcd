#include <chrono>
#include <fstream>

#include "err.hpp"
#include "io.hpp"
#include "lifts.hpp"
#include "solver.hpp"
#include "spaces.hpp"

namespace cbg {

namespace {

using clock_t_ = std::chrono::steady_clock;

status tri_status(const tri_bool& t) {
    switch (t.v) {
    case verdict::yes: return status::player_ii;
    case verdict::no: return status::player_i;
    default: return status::unknown;
    }
}

strategy_ptr strategy_from_spec(const json& spec, const space& sp, const game_config& cfg) {
    json s = spec.value("strategy", json("oracle"));
    if (s.is_string()) {
        std::string name = s.get<std::string>();
        if (name == "oracle") return solve(materialize(sp), cfg).policy;
        if (name == "constant-full") return std::make_shared<constant_full_strategy>();
        if (name == "constant-empty") return std::make_shared<constant_cert_strategy>(certificate{});
        fail_input("unknown strategy: " + name);
    }
    if (s.is_object() && s.contains("table")) {
        auto t = std::make_shared<table_strategy>();
        for (const auto& [key, cert] : s.at("table").items()) {
            std::vector<int> hist;
            for (const auto& tok : json::parse(key)) hist.push_back(tok.get<int>());
            t->table[hist] = certificate_from_json(cert);
        }
        return t;
    }
    fail_input("bad strategy spec: " + s.dump());
}

run_result cmd_solve(const json& spec) {
    space raw = load_space_field(spec);
    space sp = materialize(raw);
    game_config cfg = config_from_json(spec.at("config"), sp);
    auto res = solve(sp, cfg);
    run_result out;
    out.st = res.winner == player::two ? status::player_ii : status::player_i;
    out.report["verdict"] = res.winner == player::two ? "II-wins" : "I-wins";
    out.report["states-explored"] = res.states_explored;
    if (spec.value("params", json::object()).value("dump-policy", false)) {
        json table = json::object();
        int nc = static_cast<int>(sp.covers.size());
        std::function<void(std::vector<int>&)> rec = [&](std::vector<int>& hist) {
            if (!hist.empty()) {
                cover_seq cs;
                for (int i : hist) cs.push_back(cover_handle::of_index(i));
                table[json(hist).dump()] = certificate_to_json(res.policy->respond(sp, cs));
            }
            if (static_cast<int>(hist.size()) == cfg.horizon) return;
            for (int c = 0; c < nc; ++c) {
                hist.push_back(c);
                rec(hist);
                hist.pop_back();
            }
        };
        std::vector<int> hist;
        rec(hist);
        out.report["policy"] = table;
    }
    return out;
}

run_result cmd_play(const json& spec) {
    space sp = materialize(load_space_field(spec));
    game_config cfg = config_from_json(spec.at("config"), sp);
    json params = spec.value("params", json::object());
    auto strat = strategy_from_spec(params, sp, cfg);
    player_one one = std::vector<int>{};
    if (params.contains("i-seq")) {
        one = params.at("i-seq").get<std::vector<int>>();
    } else if (params.value("i", "") == "adversarial") {
        one = solve(sp, cfg).i_policy;
    } else {
        fail_input("play needs params.i-seq or params.i = \"adversarial\"");
    }
    auto t = play_game(sp, cfg, one, *strat);
    run_result out;
    out.st = t.winner == player::two ? status::player_ii : status::player_i;
    out.report["verdict"] = t.winner == player::two ? "II-wins" : "I-wins";
    out.report["transcripts"] = json::array({transcript_to_json(t)});
    if (params.contains("transcripts-out")) {
        std::ofstream f(params.at("transcripts-out").get<std::string>(), std::ios::app);
        require(f.good(), "cannot open the transcript output file");
        f << transcript_to_json(t).dump() << "\n";
    }
    return out;
}

run_result cmd_check_principle(const json& spec) {
    space sp = materialize(load_space_field(spec));
    json params = spec.value("params", json::object());
    std::string name = params.value("principle", "totally-bounded");
    run_result out;
    tri_bool t;
    if (name == "totally-bounded") {
        budget b = params.contains("budget") ? budget(params.at("budget").get<std::int64_t>()) : budget{};
        t = is_totally_bounded(sp, b);
    } else if (name == "centered") {
        t = is_centered(sp, params.value("bound", default_search_bound()));
    } else if (name == "omega-bounded") {
        t = is_omega_bounded(sp);
    } else if (name == "menger" || name == "scheepers" || name == "hurewicz") {
        game_config cfg = config_from_json(spec.at("config"), sp);
        principle pr = name == "menger" ? principle::menger
                       : name == "scheepers" ? principle::scheepers
                                             : principle::hurewicz;
        t = check_principle(sp, pr, cfg);
    } else if (name == "winning") {
        game_config cfg = config_from_json(spec.at("config"), sp);
        auto res = solve(sp, cfg);
        t = res.winner == player::two ? tri_bool::yes() : tri_bool::no("first player wins");
    } else if (name == "o-bounded") {
        game_config cfg = config_from_json(spec.at("config"), sp);
        t = o_bounded(sp, cfg);
    } else {
        fail_input("unknown principle: " + name);
    }
    out.st = tri_status(t);
    out.report = json{{"verdict", tri_to_json(t)["verdict"]}, {"detail", tri_to_json(t)}, {"principle", name}};
    return out;
}

run_result cmd_compare_covers(const json& spec) {
    space a = load_space_field(spec);
    json params = spec.value("params", json::object());
    int bound = params.value("bound", default_search_bound());
    run_result out;
    tri_bool t;
    if (spec.contains("space2")) {
        space b = load_space_field(spec, "space2");
        std::string mode = params.value("mode", "equivalent");
        if (mode == "equivalent")
            t = equivalent_multicovers(a, b, bound);
        else if (mode == "coarser")
            t = multicover_coarser(a, b, bound);
        else
            fail_input("unknown compare mode: " + mode);
    } else {
        int u = params.at("cover").get<int>();
        int v = params.at("cover2").get<int>();
        t = coarser_than(a, u, v, bound);
    }
    out.st = tri_status(t);
    out.report = json{{"verdict", tri_to_json(t)["verdict"]}, {"detail", tri_to_json(t)}};
    return out;
}

run_result cmd_make_space(const json& spec) {
    json params = spec.value("params", json::object());
    require(spec.contains("descriptor") || params.contains("descriptor"), "make-space needs a descriptor");
    json d = spec.contains("descriptor") ? spec.at("descriptor") : params.at("descriptor");
    std::string kind = d.at("kind").get<std::string>();
    space sp;
    if (kind == "metric") {
        std::vector<std::vector<rat>> dist;
        for (const auto& row : d.at("distances")) {
            std::vector<rat> r;
            for (const auto& x : row) r.push_back(x.is_string() ? rat::parse(x.get<std::string>()) : rat(x.get<std::int64_t>()));
            dist.push_back(std::move(r));
        }
        std::vector<rat> radii;
        for (const auto& x : d.at("radii"))
            radii.push_back(x.is_string() ? rat::parse(x.get<std::string>()) : rat(x.get<std::int64_t>()));
        sp = make_metric_space(std::move(dist), radii, d.value("name", "metric"));
    } else if (kind == "lattice-metric") {
        std::vector<rat> radii;
        for (const auto& x : d.at("radii"))
            radii.push_back(x.is_string() ? rat::parse(x.get<std::string>()) : rat(x.get<std::int64_t>()));
        sp = make_lattice_metric_space(d.value("dim", 1), radii, d.value("probe-box", std::int64_t{20}));
    } else if (kind == "cyclic-group") {
        neighborhood_schedule sched{d.at("radii").get<std::vector<std::int64_t>>()};
        sp = make_cyclic_group_space(d.at("order").get<int>(), sched,
                                     side_parse(d.value("side", std::string("R"))));
    } else if (kind == "table-group") {
        neighborhood_schedule sched{d.at("radii").get<std::vector<std::int64_t>>()};
        sp = make_table_group_space(d.at("mul").get<std::vector<std::vector<int>>>(),
                                    d.at("generators").get<std::vector<std::int64_t>>(), sched,
                                    side_parse(d.value("side", std::string("R"))), d.value("name", "group"));
    } else if (kind == "lattice-group") {
        neighborhood_schedule sched{d.at("radii").get<std::vector<std::int64_t>>()};
        sp = make_lattice_group_space(d.value("dim", 1), sched, d.value("probe-box", std::int64_t{20}));
    } else if (kind == "free-group") {
        neighborhood_schedule sched{d.at("radii").get<std::vector<std::int64_t>>()};
        sp = make_free_group_space(d.value("rank", 2), sched, side_parse(d.value("side", std::string("R"))),
                                   d.value("probe-word-len", std::int64_t{5}));
    } else {
        fail_input("unknown descriptor kind: " + kind);
    }
    if (params.value("materialize", false)) sp = materialize(sp);
    run_result out;
    out.st = status::player_ii;
    out.report["verdict"] = "Verified";
    out.report["space"] = space_to_json(sp);
    return out;
}

run_result cmd_corpus(const json& spec) {
    json params = spec.value("params", json::object());
    corpus_params p;
    p.max_points = params.value("max-x", 5);
    p.max_covers = params.value("max-covers", 2);
    p.max_members = params.value("max-members", 5);
    auto insts = generate_corpus(p);
    run_result out;
    out.st = status::player_ii;
    out.report["verdict"] = "Verified";
    out.report["count"] = insts.size();
    json manifest = json::array();
    bool emit_spaces = params.value("emit-spaces", false);
    std::string out_dir = params.value("out-dir", "");
    int idx = 0;
    for (const auto& inst : insts) {
        auto sp = corpus_space(inst);
        json sj = space_to_json(sp);
        std::string fp = fingerprint(sj);
        manifest.push_back(json{{"index", idx}, {"points", inst.n_points}, {"fingerprint", fp}});
        if (!out_dir.empty()) {
            char name[64];
            std::snprintf(name, sizeof name, "/corpus-%05d.json", idx);
            std::ofstream f(out_dir + name);
            require(f.good(), "cannot write corpus file in " + out_dir);
            f << sj.dump(2) << "\n";
        } else if (emit_spaces) {
            manifest.back()["space"] = sj;
        }
        ++idx;
    }
    out.report["manifest"] = manifest;
    return out;
}

// ---------------------------------------------------------------------------
// verify-combinator: precondition -> construction -> postcondition -> oracle
// ---------------------------------------------------------------------------

run_result verify_combinator(const json& spec);

} // namespace

run_result run_spec(const json& spec) {
    auto start = clock_t_::now();
    run_result out;
    try {
        require(spec.is_object() && spec.contains("command"), "run spec needs a \"command\"");
        std::string cmd = spec.at("command").get<std::string>();
        if (cmd == "solve")
            out = cmd_solve(spec);
        else if (cmd == "play")
            out = cmd_play(spec);
        else if (cmd == "check-principle")
            out = cmd_check_principle(spec);
        else if (cmd == "compare-covers")
            out = cmd_compare_covers(spec);
        else if (cmd == "make-space")
            out = cmd_make_space(spec);
        else if (cmd == "corpus")
            out = cmd_corpus(spec);
        else if (cmd == "verify-combinator")
            out = verify_combinator(spec);
        else
            fail_input("unknown command: " + cmd);
        out.report["command"] = cmd;
        if (spec.contains("space")) {
            try {
                out.report["fingerprint"] = fingerprint(space_to_json(load_space_field(spec)));
            } catch (const error&) {
            }
        }
    } catch (const error& e) {
        out.st = e.code();
        out.report = json{{"verdict", "Error"}, {"error", e.what()}, {"exit", static_cast<int>(e.code())}};
    } catch (const json::exception& e) {
        out.st = status::bad_input;
        out.report = json{{"verdict", "Error"}, {"error", e.what()}, {"exit", 3}};
    } catch (const std::exception& e) {
        out.st = status::internal;
        out.report = json{{"verdict", "Error"}, {"error", e.what()}, {"exit", 5}};
    }
    out.report["exit"] = static_cast<int>(out.st);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(clock_t_::now() - start).count();
    out.report["timings-ms"] = ms;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

json verified_report(bool pass, json detail) {
    json r;
    r["verdict"] = pass ? "Verified" : "Refuted";
    r["detail"] = std::move(detail);
    return r;
}

run_result vc_union(const json& inst, bool with_oracle) {
    space sp = materialize(space_from_json(inst.at("space")));
    int L = inst.value("horizon", 3);
    std::int64_t b = inst.value("budget", 1);
    auto uni = sp.universe();
    std::vector<std::vector<point>> pieces;
    if (inst.contains("pieces")) {
        for (const auto& pj : inst.at("pieces")) {
            std::vector<point> pc;
            for (const auto& p : pj) pc.push_back(point_from_json(p));
            pieces.push_back(std::move(pc));
        }
    } else {
        std::size_t half = (uni.size() + 1) / 2;
        pieces.push_back({uni.begin(), uni.begin() + static_cast<std::ptrdiff_t>(half)});
        pieces.push_back({uni.begin() + static_cast<std::ptrdiff_t>(half), uni.end()});
        if (pieces.back().empty()) pieces.pop_back();
    }
    // precondition: piece k is II-winning from round k on (tail horizons)
    std::vector<strategy_ptr> strats;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        int horizon = L - static_cast<int>(k);
        require(horizon >= 1, "piece " + std::to_string(k) + " has no rounds left");
        auto res = solve(sp, game_config::cover_game(horizon, budget(b), pieces[k]));
        require(res.winner == player::two,
                "precondition failed: piece " + std::to_string(k) + " is not second-player winning");
        strats.push_back(res.policy);
    }
    auto u = union_strategy(strats);
    game_config cfg = game_config::cover_game(L, budget(b), uni);
    auto wc = evaluate_strategy(sp, cfg, *u, true);
    json detail{{"pieces", pieces.size()}, {"plays", wc.plays}};
    if (wc.refutation) detail["refutation"] = *wc.refutation;
    run_result out;
    out.st = wc.winner == player::two ? status::player_ii : status::player_i;
    out.report = verified_report(wc.winner == player::two, detail);
    out.report["oracle-checked"] = with_oracle;
    return out;
}

run_result vc_gamma_upgrade(const json& inst, bool) {
    space sp = materialize(space_from_json(inst.at("space")));
    int L = inst.value("horizon", 3);
    std::int64_t b = inst.value("budget", 1);
    auto probe = sp.universe();
    auto res = solve(sp, game_config::cover_game(L, budget(b), probe));
    require(res.winner == player::two, "precondition failed: instance is not second-player winning");
    auto up = gamma_upgrade(res.policy);
    // postcondition: subsequence containment, exhaustively over plays and
    // index subsequences
    std::int64_t checked = 0;
    for (const auto& seq : all_index_sequences(static_cast<int>(sp.covers.size()), L)) {
        for (std::uint64_t mask = 1; mask < (1ull << L); ++mask) {
            std::vector<int> idxs;
            for (int i = 0; i < L; ++i)
                if (mask & (1ull << i)) idxs.push_back(i);
            for (std::size_t j = 0; j < idxs.size(); ++j) {
                cover_seq sub, pre;
                for (std::size_t q = 0; q <= j; ++q)
                    sub.push_back(cover_handle::of_index(seq[static_cast<std::size_t>(idxs[q])]));
                for (int q = 0; q <= idxs[j]; ++q)
                    pre.push_back(cover_handle::of_index(seq[static_cast<std::size_t>(q)]));
                auto base_cert = res.policy->respond(sp, sub);
                auto up_cert = up->respond(sp, pre);
                for (const auto& p : probe)
                    if (certificate_contains(sp, base_cert, p) && !certificate_contains(sp, up_cert, p)) {
                        run_result out;
                        out.st = status::player_i;
                        out.report = verified_report(false, json{{"sequence", seq},
                                                                 {"subsequence", idxs},
                                                                 {"point", point_to_json(p)}});
                        return out;
                    }
                ++checked;
            }
        }
    }
    run_result out;
    out.st = status::player_ii;
    out.report = verified_report(true, json{{"containments-checked", checked}});
    return out;
}

run_result vc_product(const json& inst, bool) {
    auto left = std::make_shared<space>(materialize(space_from_json(inst.at("left").at("space"))));
    auto right = std::make_shared<space>(materialize(space_from_json(inst.at("right").at("space"))));
    int L = inst.value("horizon", 3);
    std::int64_t b = inst.value("budget", 1);
    auto lres = solve(*left, game_config::cover_game(L, budget(b), left->universe()));
    auto rres = solve(*right, game_config::cover_game(L, budget(b), right->universe()));
    require(lres.winner == player::two && rres.winner == player::two,
            "precondition failed: both factors must be second-player winning");
    auto lup = gamma_upgrade(lres.policy);
    auto rup = gamma_upgrade(rres.policy);
    // γ-output property at this horizon: full coverage at the last round
    auto has_gamma_output = [&](const space& s, const strategy& st) {
        for (const auto& seq : all_index_sequences(static_cast<int>(s.covers.size()), L)) {
            cover_seq h;
            for (int i : seq) h.push_back(cover_handle::of_index(i));
            auto cert = st.respond(s, h);
            for (const auto& p : s.universe())
                if (!certificate_contains(s, cert, p)) return false;
        }
        return true;
    };
    require(has_gamma_output(*left, *lup) && has_gamma_output(*right, *rup),
            "precondition failed: γ-output property does not hold at this horizon");
    auto prod = product_space(left, right);
    auto ps = product_strategy(lup, rup);
    game_config cfg = game_config::cover_game(L, budget{}, prod.universe());
    auto wc = evaluate_strategy(prod, cfg, *ps, true);
    run_result out;
    out.st = wc.winner == player::two ? status::player_ii : status::player_i;
    json detail{{"plays", wc.plays}};
    if (wc.refutation) detail["refutation"] = *wc.refutation;
    out.report = verified_report(wc.winner == player::two, detail);
    return out;
}

run_result vc_lift_abelian(const json& inst, bool) {
    int dim = inst.value("dim", 1);
    int levels = inst.value("levels", 7);
    std::int64_t M = inst.value("probe-box", 20);
    bool gamma_route = inst.value("route", std::string("omega")) == "gamma";
    neighborhood_schedule sched;
    for (int n = 0; n < levels; ++n) sched.radii.push_back(std::int64_t{1} << (levels - n));
    space G = make_lattice_group_space(dim, sched, M);
    auto chain = box_chain(dim, levels);
    witness_sequence w;
    w.cls = gamma_route ? witness_class::gamma : witness_class::proper_omega;
    w.k = 3;
    w.t = 2;
    w.f = 0;
    w.m = 0;
    for (int n = 0; n < levels; ++n) {
        certificate c;
        c.cover_index = n;
        for (const auto& z : chain.sets[static_cast<std::size_t>(n)]) c.members.push_back(member_ref::by_center(z));
        w.items.push_back(std::move(c));
    }
    auto probe = G.default_probe();
    auto lifted = gamma_route ? lift_hurewicz_to_abelian_group(G, w, probe, probe)
                              : lift_scheepers_to_abelian_group(G, w, probe, probe);
    bool pass = witness_holds(G, lifted.witness, probe);
    run_result out;
    out.st = pass ? status::player_ii : status::player_i;
    out.report = verified_report(pass, json{{"rounds", lifted.witness.items.size()},
                                            {"tail-start", lifted.tail_start}});
    return out;
}

run_result vc_lift_group(const json& inst, bool) {
    std::string which = inst.value("group", std::string("F2"));
    int L = inst.value("horizon", 8);
    std::int64_t probe_len = inst.value("probe-len", 5);
    winning_lift_config cfg;
    cfg.horizon = L;
    cfg.max_center_word_len = 1;
    std::int64_t need = (std::int64_t{1} << L) * (1 + 2 * cfg.max_center_word_len);
    neighborhood_schedule sched;
    if (inst.contains("radii"))
        sched.radii = inst.at("radii").get<std::vector<std::int64_t>>();
    else
        sched.radii = {4 * need, 2 * need};
    std::shared_ptr<space> G;
    if (which == "F2")
        G = std::make_shared<space>(make_free_group_space(2, sched, side::right, probe_len));
    else if (which == "Z")
        G = std::make_shared<space>(make_free_group_space(1, sched, side::right, probe_len));
    else if (which == "trivial")
        G = std::make_shared<space>(make_trivial_group_space(neighborhood_schedule{{1, 0}}));
    else
        fail_input("unknown group: " + which);
    auto theta = gamma_upgrade(std::make_shared<constant_full_strategy>());
    auto lifted = lift_winning_to_group(G, theta, cfg);
    game_config gc;
    gc.horizon = L;
    gc.budgets.assign(static_cast<std::size_t>(L), budget{});
    gc.win = win_cover{G->default_probe()};
    auto seqs = all_index_sequences(static_cast<int>(G->covers.size()), L);
    auto t = verify_on_probe(*G, gc, seqs, *lifted);
    run_result out;
    out.st = tri_status(t);
    out.report = verified_report(t.is_yes(), tri_to_json(t));
    out.report["sequences"] = seqs.size();
    return out;
}

run_result vc_decomposition(const json& inst, bool) {
    space sp = materialize(space_from_json(inst.at("space")));
    game_config cfg = config_from_json(inst.at("config"), sp);
    require(std::holds_alternative<win_gamma>(cfg.win), "decomposition needs a gamma game");
    auto res = solve(sp, cfg);
    require(res.winner == player::two, "precondition failed: not second-player winning");
    std::vector<int> seq = inst.value("i-seq", std::vector<int>(static_cast<std::size_t>(cfg.horizon), 0));
    auto t = play_game(sp, cfg, seq, *res.policy);
    require(t.winner == player::two, "oracle play lost unexpectedly");
    witness_sequence w;
    w.cls = witness_class::gamma;
    w.m = std::get<win_gamma>(cfg.win).m;
    w.f = 0;
    for (const auto& r : t.rounds) w.items.push_back(r.cert);
    auto probe = win_probe(cfg.win);
    auto dec = totally_bounded_decomposition(sp, w, probe);
    // every piece sits inside every tail certificate union
    bool pass = true;
    for (std::size_t n = 0; n < dec.pieces.size() && pass; ++n)
        for (std::size_t kk = n; kk < w.items.size() && pass; ++kk)
            for (const auto& p : dec.pieces[n])
                if (!certificate_contains(sp, w.items[kk], p)) pass = false;
    run_result out;
    out.st = pass ? status::player_ii : status::player_i;
    json sizes = json::array();
    for (const auto& pc : dec.pieces) sizes.push_back(pc.size());
    out.report = verified_report(pass, json{{"piece-sizes", sizes}});
    return out;
}

run_result verify_combinator(const json& spec) {
    json params = spec.value("params", json::object());
    std::string name = spec.contains("name") ? spec.at("name").get<std::string>() : params.at("name").get<std::string>();
    json inst = spec.contains("instance") ? spec.at("instance") : params.at("instance");
    if (inst.is_string()) {
        std::ifstream in(inst.get<std::string>());
        require(in.good(), "cannot open instance file " + inst.get<std::string>());
        in >> inst;
    }
    bool with_oracle = params.value("oracle", true);
    if (name == "union") return vc_union(inst, with_oracle);
    if (name == "gamma-upgrade") return vc_gamma_upgrade(inst, with_oracle);
    if (name == "product") return vc_product(inst, with_oracle);
    if (name == "lift-abelian") return vc_lift_abelian(inst, with_oracle);
    if (name == "lift-group") return vc_lift_group(inst, with_oracle);
    if (name == "decomposition") return vc_decomposition(inst, with_oracle);
    fail_input("unknown combinator: " + name);
}

} // namespace

} // namespace cbg
