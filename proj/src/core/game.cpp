#include "game.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

#include "err.hpp"

namespace cbg {

const std::vector<point>& win_probe(const win_condition& w) {
    if (const auto* c = std::get_if<win_cover>(&w)) return c->probe;
    if (const auto* o = std::get_if<win_omega>(&w)) return o->probe;
    return std::get<win_gamma>(w).probe;
}

game_config game_config::cover_game(int horizon, budget per_round, std::vector<point> probe) {
    game_config cfg;
    cfg.horizon = horizon;
    cfg.budgets.assign(static_cast<std::size_t>(horizon), per_round);
    cfg.win = win_cover{std::move(probe)};
    return cfg;
}

void game_config::validate(const space& sp) const {
    require(horizon >= 1, "horizon must be positive");
    require(static_cast<int>(budgets.size()) == horizon, "budgets must list one entry per round");
    for (const auto& b : budgets) require(!b || *b >= 0, "negative budget");
    const auto& probe = win_probe(win);
    require(!probe.empty(), "probe must be nonempty");
    for (const auto& p : probe) require(sp.ground_contains(p), "probe point outside the ground set");
    if (const auto* o = std::get_if<win_omega>(&win)) {
        require(o->k >= 1, "omega condition needs k >= 1");
        require(o->k <= static_cast<int>(probe.size()), "omega condition needs k <= |probe|");
    }
    if (const auto* g = std::get_if<win_gamma>(&win)) {
        require(g->m >= 0 && g->m < horizon, "gamma start round out of range");
        require(g->f >= 0, "gamma miss budget must be nonnegative");
    }
    require(!sp.covers.empty(), "space has no covers");
}

// ---------------------------------------------------------------------------
// Strategies
// ---------------------------------------------------------------------------

certificate table_strategy::respond(const space&, const cover_seq& history) const {
    std::vector<int> key;
    for (const auto& h : history) {
        require(h.indexed(), "table strategy saw an ad-hoc cover");
        key.push_back(h.index);
    }
    auto it = table.find(key);
    require(it != table.end(), "table strategy undefined on this history");
    return it->second;
}

certificate constant_full_strategy::respond(const space& sp, const cover_seq& history) const {
    require(!history.empty(), "empty history");
    const auto& h = history.back();
    if (h.indexed()) return full_certificate(sp, h.index);
    // ad-hoc cover: canonical full certificate computed against the handle
    const cover& u = *h.ad_hoc;
    std::vector<point> ground = u.restriction ? *u.restriction : sp.universe();
    auto c = bounded_by(sp, u, -1, ground, std::nullopt);
    require(c.has_value(), "cover does not bound the ground set");
    return *c;
}

certificate constant_cert_strategy::respond(const space&, const cover_seq& history) const {
    require(!history.empty(), "empty history");
    certificate c = cert_;
    c.cover_index = history.back().index;
    return c;
}

certificate greedy_cover_strategy::best_cert(const space& sp, const cover& u, int cover_index,
                                             std::vector<bool>& covered) const {
    require(u.is_explicit(), "greedy strategy needs explicit covers");
    int n = static_cast<int>(u.explicit_members().members.size());
    std::size_t maxb =
        per_round_ ? static_cast<std::size_t>(std::max<std::int64_t>(0, *per_round_)) : static_cast<std::size_t>(n);
    maxb = std::min(maxb, static_cast<std::size_t>(n));
    std::vector<std::vector<bool>> rows(static_cast<std::size_t>(n), std::vector<bool>(probe_.size(), false));
    for (int i = 0; i < n; ++i)
        for (std::size_t j = 0; j < probe_.size(); ++j)
            rows[static_cast<std::size_t>(i)][j] = member_contains(sp, u, member_ref::by_index(i), probe_[j]);

    std::vector<int> chosen, best;
    std::size_t best_gain = 0;
    bool have_best = false;
    std::function<void(int, std::size_t, std::vector<bool>&)> rec = [&](int start, std::size_t left,
                                                                        std::vector<bool>& cov) {
        std::size_t gain = 0;
        for (std::size_t j = 0; j < probe_.size(); ++j)
            if (cov[j] && !covered[j]) ++gain;
        if (!have_best || gain > best_gain) {
            best = chosen;
            best_gain = gain;
            have_best = true;
        }
        if (left == 0) return;
        for (int i = start; i < n; ++i) {
            auto saved = cov;
            for (std::size_t j = 0; j < probe_.size(); ++j)
                if (rows[static_cast<std::size_t>(i)][j]) cov[j] = true;
            chosen.push_back(i);
            rec(i + 1, left - 1, cov);
            chosen.pop_back();
            cov = saved;
        }
    };
    std::vector<bool> cov(probe_.size(), false);
    rec(0, maxb, cov);
    certificate c;
    c.cover_index = cover_index;
    for (int i : best) c.members.push_back(member_ref::by_index(i));
    for (std::size_t j = 0; j < probe_.size(); ++j)
        for (int i : best)
            if (rows[static_cast<std::size_t>(i)][j]) covered[j] = true;
    return c;
}

certificate greedy_cover_strategy::respond(const space& sp, const cover_seq& history) const {
    require(!history.empty(), "empty history");
    std::vector<bool> covered(probe_.size(), false);
    certificate out;
    for (const auto& h : history) {
        const cover& u = h.get(sp);
        out = best_cert(sp, u, h.indexed() ? h.index : -1, covered);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Playing
// ---------------------------------------------------------------------------

namespace {

bool certificate_legal(const space&, const cover& u, int expected_index, const certificate& c,
                       const budget& b) {
    if (c.cover_index != expected_index) return false;
    if (!within(b, c.members.size())) return false;
    for (const auto& m : c.members) {
        // resolving membership of an arbitrary probe point validates the ref;
        // do a structural check instead of a full resolution
        switch (u.family.index()) {
        case 0:
            if (m.t != member_ref::tag::index || m.index < 0 ||
                m.index >= static_cast<int>(u.explicit_members().members.size()))
                return false;
            break;
        case 1:
        case 2:
            if (m.t != member_ref::tag::center) return false;
            break;
        default:
            if (m.t != member_ref::tag::pair || m.parts.size() != 2) return false;
            break;
        }
    }
    return true;
}

std::vector<budget> effective_budgets(const game_config& cfg, const strategy& two, bool use_declared) {
    if (!use_declared) return cfg.budgets;
    return two.declared_budgets(cfg.horizon);
}

} // namespace

transcript play_game(const space& sp, const game_config& cfg, const player_one& one, const strategy& two) {
    cfg.validate(sp);
    transcript t;
    cover_seq history;
    auto budgets = cfg.budgets;
    for (int round = 0; round < cfg.horizon; ++round) {
        int choice;
        if (const auto* seq = std::get_if<std::vector<int>>(&one)) {
            require(static_cast<int>(seq->size()) >= cfg.horizon, "I-sequence shorter than the horizon");
            choice = (*seq)[static_cast<std::size_t>(round)];
        } else {
            choice = std::get<adaptive_chooser>(one)(t.rounds);
        }
        require(choice >= 0 && choice < static_cast<int>(sp.covers.size()), "I chose a cover outside the multicover");
        history.push_back(cover_handle::of_index(choice));

        certificate cert;
        bool legal = true;
        try {
            cert = two.respond(sp, history);
            legal = certificate_legal(sp, sp.cover_at(choice), choice, cert,
                                      budgets[static_cast<std::size_t>(round)]);
        } catch (const error& e) {
            legal = false;
            t.note = e.what();
        }
        if (!legal) {
            t.forfeit = true;
            t.winner = player::one;
            t.rounds.push_back({choice, cert});
            if (t.note.empty()) t.note = "illegal certificate at round " + std::to_string(round);
            return t;
        }
        t.rounds.push_back({choice, cert});
    }

    // evaluate the win condition over the certificate unions
    const auto& probe = win_probe(cfg.win);
    std::vector<set_pred> family;
    for (const auto& r : t.rounds) family.push_back(pred_of_certificate(sp, r.cert));
    auto rows = incidence(family, probe);
    bool ii_wins = false;
    if (std::holds_alternative<win_cover>(cfg.win)) {
        ii_wins = is_cover_rows(rows);
    } else if (const auto* o = std::get_if<win_omega>(&cfg.win)) {
        ii_wins = is_omega_cover_rows(rows, o->k);
    } else {
        const auto& g = std::get<win_gamma>(cfg.win);
        ii_wins = is_gamma_cover_rows(rows, g.m, g.f);
    }
    t.winner = ii_wins ? player::two : player::one;
    if (!ii_wins)
        for (std::size_t i = 0; i < probe.size(); ++i) {
            bool hit = false;
            for (const auto& r : rows)
                if (r[i]) {
                    hit = true;
                    break;
                }
            if (!hit) t.missed.push_back(probe[i]);
        }
    return t;
}

std::vector<std::vector<int>> all_index_sequences(int num_covers, int length) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(length), 0);
    while (true) {
        out.push_back(cur);
        int i = length - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == num_covers - 1) {
            cur[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
    }
    return out;
}

worst_case evaluate_strategy(const space& sp, const game_config& cfg, const strategy& two,
                             bool use_declared_budgets) {
    game_config eff = cfg;
    eff.budgets = effective_budgets(cfg, two, use_declared_budgets);
    auto seqs = all_index_sequences(static_cast<int>(sp.covers.size()), cfg.horizon);
    worst_case wc;
    wc.plays = static_cast<std::int64_t>(seqs.size());

    // strategies are pure, so the I-sequence sweep fans out; the first
    // refutation in canonical order is reported either way
    unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(), 8);
    if (workers > 1 && seqs.size() >= 256) {
        std::vector<std::uint8_t> lost(seqs.size(), 0);
        std::atomic<std::size_t> next{0};
        std::atomic<bool> any_loss{false};
        auto work = [&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= seqs.size()) return;
                auto t = play_game(sp, eff, seqs[i], two);
                if (t.winner == player::one) {
                    lost[i] = 1;
                    any_loss.store(true);
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
        if (any_loss.load()) {
            for (std::size_t i = 0; i < seqs.size(); ++i)
                if (lost[i]) {
                    wc.winner = player::one;
                    wc.refutation = seqs[i];
                    return wc;
                }
        }
        return wc;
    }

    wc.plays = 0;
    for (auto& seq : seqs) {
        ++wc.plays;
        auto t = play_game(sp, eff, seq, two);
        if (t.winner == player::one) {
            wc.winner = player::one;
            wc.refutation = seq;
            return wc;
        }
    }
    return wc;
}

tri_bool verify_on_probe(const space& sp, const game_config& cfg, const std::vector<std::vector<int>>& sequences,
                         const strategy& two) {
    game_config eff = cfg;
    eff.budgets = two.declared_budgets(cfg.horizon);
    for (const auto& seq : sequences) {
        transcript t;
        try {
            t = play_game(sp, eff, seq, two);
        } catch (const error& e) {
            return tri_bool::unknown(e.what());
        }
        if (t.winner == player::one) {
            tri_bool out = tri_bool::no("refuted by an I-sequence");
            out.counterexample = t.missed;
            out.note = "sequence";
            for (int c : seq) out.note += " " + std::to_string(c);
            return out;
        }
    }
    return tri_bool::yes({}, true, "verified on probe for all supplied sequences");
}

// ---------------------------------------------------------------------------
// Selection principles (non-game): exact DP over one known cover sequence
// ---------------------------------------------------------------------------

namespace {

// Candidate certificates of cover u within budget, as probe bitmasks paired
// with the lexicographically first realizing member list.
struct cert_options {
    std::vector<std::pair<std::vector<bool>, certificate>> options;
};

cert_options enumerate_certs(const space& sp, int cover_index, const budget& b, const std::vector<point>& probe) {
    const auto& u = sp.cover_at(cover_index);
    require(u.is_explicit(), "principle / solver search needs explicit covers");
    int n = static_cast<int>(u.explicit_members().members.size());
    std::size_t maxb = b ? static_cast<std::size_t>(std::max<std::int64_t>(0, *b)) : static_cast<std::size_t>(n);
    maxb = std::min(maxb, static_cast<std::size_t>(n));

    std::vector<std::vector<bool>> member_rows(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        member_rows[static_cast<std::size_t>(i)].resize(probe.size());
        for (std::size_t j = 0; j < probe.size(); ++j)
            member_rows[static_cast<std::size_t>(i)][j] = member_contains(sp, u, member_ref::by_index(i), probe[j]);
    }

    cert_options out;
    std::map<std::vector<bool>, bool> seen;
    std::vector<int> chosen;
    std::vector<bool> mask(probe.size(), false);
    std::function<void(int, std::size_t)> rec = [&](int start, std::size_t left) {
        if (!seen.count(mask)) {
            certificate c;
            c.cover_index = cover_index;
            for (int i : chosen) c.members.push_back(member_ref::by_index(i));
            out.options.emplace_back(mask, std::move(c));
            seen[mask] = true;
        }
        if (left == 0) return;
        for (int i = start; i < n; ++i) {
            auto saved = mask;
            for (std::size_t j = 0; j < probe.size(); ++j)
                if (member_rows[static_cast<std::size_t>(i)][j]) mask[j] = true;
            chosen.push_back(i);
            rec(i + 1, left - 1);
            chosen.pop_back();
            mask = saved;
        }
    };
    rec(0, maxb);
    return out;
}

} // namespace

tri_bool check_principle(const space& sp, principle pr, const game_config& cfg) {
    cfg.validate(sp);
    require(sp.finite(), "principle checks need a finite instance (use probe games on lazy spaces)");
    const auto& probe = win_probe(cfg.win);
    int L = cfg.horizon;
    int nc = static_cast<int>(sp.covers.size());

    for (auto& seq : all_index_sequences(nc, L)) {
        // per-round candidate bounded sets
        std::vector<cert_options> opts;
        for (int r = 0; r < L; ++r)
            opts.push_back(enumerate_certs(sp, seq[static_cast<std::size_t>(r)],
                                           cfg.budgets[static_cast<std::size_t>(r)], probe));

        bool feasible = false;
        if (pr == principle::menger) {
            // DP over uncovered masks
            std::set<std::vector<bool>> frontier{std::vector<bool>(probe.size(), false)};
            for (int r = 0; r < L && !feasible; ++r) {
                std::set<std::vector<bool>> next;
                for (const auto& covered : frontier)
                    for (const auto& [m, c] : opts[static_cast<std::size_t>(r)].options) {
                        auto merged = covered;
                        for (std::size_t j = 0; j < merged.size(); ++j)
                            if (m[j]) merged[j] = true;
                        next.insert(merged);
                    }
                frontier = std::move(next);
                for (const auto& covered : frontier)
                    if (std::all_of(covered.begin(), covered.end(), [](bool x) { return x; })) feasible = true;
            }
        } else if (pr == principle::scheepers) {
            const auto* o = std::get_if<win_omega>(&cfg.win);
            require(o != nullptr, "scheepers check needs an omega win condition");
            // track unsatisfied k-subsets
            std::vector<std::vector<int>> ksets;
            for_each_k_subset(static_cast<int>(probe.size()), o->k, [&](const std::vector<int>& s) {
                ksets.push_back(s);
                return true;
            });
            auto engulfed = [&](const std::vector<bool>& m, const std::vector<int>& s) {
                for (int i : s)
                    if (!m[static_cast<std::size_t>(i)]) return false;
                return true;
            };
            std::set<std::vector<bool>> frontier{std::vector<bool>(ksets.size(), false)};
            for (int r = 0; r < L && !feasible; ++r) {
                std::set<std::vector<bool>> next;
                for (const auto& sat : frontier)
                    for (const auto& [m, c] : opts[static_cast<std::size_t>(r)].options) {
                        auto merged = sat;
                        for (std::size_t q = 0; q < ksets.size(); ++q)
                            if (!merged[q] && engulfed(m, ksets[q])) merged[q] = true;
                        next.insert(merged);
                    }
                frontier = std::move(next);
                for (const auto& sat : frontier)
                    if (std::all_of(sat.begin(), sat.end(), [](bool x) { return x; })) feasible = true;
            }
        } else {
            const auto* g = std::get_if<win_gamma>(&cfg.win);
            require(g != nullptr, "hurewicz check needs a gamma win condition");
            // exact DP over per-point miss counts (capped at f+1 = dead)
            std::set<std::vector<int>> frontier{std::vector<int>(probe.size(), 0)};
            for (int r = g->m; r < L; ++r) {
                std::set<std::vector<int>> next;
                for (const auto& counts : frontier)
                    for (const auto& [m, c] : opts[static_cast<std::size_t>(r)].options) {
                        auto merged = counts;
                        bool dead = false;
                        for (std::size_t j = 0; j < merged.size(); ++j) {
                            if (!m[j]) ++merged[j];
                            if (merged[j] > g->f) dead = true;
                        }
                        if (!dead) next.insert(merged);
                    }
                frontier = std::move(next);
                if (frontier.empty()) break;
            }
            feasible = !frontier.empty();
        }
        if (!feasible) {
            tri_bool t = tri_bool::no("sequence admits no per-round bounded witness");
            t.note = "sequence";
            for (int c : seq) t.note += " " + std::to_string(c);
            return t;
        }
    }
    return tri_bool::yes();
}

transcript group_game(const space& group_space, const game_config& cfg, const player_one& one, const strategy& two) {
    require(group_space.group.has_value(), "group game needs a group space");
    return play_game(group_space, cfg, one, two);
}

} // namespace cbg
