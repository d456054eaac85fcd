#include "solver.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <unordered_map>

#include "err.hpp"

namespace cbg {

namespace {

// Candidate certificate: probe-coverage mask plus the lexicographically first
// member list realizing it. Enumeration order is lex (sizes interleaved by
// DFS), so the first winning candidate is the policy's canonical choice.
struct candidate {
    std::vector<bool> covers;
    certificate cert;
};

struct state_key {
    int round;
    std::vector<std::uint8_t> payload;
    bool operator==(const state_key& o) const { return round == o.round && payload == o.payload; }
};

struct state_key_hash {
    std::size_t operator()(const state_key& k) const {
        std::size_t h = std::hash<int>{}(k.round);
        for (auto b : k.payload) h = h * 1099511628211ull + b;
        return h;
    }
};

class solver_context {
public:
    solver_context(const space& sp, const game_config& cfg) : sp_(sp), cfg_(cfg), probe_(win_probe(cfg.win)) {
        cfg.validate(sp);
        require(sp.finite(), "solver needs a finite explicit instance");
        for (const auto& u : sp.covers) require(u.is_explicit(), "solver needs explicit covers");
        if (const auto* o = std::get_if<win_omega>(&cfg_.win)) {
            require(o->k <= 3, "omega solving is capped at k <= 3");
            for_each_k_subset(static_cast<int>(probe_.size()), o->k, [&](const std::vector<int>& s) {
                ksets_.push_back(s);
                return true;
            });
        }
        if (const auto* g = std::get_if<win_gamma>(&cfg_.win)) {
            start_round_ = g->m;
            miss_budget_ = g->f;
        }
        candidates_.resize(sp.covers.size());
        for (std::size_t u = 0; u < sp.covers.size(); ++u) candidates_[u].resize(cfg.budgets.size());
    }

    enum class mode { cover, omega, gamma };
    mode condition() const {
        if (std::holds_alternative<win_cover>(cfg_.win)) return mode::cover;
        if (std::holds_alternative<win_omega>(cfg_.win)) return mode::omega;
        return mode::gamma;
    }

    std::vector<std::uint8_t> initial_state() const {
        switch (condition()) {
        case mode::cover: return std::vector<std::uint8_t>(probe_.size(), 1); // 1 = uncovered
        case mode::omega: return std::vector<std::uint8_t>(ksets_.size(), 1); // 1 = unsatisfied
        default: return std::vector<std::uint8_t>(probe_.size(), 0);          // miss counts
        }
    }

    bool settled(const std::vector<std::uint8_t>& st) const {
        switch (condition()) {
        case mode::cover:
        case mode::omega:
            return std::all_of(st.begin(), st.end(), [](std::uint8_t b) { return b == 0; });
        default:
            return false; // gamma is settled only at the horizon
        }
    }

    bool dead(const std::vector<std::uint8_t>& st) const {
        if (condition() != mode::gamma) return false;
        return std::any_of(st.begin(), st.end(),
                           [&](std::uint8_t c) { return static_cast<int>(c) > miss_budget_; });
    }

    std::vector<std::uint8_t> apply(const std::vector<std::uint8_t>& st, const std::vector<bool>& covers,
                                    int round) const {
        auto out = st;
        switch (condition()) {
        case mode::cover:
            for (std::size_t i = 0; i < out.size(); ++i)
                if (covers[i]) out[i] = 0;
            return out;
        case mode::omega:
            for (std::size_t q = 0; q < ksets_.size(); ++q) {
                if (!out[q]) continue;
                bool all = true;
                for (int i : ksets_[q])
                    if (!covers[static_cast<std::size_t>(i)]) {
                        all = false;
                        break;
                    }
                if (all) out[q] = 0;
            }
            return out;
        default:
            if (round >= start_round_)
                for (std::size_t i = 0; i < out.size(); ++i)
                    if (!covers[i] && out[i] <= static_cast<std::uint8_t>(miss_budget_)) ++out[i];
            return out;
        }
    }

    const std::vector<candidate>& options(int cover_index, int round) {
        auto& slot = candidates_[static_cast<std::size_t>(cover_index)][static_cast<std::size_t>(round)];
        if (slot) return *slot;
        const auto& u = sp_.cover_at(cover_index);
        int n = static_cast<int>(u.explicit_members().members.size());
        const auto& b = cfg_.budgets[static_cast<std::size_t>(round)];
        std::size_t maxb = b ? static_cast<std::size_t>(std::max<std::int64_t>(0, *b)) : static_cast<std::size_t>(n);
        maxb = std::min(maxb, static_cast<std::size_t>(n));

        std::vector<std::vector<bool>> member_rows(static_cast<std::size_t>(n),
                                                   std::vector<bool>(probe_.size(), false));
        for (int i = 0; i < n; ++i)
            for (std::size_t j = 0; j < probe_.size(); ++j)
                member_rows[static_cast<std::size_t>(i)][j] =
                    member_contains(sp_, u, member_ref::by_index(i), probe_[j]);

        auto out = std::make_unique<std::vector<candidate>>();
        std::set<std::vector<bool>> seen;
        std::vector<int> chosen;
        std::vector<bool> mask(probe_.size(), false);
        std::function<void(int, std::size_t)> rec = [&](int start, std::size_t left) {
            if (seen.insert(mask).second) {
                candidate c;
                c.covers = mask;
                c.cert.cover_index = cover_index;
                for (int i : chosen) c.cert.members.push_back(member_ref::by_index(i));
                out->push_back(std::move(c));
            }
            if (left == 0) return;
            for (int i = start; i < n; ++i) {
                auto saved = mask;
                for (std::size_t j = 0; j < probe_.size(); ++j)
                    if (member_rows[static_cast<std::size_t>(i)][j]) mask[j] = true;
                chosen.push_back(i);
                rec(i + 1, left - 1);
                chosen.pop_back();
                mask = saved;
            }
        };
        rec(0, maxb);
        slot = std::move(out);
        return *slot;
    }

    bool ii_wins(int round, const std::vector<std::uint8_t>& st) {
        if (dead(st)) return false;
        if (settled(st)) return true;
        if (round >= cfg_.horizon) return condition() == mode::gamma; // gamma: alive at horizon = win
        if (condition() == mode::gamma && round < start_round_) return ii_wins(start_round_, st);

        state_key key{round, st};
        {
            std::lock_guard<std::mutex> lk(mu_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        bool win = true;
        for (int c = 0; c < static_cast<int>(sp_.covers.size()) && win; ++c) {
            bool reply = false;
            for (const auto& cand : options(c, round)) {
                if (ii_wins(round + 1, apply(st, cand.covers, round))) {
                    reply = true;
                    break;
                }
            }
            win = reply;
        }
        {
            std::lock_guard<std::mutex> lk(mu_);
            if (static_cast<std::int64_t>(memo_.size()) >= cfg_.memo_cap)
                fail(status::resource, "solver state-space cap exceeded (" + std::to_string(cfg_.memo_cap) + ")");
            memo_.emplace(std::move(key), win);
        }
        return win;
    }

    // Lexicographically first winning certificate at a II-winning position;
    // greedy best-progress certificate otherwise.
    certificate best_certificate(int round, const std::vector<std::uint8_t>& st, int cover_index) {
        if (condition() == mode::gamma && round < start_round_) {
            certificate c;
            c.cover_index = cover_index;
            return c;
        }
        const auto& opts = options(cover_index, round);
        for (const auto& cand : opts)
            if (ii_wins(round + 1, apply(st, cand.covers, round))) return cand.cert;
        // losing position: maximize immediate progress, lex tie-break
        const candidate* best = nullptr;
        std::int64_t best_score = -1;
        for (const auto& cand : opts) {
            auto nxt = apply(st, cand.covers, round);
            std::int64_t score = 0;
            for (std::size_t i = 0; i < st.size(); ++i)
                score += static_cast<std::int64_t>(st[i]) - static_cast<std::int64_t>(nxt[i]);
            if (score > best_score) {
                best = &cand;
                best_score = score;
            }
        }
        require(best != nullptr, "no candidate certificates");
        return best->cert;
    }

    // Replays the second player's own certificates along an I history and
    // returns the state before the round to answer.
    std::vector<std::uint8_t> replay(const cover_seq& history, std::vector<certificate>* played = nullptr) {
        auto st = initial_state();
        for (std::size_t r = 0; r + 1 < history.size(); ++r) {
            require(history[r].indexed(), "oracle policy saw an ad-hoc cover");
            auto c = best_certificate(static_cast<int>(r), st, history[r].index);
            if (played) played->push_back(c);
            st = apply_certificate(st, c, static_cast<int>(r));
        }
        return st;
    }

    std::vector<std::uint8_t> apply_certificate(const std::vector<std::uint8_t>& st, const certificate& c,
                                                int round) {
        std::vector<bool> covers(probe_.size(), false);
        for (std::size_t j = 0; j < probe_.size(); ++j)
            covers[j] = certificate_contains(sp_, sp_.cover_at(c.cover_index), c, probe_[j]);
        return apply(st, covers, round);
    }

    std::int64_t states() const { return static_cast<std::int64_t>(memo_.size()); }
    const space& get_space() const { return sp_; }
    const game_config& config() const { return cfg_; }

private:
    space sp_;
    game_config cfg_;
    std::vector<point> probe_;
    std::vector<std::vector<int>> ksets_;
    int start_round_ = 0;
    int miss_budget_ = 0;
    std::vector<std::vector<std::unique_ptr<std::vector<candidate>>>> candidates_;
    std::unordered_map<state_key, bool, state_key_hash> memo_;
    std::mutex mu_;
};

class oracle_policy final : public strategy {
public:
    explicit oracle_policy(std::shared_ptr<solver_context> ctx) : ctx_(std::move(ctx)) {}

    certificate respond(const space&, const cover_seq& history) const override {
        require(!history.empty(), "empty history");
        require(static_cast<int>(history.size()) <= ctx_->config().horizon, "history longer than the horizon");
        auto st = ctx_->replay(history);
        require(history.back().indexed(), "oracle policy saw an ad-hoc cover");
        return ctx_->best_certificate(static_cast<int>(history.size()) - 1, st, history.back().index);
    }
    std::vector<budget> declared_budgets(int horizon) const override {
        auto b = ctx_->config().budgets;
        b.resize(static_cast<std::size_t>(horizon), b.empty() ? budget{} : b.back());
        return b;
    }
    std::string describe() const override { return "oracle"; }

private:
    std::shared_ptr<solver_context> ctx_;
};

} // namespace

solve_result solve(const space& sp, const game_config& cfg) {
    auto ctx = std::make_shared<solver_context>(sp, cfg);
    bool ii = ctx->ii_wins(0, ctx->initial_state());
    solve_result res;
    res.winner = ii ? player::two : player::one;
    res.states_explored = ctx->states();
    res.policy = std::make_shared<oracle_policy>(ctx);
    res.i_policy = [ctx](const std::vector<round_record>& rounds) -> int {
        int round = static_cast<int>(rounds.size());
        if (round >= ctx->config().horizon) return 0;
        auto st = ctx->initial_state();
        for (std::size_t r = 0; r < rounds.size(); ++r)
            st = ctx->apply_certificate(st, rounds[r].cert, static_cast<int>(r));
        int nc = static_cast<int>(ctx->get_space().covers.size());
        for (int c = 0; c < nc; ++c) {
            bool ii_can_win = false;
            for (const auto& cand : ctx->options(c, round)) {
                if (ctx->ii_wins(round + 1, ctx->apply(st, cand.covers, round))) {
                    ii_can_win = true;
                    break;
                }
            }
            if (!ii_can_win) return c;
        }
        return 0;
    };
    return res;
}

} // namespace cbg
