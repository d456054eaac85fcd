#pragma once

#include <functional>
#include <memory>
#include <span>

#include "bounded.hpp"
#include "predicates.hpp"
#include "preorder.hpp"
#include "space.hpp"

namespace cbg {

// ---------------------------------------------------------------------------
// Game configuration
// ---------------------------------------------------------------------------

struct win_cover {
    std::vector<point> probe;
};
struct win_omega {
    int k = 2;
    std::vector<point> probe;
};
struct win_gamma {
    int m = 0;
    int f = 0;
    std::vector<point> probe;
};
using win_condition = std::variant<win_cover, win_omega, win_gamma>;

const std::vector<point>& win_probe(const win_condition& w);

struct game_config {
    int horizon = 1;
    std::vector<budget> budgets; // size == horizon
    win_condition win;
    std::int64_t memo_cap = 1 << 22;

    static game_config cover_game(int horizon, budget per_round, std::vector<point> probe);
    void validate(const space& sp) const;
};

// ---------------------------------------------------------------------------
// Histories and strategies
// ---------------------------------------------------------------------------

// Covers in a history are normally the multicover's (by index); strategy
// transformations may splice in ad-hoc covers.
struct cover_handle {
    int index = -1;
    std::shared_ptr<const cover> ad_hoc;

    static cover_handle of_index(int i) { return cover_handle{i, nullptr}; }
    static cover_handle of_cover(cover c) { return cover_handle{-1, std::make_shared<const cover>(std::move(c))}; }
    const cover& get(const space& sp) const { return ad_hoc ? *ad_hoc : sp.cover_at(index); }
    bool indexed() const { return !ad_hoc; }
};

using cover_seq = std::vector<cover_handle>;

// Second-player strategy: a pure map from cover histories to certificates.
// The certificate must reference the last cover of the history; when the
// last cover is ad hoc the certificate's cover_index is -1 and the members
// refer to the ad-hoc cover.
class strategy {
public:
    virtual ~strategy() = default;
    virtual certificate respond(const space& sp, const cover_seq& history) const = 0;
    // Budget schedule this strategy guarantees; games verifying combinator
    // outputs use the declared schedule.
    virtual std::vector<budget> declared_budgets(int horizon) const {
        return std::vector<budget>(static_cast<std::size_t>(horizon), budget{});
    }
    // Constant strategies respond with the same full-ground certificate on
    // every history; several transformations shortcut on this.
    virtual bool constant_full() const { return false; }
    virtual std::string describe() const = 0;
};

using strategy_ptr = std::shared_ptr<const strategy>;

// Table strategy: explicit map from cover-index sequences to certificates.
class table_strategy final : public strategy {
public:
    std::map<std::vector<int>, certificate> table;
    certificate respond(const space& sp, const cover_seq& history) const override;
    std::string describe() const override { return "table"; }
};

// Responds with the canonical full-ground certificate of the last cover.
class constant_full_strategy final : public strategy {
public:
    certificate respond(const space& sp, const cover_seq& history) const override;
    bool constant_full() const override { return true; }
    std::string describe() const override { return "constant-full"; }
};

// Responds with the fixed certificate regardless of history (cover index must
// match; used for adversarial/negative tests).
class constant_cert_strategy final : public strategy {
public:
    explicit constant_cert_strategy(certificate c) : cert_(std::move(c)) {}
    certificate respond(const space&, const cover_seq& history) const override;
    std::string describe() const override { return "constant-cert"; }

private:
    certificate cert_;
};

// Maximal-progress strategy: at each round picks the budget-legal certificate
// covering the most still-uncovered probe points (lexicographically first on
// ties), replaying its own path along the history prefix. Unlike a solved
// policy it never procrastinates, so it wins from every tail whenever plain
// greed suffices.
class greedy_cover_strategy final : public strategy {
public:
    greedy_cover_strategy(std::vector<point> probe, budget per_round)
        : probe_(std::move(probe)), per_round_(per_round) {}
    certificate respond(const space& sp, const cover_seq& history) const override;
    std::vector<budget> declared_budgets(int horizon) const override {
        return std::vector<budget>(static_cast<std::size_t>(horizon), per_round_);
    }
    std::string describe() const override { return "greedy"; }

private:
    certificate best_cert(const space& sp, const cover& u, int cover_index,
                          std::vector<bool>& covered) const;
    std::vector<point> probe_;
    budget per_round_;
};

// ---------------------------------------------------------------------------
// Playing and evaluating
// ---------------------------------------------------------------------------

struct round_record {
    int cover_index = -1;
    certificate cert;
};

enum class player { one, two };

struct transcript {
    player winner = player::one;
    std::vector<round_record> rounds;
    bool forfeit = false;     // II emitted an illegal certificate
    std::string note;
    std::vector<point> missed; // witnesses when the win condition failed
};

// First player: a fixed cover-index sequence or an adaptive chooser fed the
// rounds played so far.
using adaptive_chooser = std::function<int(const std::vector<round_record>&)>;
using player_one = std::variant<std::vector<int>, adaptive_chooser>;

// Deterministic replay of one play of the game.
transcript play_game(const space& sp, const game_config& cfg, const player_one& one, const strategy& two);

struct worst_case {
    player winner = player::two;
    std::optional<std::vector<int>> refutation; // an I-sequence defeating the strategy
    std::int64_t plays = 0;
};

// II is winning iff it wins against every I cover-index sequence; the I-play
// tree is |λ|^horizon, enumerated exhaustively.
worst_case evaluate_strategy(const space& sp, const game_config& cfg, const strategy& two,
                             bool use_declared_budgets = true);

// Probe verification for lazy spaces: win condition evaluated on the probe
// for every supplied I-sequence.
tri_bool verify_on_probe(const space& sp, const game_config& cfg, const std::vector<std::vector<int>>& sequences,
                         const strategy& two);

// ---------------------------------------------------------------------------
// Non-game selection principles (the second player sees the whole sequence)
// ---------------------------------------------------------------------------

enum class principle { menger, scheepers, hurewicz };

// For every cover sequence over the multicover there are per-round bounded
// sets whose family is a cover / ω-cover / γ-cover of the probe. Exact for
// finite explicit instances; omega uses k, gamma uses (m, f).
tri_bool check_principle(const space& sp, principle pr, const game_config& cfg);

// ---------------------------------------------------------------------------
// Group game wrappers
// ---------------------------------------------------------------------------

// The group game is the cover-bounded game on the translate multicover of the
// chosen side; the space passed in must already carry translate covers of
// that side (see make_group_space).
transcript group_game(const space& group_space, const game_config& cfg, const player_one& one, const strategy& two);

std::vector<std::vector<int>> all_index_sequences(int num_covers, int length);

} // namespace cbg
