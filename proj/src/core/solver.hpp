#pragma once

#include "game.hpp"

namespace cbg {

struct solve_result {
    player winner = player::one;
    std::int64_t states_explored = 0;
    // Optimal second-player policy (best-effort when the winner is I).
    strategy_ptr policy;
    // Adaptive first-player chooser realizing an I win (cover 0 fallback on
    // II-winning states).
    adaptive_chooser i_policy;
};

// Exact minimax on a finite explicit instance by backward induction with
// memoization. II-to-win iff for every I cover choice there is a budget-legal
// certificate leading to a II-winning successor.
//
//  - Cover condition memoizes on (uncovered probe set, round).
//  - Omega memoizes on (unsatisfied k-subset set, round); k <= 3 enforced.
//  - Gamma reduces to play from round m with per-point miss counts capped at
//    f+1 (f = 0: every round from m must cover the probe outright).
//
// Exceeding memo_cap raises status::resource; the solver never guesses.
solve_result solve(const space& sp, const game_config& cfg);

} // namespace cbg
