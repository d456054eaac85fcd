#pragma once

#include "game.hpp"
#include "maps.hpp"

namespace cbg {

// ---------------------------------------------------------------------------
// Witness sequences: played second-player responses, detached from a game
// ---------------------------------------------------------------------------

enum class witness_class { cover, omega, gamma, proper_omega };

struct witness_sequence {
    witness_class cls = witness_class::cover;
    std::vector<certificate> items; // item n is a certificate of round n's cover
    // class parameters of the finite surrogate
    int k = 2; // omega / proper omega subset size
    int t = 2; // proper omega minimum occurrences
    int m = 0; // gamma tail start
    int f = 0; // gamma miss budget
    std::string note;
};

std::vector<set_pred> witness_family(const space& sp, const witness_sequence& w);

// Checks the class claim with the stored parameters on the given probe.
bool witness_holds(const space& sp, const witness_sequence& w, const std::vector<point>& probe);

// Point sets A_n whose union covers the ground probe.
struct piece_decomposition {
    std::vector<std::vector<point>> pieces; // piece n may be empty
};

// ---------------------------------------------------------------------------
// Strategy combinators
// ---------------------------------------------------------------------------

// Round-n response is the union of the piece responses on the shifted
// histories (piece k answers (u_k, ..., u_n)); the declared budget schedule
// is the running sum of the piece budgets. Covers the union of the pieces
// whenever each piece strategy covers its piece on every tail history.
strategy_ptr union_strategy(std::vector<strategy_ptr> pieces);

// Θ₁(u_0..u_n) = union of Θ over all strict subsequences of (u_0..u_{n-1})
// extended by u_n; certificates grow by at most 2^n. Constant-full inputs are
// returned unchanged (the union of a constant is itself). Histories longer
// than horizon_cap + 1 are rejected.
strategy_ptr gamma_upgrade(strategy_ptr base, int horizon_cap = 12);

// On a product multicover: pairwise products of the component responses.
// Wins the product game whenever both inputs have the γ-output property.
strategy_ptr product_strategy(strategy_ptr left, strategy_ptr right);

// Θ_X(s) = pulled-back certificate of Θ_Y on the assign-translated history.
strategy_ptr pullback_strategy(std::shared_ptr<const space> target, space_map f, strategy_ptr theta_y);

// ---------------------------------------------------------------------------
// Witness transformations
// ---------------------------------------------------------------------------

// Image witness along a uniformly bounded map. The class is preserved when
// the map is onto the target probe; otherwise it is downgraded to a plain
// cover witness and the note says so.
witness_sequence pushforward_witness(const space& source, const space& target, const space_map& f,
                                     const witness_sequence& w, const std::vector<point>& target_probe);

// A per-power witness: for each round, the certificates of the n factor
// projections of a bounded box covering the power probe.
struct power_witness {
    int n = 1;
    std::vector<std::vector<certificate>> factor_certs; // round -> n factor certificates
};

// Stacked power witnesses (B_{n,k})_{k >= n} combine to an ω-cover witness
// B_k = union over n <= k of B_{n,k}. stacks[i] holds the witness for power
// n = i + 1 as certificates aligned to rounds (empty certificates for rounds
// before the stack starts).
witness_sequence scheepers_from_menger_powers(const space& sp, const std::vector<std::vector<certificate>>& stacks,
                                              const std::vector<point>& probe);

// From an ω-cover witness whose round covers ≺-dominate each factor of the
// given product-cover rounds, produce per-round factor certificates whose
// products cover the n-th power probe. Throws when a factor transfer fails
// (missing centered upper-bound structure).
power_witness menger_power_from_scheepers(const space& sp, const witness_sequence& w, int n,
                                          const std::vector<std::vector<int>>& round_factors,
                                          int search_bound = default_search_bound());

// B_n = union over k <= n of A_{k,n}: stacks[k] lists certificates for rounds
// k, k+1, ...; every subset of size <= k_sets is engulfed by at least
// min(t, #stacks) members.
witness_sequence proper_omega_from_scheepers(const space& sp, const std::vector<std::vector<certificate>>& stacks,
                                             const std::vector<point>& probe, int k_sets, int t);

// Witness form of the piecewise union: stacks[k] is a cover/γ witness for
// piece k over rounds k, k+1, ...; the merged rounds B_n = union over k <= n
// keep the class on the union of the pieces. γ tails shift by the stack
// offsets, miss budgets take the maximum.
witness_sequence union_witnesses(const space& sp, const std::vector<std::vector<certificate>>& stacks,
                                 witness_class cls, int f = 0);

// C_n = A_n × B_n on the product space; miss budgets add, tails start at the
// later of the two starts. Length mismatch truncates to the shorter input.
witness_sequence hurewicz_product_witness(const space& prod, const witness_sequence& a, const witness_sequence& b);

// ---------------------------------------------------------------------------
// Products with a σ-bounded second factor (pieces K_0 ⊆ K_1 ⊆ ...)
// ---------------------------------------------------------------------------

// Pulls a cover/γ witness on X back through the piece projections and unions
// them: item n = A_n × K_min(n, last). y_covers[n] is the Y-cover paired with
// round n. Every piece must be bounded in every used Y-cover.
witness_sequence sigma_bounded_product_witness(const space& prod, const witness_sequence& wx,
                                               const std::vector<int>& y_covers,
                                               const std::vector<std::vector<point>>& pieces);

// Pairs a proper ω-cover witness with the growing pieces: item n = B_n × K_n.
witness_sequence sigma_bounded_product_omega(const space& prod, const witness_sequence& wx_proper,
                                             const std::vector<int>& y_covers,
                                             const std::vector<std::vector<point>>& pieces);

// Union of per-piece pullback strategies along the product projections.
// theta_x answers the shifted X-part history for piece k, so it must cover X
// within every tail horizon (a fixed-horizon solved policy may procrastinate;
// greedy_cover_strategy does not).
strategy_ptr sigma_bounded_product_strategy(strategy_ptr theta_x, const std::vector<std::vector<point>>& pieces);

// ---------------------------------------------------------------------------
// Total-boundedness decomposition from a γ witness
// ---------------------------------------------------------------------------

// T_n = intersection of the tail certificate unions from round n on; their
// union covers the probe and each T_n is bounded in every tail cover (the
// tail certificates are its boundedness certificates). Rejects f > 0 inputs.
piece_decomposition totally_bounded_decomposition(const space& sp, const witness_sequence& w,
                                                  const std::vector<point>& probe);

} // namespace cbg
