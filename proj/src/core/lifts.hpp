#pragma once

#include "combinators.hpp"
#include "spaces.hpp"

namespace cbg {

// ---------------------------------------------------------------------------
// Abelian group lifting: from a witness on the generators to one on the group
// ---------------------------------------------------------------------------
//
// Input: a witness on the generating set whose round-n certificate is
// K_n + O_n — cover n is the translate cover with neighborhood O_n (radii
// halving, so O_{n+1} + O_{n+1} ⊆ O_n), and the members are the translates
// centered at the finite set K_n. The K_n must form a generator chain
// (symmetric, K_n + K_n ⊆ K_{n+1}).
//
// Output: the family { K_{2n} + O_n }. The ω route turns a proper ω witness
// into an ω witness of the group; the γ route turns a γ witness into a γ
// witness whose tail start is computed from the probe.

struct abelian_lift_result {
    witness_sequence witness;
    int tail_start = 0; // γ route: first round from which every probe point stays covered
};

abelian_lift_result lift_scheepers_to_abelian_group(const space& G, const witness_sequence& w,
                                                    const std::vector<point>& x_probe,
                                                    const std::vector<point>& g_probe);

abelian_lift_result lift_hurewicz_to_abelian_group(const space& G, const witness_sequence& w,
                                                   const std::vector<point>& x_probe,
                                                   const std::vector<point>& g_probe);

// ---------------------------------------------------------------------------
// Nonabelian lifting: a winning strategy on X ∪ X⁻¹ lifts to the group
// ---------------------------------------------------------------------------

// The restriction of the group's right-translate multicover to X ∪ X⁻¹ (the
// space the input strategy plays on).
space restrict_to_generators(const space& G);

struct winning_lift_config {
    int horizon = 8;
    // Upper bound on the word length of the centers the input strategy uses
    // in its certificates; feeds the up-front radius budget check
    // r_min >= 2^horizon * (1 + 2 * max_center_word_len) and is enforced
    // during construction.
    std::int64_t max_center_word_len = 1;
};

// Builds the interleaved-history strategy on (G, λ_R): for a real history
// (u_0..u_{n-1}) it expands the virtual history q, plays the input strategy
// along the spliced translate covers, and answers with the product
// A_0 · A_2 · ... · A_{2n-2} certified in u_{n-1}. The input strategy must
// have the γ-output property on the restricted space (apply gamma_upgrade).
//
// The certificate is only a boundedness witness (translate balls around the
// product set); coverage checks against the construction itself use
// response_set, the exact product set.
class group_lift_strategy : public strategy {
public:
    virtual std::vector<point> response_set(const space& sp, const cover_seq& history) const = 0;
};

std::shared_ptr<const group_lift_strategy> lift_winning_to_group(std::shared_ptr<const space> G,
                                                                 strategy_ptr theta_restricted,
                                                                 const winning_lift_config& cfg);

} // namespace cbg
