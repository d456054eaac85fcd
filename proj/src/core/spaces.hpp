#pragma once

#include "game.hpp"
#include "preorder.hpp"
#include "space.hpp"

namespace cbg {

// ---------------------------------------------------------------------------
// Plain finite spaces (points 0..n-1, explicit member lists)
// ---------------------------------------------------------------------------

space make_finite_space(int n_points, const std::vector<std::vector<std::vector<std::int64_t>>>& covers,
                        std::string name = "finite");

// ---------------------------------------------------------------------------
// Metric spaces and their ball multicovers
// ---------------------------------------------------------------------------

// Finite (pseudo)metric space with covers by strict ε-balls, one cover per
// radius; radii must be positive and strictly decreasing so the multicover is
// centered by refinement.
space make_metric_space(std::vector<std::vector<rat>> dist, const std::vector<rat>& radii,
                        std::string name = "metric");

// Z^dim with the max-norm metric and strict-ball covers.
space make_lattice_metric_space(int dim, const std::vector<rat>& radii, std::int64_t probe_box = 20);

// ---------------------------------------------------------------------------
// Groups: word-ball neighborhoods stand in for open identity neighborhoods
// ---------------------------------------------------------------------------

// Strictly decreasing positive radii r_0 > r_1 > ... with the shrink law
// r_{n+1} <= floor(r_n / 2), which makes U_{n+1} U_{n+1} ⊆ U_n exact in every
// word metric. The extra conjugation law needed by the nonabelian lifting is
// checked there against the actual translate sets.
struct neighborhood_schedule {
    std::vector<std::int64_t> radii;
    void validate() const;
    std::int64_t min_radius() const { return radii.empty() ? 0 : radii.back(); }
};

// Finite group from a Cayley table; generators fix the word metric.
space make_table_group_space(std::vector<std::vector<int>> mul, std::vector<std::int64_t> generators,
                             const neighborhood_schedule& sched, side s, std::string name = "group");

// Z_n with generators {1, n-1}.
space make_cyclic_group_space(int n, const neighborhood_schedule& sched, side s = side::right);

// Z^dim as an abelian group with box neighborhoods (all four sides coincide).
space make_lattice_group_space(int dim, const neighborhood_schedule& sched, std::int64_t probe_box = 20);

// Free group of the given rank with word-ball neighborhoods; probes are all
// reduced words of length <= probe_word_len. rank 1 is Z in word form.
space make_free_group_space(int rank, const neighborhood_schedule& sched, side s = side::right,
                            std::int64_t probe_word_len = 5);

// The trivial group.
space make_trivial_group_space(const neighborhood_schedule& sched);

// Converts center-indexed families over finite grounds into explicit member
// lists (one member per center, universe order), so the exact solver can run
// on finite group and metric spaces. Lazy grounds are returned unchanged.
space materialize(const space& sp);

// ---------------------------------------------------------------------------
// Generator chains K_0 ⊆ K_1 ⊆ ... for the group liftings
// ---------------------------------------------------------------------------

struct generator_chain {
    std::vector<std::vector<point>> sets; // each sorted
    // symmetry K = -K and sum closure K_n + K_n ⊆ K_{n+1}, checked exactly
    void validate(const space& group_space) const;
};

// K_n = [-2^n, 2^n]^dim on the lattice.
generator_chain box_chain(int dim, int length);

// ---------------------------------------------------------------------------
// Derived checks
// ---------------------------------------------------------------------------

// For the n-fold addition map on an abelian lattice group: for every n-tuple
// of covers of the group there is a group cover whose bounded probe sets pull
// back to product-bounded sets, with explicit per-factor certificates.
// Verified on the probe box (the global statement has no finite content).
tri_bool addition_map_perfect(const space& lattice_group, int n_fold, std::int64_t probe_box);

// Rebuilds every translate cover of a group space on the requested side
// (same radii, same order).
space group_space_on_side(const space& G, side s);

// Plays the group game on the translate multicover of the requested side.
transcript group_game_on_side(const space& G, side s, const game_config& cfg, const player_one& one,
                              const strategy& two);

// o-boundedness at desk scale: the translate multicover of the given side is
// Menger for the given horizon/budgets. strictly-o-bounded: II wins the game.
tri_bool o_bounded(const space& group_space, const game_config& cfg);
tri_bool strictly_o_bounded(const space& group_space, const game_config& cfg);

} // namespace cbg
