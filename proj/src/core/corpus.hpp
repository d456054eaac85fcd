#pragma once

#include "space.hpp"

namespace cbg {

// Exhaustive, canonically ordered, relabeling-deduplicated enumeration of
// small finite instances for acceptance sweeps.
//
// Cover pools per ground size n:
//   n <= 3: every family of distinct nonempty subsets (at most max_members of
//           them) that covers the ground set;
//   n >= 4: every set partition of the ground set (partitions keep the pool
//           near sqrt scale so cover tuples stay enumerable).
// Instances are ordered tuples of 1..max_covers pool covers; an instance is
// kept iff its member-list encoding is the lexicographic minimum over all
// point relabelings.
struct corpus_params {
    int max_points = 5;
    int max_covers = 2;
    int max_members = 5;

    void validate() const;
};

// encoding: covers -> members -> points, members sorted
using corpus_encoding = std::vector<std::vector<std::vector<std::int64_t>>>;

struct corpus_instance {
    int n_points = 0;
    corpus_encoding covers;
};

std::vector<corpus_instance> generate_corpus(const corpus_params& p);

space corpus_space(const corpus_instance& inst);

} // namespace cbg
