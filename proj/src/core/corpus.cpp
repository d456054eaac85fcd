#include "corpus.hpp"

#include <algorithm>
#include <numeric>

#include "err.hpp"
#include "spaces.hpp"

namespace cbg {

void corpus_params::validate() const {
    require(max_points >= 1 && max_points <= 6, "corpus cap: |X| <= 6");
    require(max_covers >= 1 && max_covers <= 3, "corpus cap: |multicover| <= 3");
    require(max_members >= 1 && max_members <= 6, "corpus cap: members per cover <= 6");
}

namespace {

using encoded_cover = std::vector<std::vector<std::int64_t>>;

void sort_cover(encoded_cover& c) {
    for (auto& m : c) std::sort(m.begin(), m.end());
    std::sort(c.begin(), c.end());
}

std::vector<encoded_cover> partitions_of(int n) {
    std::vector<encoded_cover> out;
    encoded_cover blocks;
    std::function<void(int)> rec = [&](int next) {
        if (next == n) {
            auto c = blocks;
            sort_cover(c);
            out.push_back(std::move(c));
            return;
        }
        std::size_t nb = blocks.size();
        for (std::size_t bi = 0; bi < nb; ++bi) {
            blocks[bi].push_back(next);
            rec(next + 1);
            blocks[bi].pop_back();
        }
        blocks.push_back({next});
        rec(next + 1);
        blocks.pop_back();
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<encoded_cover> all_covers(int n, int max_members) {
    // all nonempty subsets, in lex order of their sorted point lists
    std::vector<std::vector<std::int64_t>> subsets;
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<std::int64_t> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) s.push_back(i);
        subsets.push_back(std::move(s));
    }
    std::sort(subsets.begin(), subsets.end());

    std::vector<encoded_cover> out;
    std::vector<int> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (!chosen.empty() && static_cast<int>(chosen.size()) <= max_members) {
            std::vector<bool> covered(static_cast<std::size_t>(n), false);
            for (int i : chosen)
                for (auto p : subsets[static_cast<std::size_t>(i)]) covered[static_cast<std::size_t>(p)] = true;
            if (std::all_of(covered.begin(), covered.end(), [](bool b) { return b; })) {
                encoded_cover c;
                for (int i : chosen) c.push_back(subsets[static_cast<std::size_t>(i)]);
                out.push_back(std::move(c)); // already in member-sorted order
            }
        }
        if (static_cast<int>(chosen.size()) == max_members) return;
        for (std::size_t i = start; i < subsets.size(); ++i) {
            chosen.push_back(static_cast<int>(i));
            rec(i + 1);
            chosen.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

corpus_encoding relabel(const corpus_encoding& covers, const std::vector<int>& perm) {
    corpus_encoding out;
    for (const auto& c : covers) {
        encoded_cover rc;
        for (const auto& m : c) {
            std::vector<std::int64_t> rm;
            for (auto p : m) rm.push_back(perm[static_cast<std::size_t>(p)]);
            rc.push_back(std::move(rm));
        }
        sort_cover(rc);
        out.push_back(std::move(rc));
    }
    return out;
}

bool is_canonical(const corpus_encoding& covers, int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    while (std::next_permutation(perm.begin(), perm.end())) {
        if (relabel(covers, perm) < covers) return false;
    }
    return true;
}

} // namespace

std::vector<corpus_instance> generate_corpus(const corpus_params& p) {
    p.validate();
    std::vector<corpus_instance> out;
    for (int n = 1; n <= p.max_points; ++n) {
        auto pool = n <= 3 ? all_covers(n, p.max_members) : partitions_of(n);
        // drop pool covers that exceed the member cap (partitions of n <= 6
        // always fit when max_members >= n)
        pool.erase(std::remove_if(pool.begin(), pool.end(),
                                  [&](const encoded_cover& c) {
                                      return static_cast<int>(c.size()) > p.max_members;
                                  }),
                   pool.end());
        std::vector<int> idx;
        std::function<void()> emit = [&]() {
            corpus_encoding covers;
            for (int i : idx) covers.push_back(pool[static_cast<std::size_t>(i)]);
            if (is_canonical(covers, n)) out.push_back({n, std::move(covers)});
        };
        std::function<void(int)> rec = [&](int depth) {
            if (depth > 0) emit();
            if (depth == p.max_covers) return;
            for (std::size_t i = 0; i < pool.size(); ++i) {
                idx.push_back(static_cast<int>(i));
                rec(depth + 1);
                idx.pop_back();
            }
        };
        rec(0);
    }
    return out;
}

space corpus_space(const corpus_instance& inst) {
    return make_finite_space(inst.n_points, inst.covers, "corpus");
}

} // namespace cbg
