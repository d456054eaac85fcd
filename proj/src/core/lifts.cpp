#include "lifts.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "err.hpp"

namespace cbg {

// ---------------------------------------------------------------------------
// Abelian lifting
// ---------------------------------------------------------------------------

namespace {

// The round-n certificates must reference translate cover n; the centers are
// the chain sets K_n.
generator_chain chain_of_witness(const space& G, const witness_sequence& w) {
    generator_chain ch;
    for (std::size_t n = 0; n < w.items.size(); ++n) {
        const auto& c = w.items[n];
        require(c.cover_index == static_cast<int>(n),
                "lift input: round " + std::to_string(n) + " must use cover " + std::to_string(n));
        const auto& u = G.cover_at(c.cover_index);
        require(std::holds_alternative<translate_family>(u.family), "lift input needs translate covers");
        std::vector<point> K;
        for (const auto& m : c.members) {
            require(m.t == member_ref::tag::center, "lift input members must be translate centers");
            K.push_back(m.center);
        }
        std::sort(K.begin(), K.end());
        K.erase(std::unique(K.begin(), K.end()), K.end());
        ch.sets.push_back(std::move(K));
    }
    return ch;
}

abelian_lift_result lift_to_abelian_group(const space& G, const witness_sequence& w,
                                          const std::vector<point>& x_probe,
                                          const std::vector<point>& g_probe, bool gamma_route) {
    require(G.group.has_value() && G.group->abelian(), "abelian lifting needs an abelian group");
    require(!w.items.empty(), "empty witness");

    witness_sequence checked = w;
    checked.k = std::min<int>(checked.k, static_cast<int>(x_probe.size()));
    if (gamma_route) {
        require(w.cls == witness_class::gamma && w.f == 0, "γ route needs a γ witness with miss budget 0");
        require(witness_holds(G, checked, x_probe), "input witness fails the γ predicate on the generator probe");
    } else {
        require(w.cls == witness_class::proper_omega, "ω route needs a proper ω witness");
        require(witness_holds(G, checked, x_probe),
                "input witness fails the proper-ω predicate on the generator probe");
    }

    auto chain = chain_of_witness(G, w);
    chain.validate(G);

    // O_{n+1} + O_{n+1} ⊆ O_n via the halving law of the schedule radii
    for (std::size_t n = 0; n + 1 < w.items.size(); ++n) {
        auto rn = std::get<translate_family>(G.cover_at(static_cast<int>(n)).family).radius;
        auto rn1 = std::get<translate_family>(G.cover_at(static_cast<int>(n) + 1).family).radius;
        require(2 * rn1 <= rn, "neighborhoods violate O' + O' ⊆ O");
    }

    std::size_t len = w.items.size();
    std::size_t rounds = (len - 1) / 2 + 1; // K_{2n} exists iff 2n < len
    if (len < 1 || rounds == 0) fail_input("chain too short for the lifting");

    abelian_lift_result res;
    res.witness.cls = gamma_route ? witness_class::gamma : witness_class::omega;
    res.witness.k = std::min<int>(3, static_cast<int>(g_probe.size()));
    res.witness.f = 0;
    for (std::size_t n = 0; n < rounds; ++n) {
        certificate c;
        c.cover_index = static_cast<int>(n);
        for (const auto& z : chain.sets[2 * n]) c.members.push_back(member_ref::by_center(z));
        res.witness.items.push_back(std::move(c));
    }

    if (gamma_route) {
        // computed tail: first round from which every probe point stays inside
        auto fam = witness_family(G, res.witness);
        auto rows = incidence(fam, g_probe);
        int tail = 0;
        for (std::size_t i = 0; i < g_probe.size(); ++i) {
            int first_stable = static_cast<int>(rounds);
            for (int n = static_cast<int>(rounds); n-- > 0;) {
                if (!rows[static_cast<std::size_t>(n)][i]) break;
                first_stable = n;
            }
            if (first_stable >= static_cast<int>(rounds))
                fail_input("chain too short: probe point " + g_probe[i].str() +
                           " never enters the lifted tail");
            tail = std::max(tail, first_stable);
        }
        res.tail_start = tail;
        res.witness.m = tail;
    }
    return res;
}

} // namespace

abelian_lift_result lift_scheepers_to_abelian_group(const space& G, const witness_sequence& w,
                                                    const std::vector<point>& x_probe,
                                                    const std::vector<point>& g_probe) {
    return lift_to_abelian_group(G, w, x_probe, g_probe, false);
}

abelian_lift_result lift_hurewicz_to_abelian_group(const space& G, const witness_sequence& w,
                                                   const std::vector<point>& x_probe,
                                                   const std::vector<point>& g_probe) {
    return lift_to_abelian_group(G, w, x_probe, g_probe, true);
}

// ---------------------------------------------------------------------------
// Nonabelian lifting
// ---------------------------------------------------------------------------

space restrict_to_generators(const space& G) {
    require(G.group.has_value(), "generator restriction needs a group space");
    const auto& g = *G.group;
    std::vector<point> Z;
    for (const auto& x : g.generators) {
        Z.push_back(x);
        Z.push_back(group_inv(g, x));
    }
    std::sort(Z.begin(), Z.end());
    Z.erase(std::unique(Z.begin(), Z.end()), Z.end());
    return restrict_space(G, Z);
}

namespace {

struct theta_eval {
    std::vector<point> pts;     // A = Θ(history) as a subset of Z
    std::vector<point> centers; // minimal translate set K with A ⊆ U_r K
    std::int64_t max_center_len = 0;
};

class lifted_group_strategy final : public group_lift_strategy {
public:
    lifted_group_strategy(std::shared_ptr<const space> G, space Z, strategy_ptr theta, winning_lift_config cfg)
        : G_(std::move(G)), Z_(std::make_shared<const space>(std::move(Z))), theta_(std::move(theta)), cfg_(cfg) {
        const auto& g = *G_->group;
        abelian_ = g.abelian();
        // up-front radius budget: the smallest schedule radius must survive
        // the interleaved halvings
        std::int64_t need = (std::int64_t{1} << cfg_.horizon) * (1 + 2 * cfg_.max_center_word_len);
        std::int64_t rmin = std::numeric_limits<std::int64_t>::max();
        for (const auto& u : G_->covers) {
            require(std::holds_alternative<translate_family>(u.family), "lifting needs translate covers");
            require(std::get<translate_family>(u.family).s == side::right,
                    "lifting plays on the right-translate multicover");
            rmin = std::min(rmin, std::get<translate_family>(u.family).radius);
        }
        require(rmin >= need, "schedule radius budget violated: need r_min >= 2^L*(1+2*maxK) = " +
                                  std::to_string(need) + ", got " + std::to_string(rmin));
    }

    certificate respond(const space& sp, const cover_seq& history) const override {
        require(!history.empty(), "empty history");
        // certify the product set in the last real cover
        return greedy_group_certificate(sp, history.back().index, response_set(sp, history));
    }

    std::vector<point> response_set(const space& sp, const cover_seq& history) const override {
        require(!history.empty(), "empty history");
        int n = static_cast<int>(history.size());
        require(n <= cfg_.horizon, "history longer than the configured horizon");
        std::vector<std::int64_t> real_radii;
        for (const auto& h : history) {
            require(h.indexed(), "lifted strategy expects the multicover's own covers");
            const auto& u = sp.cover_at(h.index);
            real_radii.push_back(std::get<translate_family>(u.family).radius);
        }

        // per-call memo of Θ evaluations on virtual histories (radius lists)
        std::map<std::vector<std::int64_t>, theta_eval> memo;

        // q_0 = (u_0); q_{2k+1} = q_{2k} ⌢ w(q_{2k})|(2k+1); q_{2k+2} = q_{2k+1} ⌢ u_{k+1}
        std::vector<std::int64_t> q{real_radii[0]};
        for (int k = 0; k + 1 < n; ++k) {
            auto w = build_w(q, 2 * k + 1, memo);
            q.insert(q.end(), w.begin(), w.end());
            q.push_back(real_radii[static_cast<std::size_t>(k) + 1]);
        }

        // A_k(q) for k = 0, 2, ..., 2n-2 along w(q)
        auto wfull = build_w(q, 2 * n - 1, memo);
        const auto& g = *G_->group;
        std::vector<point> prod{group_identity(g)};
        std::vector<std::int64_t> hist = q;
        for (int k = 0; k < 2 * n - 1; ++k) {
            hist.push_back(wfull[static_cast<std::size_t>(k)]);
            if (k % 2 != 0) continue;
            const auto& ev = eval_theta(hist, memo);
            std::unordered_set<point, point_hash> next;
            for (const auto& p : prod)
                for (const auto& a : ev.pts) next.insert(group_mul(g, p, a));
            prod.assign(next.begin(), next.end());
            std::sort(prod.begin(), prod.end());
        }
        return prod;
    }

    std::string describe() const override { return "group-lift(" + theta_->describe() + ")"; }

private:
    // w(s)_0 .. w(s)_{count-1} for the virtual history s (radius list),
    // maintaining the Θ bookkeeping that fixes each next radius.
    std::vector<std::int64_t> build_w(const std::vector<std::int64_t>& s, int count,
                                      std::map<std::vector<std::int64_t>, theta_eval>& memo) const {
        std::vector<std::int64_t> w;
        if (count <= 0) return w;
        std::vector<std::int64_t> hist = s;
        std::int64_t u_radius = s.back();
        std::int64_t r = u_radius / 2; // U ⊇ U_0 U_0
        w.push_back(r);
        hist.push_back(r);
        auto ev = eval_theta(hist, memo);
        for (int j = 1; j < count; ++j) {
            std::int64_t next = shrink(r, ev);
            w.push_back(next);
            hist.push_back(next);
            r = next;
            ev = eval_theta(hist, memo);
        }
        return w;
    }

    // U_{j+1} from U_j and the translate set K of A_j: U_{j+1}² ⊆ U_j and
    // z U_{j+1} z⁻¹ ⊆ U_j for z ∈ K.
    std::int64_t shrink(std::int64_t r, const theta_eval& ev) const {
        std::int64_t next = r / 2;
        if (!abelian_) {
            const auto& g = *G_->group;
            if (g.k == group_model::kind::free_group) {
                next = std::min(next, r - 2 * ev.max_center_len);
            } else if (g.k == group_model::kind::table) {
                // exact: largest radius whose conjugates stay inside U_r
                while (next > 0 && !conjugation_ok(next, r, ev.centers)) --next;
            }
        }
        return std::max<std::int64_t>(next, 0);
    }

    bool conjugation_ok(std::int64_t r_small, std::int64_t r_big, const std::vector<point>& K) const {
        const auto& g = *G_->group;
        for (const auto& z : K)
            for (const auto& u : G_->universe()) {
                if (group_word_length(g, u) > r_small) continue;
                auto conj = group_mul(g, group_mul(g, z, u), group_inv(g, z));
                if (group_word_length(g, conj) > r_big) return false;
            }
        return true;
    }

    const theta_eval& eval_theta(const std::vector<std::int64_t>& radii,
                                 std::map<std::vector<std::int64_t>, theta_eval>& memo) const {
        auto it = memo.find(radii);
        if (it != memo.end()) return it->second;
        cover_seq hist;
        for (auto r : radii) {
            cover c;
            c.label = "R-ball" + std::to_string(r) + "|Z";
            c.family = translate_family{side::right, r};
            c.restriction = std::get<finite_ground>(Z_->ground).points;
            hist.push_back(cover_handle::of_cover(std::move(c)));
        }
        certificate cert = theta_->respond(*Z_, hist);
        theta_eval ev;
        const auto& Zpts = std::get<finite_ground>(Z_->ground).points;
        const cover& last = *hist.back().ad_hoc;
        for (const auto& p : Zpts)
            if (certificate_contains(*Z_, last, cert, p)) ev.pts.push_back(p);
        ev.centers = minimal_centers(last, cert, ev.pts);
        const auto& g = *G_->group;
        for (const auto& z : ev.centers) {
            std::int64_t l = group_word_length(g, z);
            ev.max_center_len = std::max(ev.max_center_len, l);
            require(l <= cfg_.max_center_word_len,
                    "condition (iii) data violated: certificate center exceeds the declared word length");
        }
        return memo.emplace(radii, std::move(ev)).first->second;
    }

    // minimal subset of the certificate's centers still covering A, lex ties
    std::vector<point> minimal_centers(const cover& u, const certificate& cert,
                                       const std::vector<point>& A) const {
        std::vector<point> centers;
        for (const auto& m : cert.members) {
            require(m.t == member_ref::tag::center, "restricted strategy must emit translate centers");
            centers.push_back(m.center);
        }
        std::sort(centers.begin(), centers.end());
        centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
        if (A.empty()) return {};
        // exhaustive by size (center counts are tiny on restricted spaces)
        std::vector<std::vector<bool>> covers_pt(centers.size(), std::vector<bool>(A.size(), false));
        for (std::size_t i = 0; i < centers.size(); ++i)
            for (std::size_t j = 0; j < A.size(); ++j)
                covers_pt[i][j] = member_contains(*Z_, u, member_ref::by_center(centers[i]), A[j]);
        std::vector<int> chosen;
        std::function<bool(std::size_t, std::size_t, std::vector<bool>&)> rec =
            [&](std::size_t start, std::size_t left, std::vector<bool>& covered) -> bool {
            if (std::all_of(covered.begin(), covered.end(), [](bool b) { return b; })) return true;
            if (left == 0) return false;
            for (std::size_t i = start; i < centers.size(); ++i) {
                auto saved = covered;
                for (std::size_t j = 0; j < A.size(); ++j)
                    if (covers_pt[i][j]) covered[j] = true;
                chosen.push_back(static_cast<int>(i));
                if (rec(i + 1, left - 1, covered)) return true;
                chosen.pop_back();
                covered = saved;
            }
            return false;
        };
        for (std::size_t size = 1; size <= centers.size(); ++size) {
            chosen.clear();
            std::vector<bool> covered(A.size(), false);
            if (rec(0, size, covered)) {
                std::vector<point> out;
                for (int i : chosen) out.push_back(centers[static_cast<std::size_t>(i)]);
                return out;
            }
        }
        fail_input("certificate does not cover its own response set");
    }

    certificate greedy_group_certificate(const space& sp, int cover_index, const std::vector<point>& P) const {
        const auto& g = *G_->group;
        std::int64_t r = std::get<translate_family>(sp.cover_at(cover_index).family).radius;
        std::vector<point> pts = P;
        std::sort(pts.begin(), pts.end(), [&](const point& a, const point& b) {
            auto la = group_word_length(g, a), lb = group_word_length(g, b);
            if (la != lb) return la > lb;
            return a < b;
        });
        certificate cert;
        cert.cover_index = cover_index;
        std::vector<bool> covered(pts.size(), false);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (covered[i]) continue;
            cert.members.push_back(member_ref::by_center(pts[i]));
            auto inv_c = group_inv(g, pts[i]);
            for (std::size_t j = i; j < pts.size(); ++j)
                if (!covered[j] && group_word_length(g, group_mul(g, pts[j], inv_c)) <= r) covered[j] = true;
        }
        normalize_members(cert.members);
        return cert;
    }

    std::shared_ptr<const space> G_;
    std::shared_ptr<const space> Z_;
    strategy_ptr theta_;
    winning_lift_config cfg_;
    bool abelian_ = false;
};

} // namespace

std::shared_ptr<const group_lift_strategy> lift_winning_to_group(std::shared_ptr<const space> G,
                                                                 strategy_ptr theta_restricted,
                                                                 const winning_lift_config& cfg) {
    require(G && G->group.has_value(), "lifting needs a group space");
    require(theta_restricted != nullptr, "null strategy");
    space Z = restrict_to_generators(*G);
    return std::make_shared<lifted_group_strategy>(std::move(G), std::move(Z), std::move(theta_restricted), cfg);
}

} // namespace cbg
