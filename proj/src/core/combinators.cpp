#include "combinators.hpp"

#include <algorithm>

#include "err.hpp"

namespace cbg {

std::vector<set_pred> witness_family(const space& sp, const witness_sequence& w) {
    std::vector<set_pred> fam;
    for (const auto& c : w.items) fam.push_back(pred_of_certificate(sp, c));
    return fam;
}

bool witness_holds(const space& sp, const witness_sequence& w, const std::vector<point>& probe) {
    auto fam = witness_family(sp, w);
    switch (w.cls) {
    case witness_class::cover: return is_cover(fam, probe);
    case witness_class::omega: return is_omega_cover(fam, probe, w.k);
    case witness_class::gamma: return is_gamma_cover(fam, probe, w.m, w.f);
    default: return is_proper_omega_cover(fam, probe, w.k, w.t);
    }
}

// ---------------------------------------------------------------------------
// Strategy combinators
// ---------------------------------------------------------------------------

namespace {

int handle_cover_index(const cover_handle& h) { return h.indexed() ? h.index : -1; }

class union_strategy_t final : public strategy {
public:
    explicit union_strategy_t(std::vector<strategy_ptr> pieces) : pieces_(std::move(pieces)) {
        require(!pieces_.empty(), "union of zero strategies");
    }

    certificate respond(const space& sp, const cover_seq& history) const override {
        require(!history.empty(), "empty history");
        std::size_t n = history.size() - 1;
        certificate out;
        out.cover_index = handle_cover_index(history.back());
        for (std::size_t k = 0; k <= n && k < pieces_.size(); ++k) {
            cover_seq shifted(history.begin() + static_cast<std::ptrdiff_t>(k), history.end());
            certificate c = pieces_[k]->respond(sp, shifted);
            for (auto& m : c.members) out.members.push_back(std::move(m));
        }
        normalize_members(out.members);
        return out;
    }

    std::vector<budget> declared_budgets(int horizon) const override {
        std::vector<budget> out(static_cast<std::size_t>(horizon));
        for (int nr = 0; nr < horizon; ++nr) {
            std::int64_t total = 0;
            bool bounded = true;
            for (std::size_t k = 0; k <= static_cast<std::size_t>(nr) && k < pieces_.size(); ++k) {
                auto piece = pieces_[k]->declared_budgets(horizon - static_cast<int>(k));
                const auto& b = piece[static_cast<std::size_t>(nr) - k];
                if (!b) {
                    bounded = false;
                    break;
                }
                total += *b;
            }
            out[static_cast<std::size_t>(nr)] = bounded ? budget(total) : budget{};
        }
        return out;
    }

    std::string describe() const override { return "union(" + std::to_string(pieces_.size()) + ")"; }

private:
    std::vector<strategy_ptr> pieces_;
};

class gamma_upgrade_t final : public strategy {
public:
    gamma_upgrade_t(strategy_ptr base, int cap) : base_(std::move(base)), cap_(cap) {}

    certificate respond(const space& sp, const cover_seq& history) const override {
        require(!history.empty(), "empty history");
        int n = static_cast<int>(history.size()) - 1;
        require(n <= cap_, "gamma upgrade rejects histories beyond its horizon cap (exponential certificates)");
        certificate out;
        out.cover_index = handle_cover_index(history.back());

        // all subsets of {0..n-1}, each extended by index n
        bool memoizable = std::all_of(history.begin(), history.end(),
                                      [](const cover_handle& h) { return h.indexed(); });
        std::map<std::vector<int>, certificate> memo;
        for (std::uint64_t mask = 0;; ++mask) {
            cover_seq sub;
            std::vector<int> key;
            for (int i = 0; i < n; ++i)
                if (mask & (1ull << i)) {
                    sub.push_back(history[static_cast<std::size_t>(i)]);
                    if (memoizable) key.push_back(history[static_cast<std::size_t>(i)].index);
                }
            sub.push_back(history.back());
            if (memoizable) key.push_back(history.back().index);
            const certificate* c = nullptr;
            certificate local;
            if (memoizable) {
                auto it = memo.find(key);
                if (it == memo.end()) it = memo.emplace(key, base_->respond(sp, sub)).first;
                c = &it->second;
            } else {
                local = base_->respond(sp, sub);
                c = &local;
            }
            for (const auto& m : c->members) out.members.push_back(m);
            if (mask + 1 >= (1ull << n)) break;
        }
        normalize_members(out.members);
        return out;
    }

    std::vector<budget> declared_budgets(int horizon) const override {
        auto base = base_->declared_budgets(horizon);
        std::vector<budget> out(static_cast<std::size_t>(horizon));
        for (int nr = 0; nr < horizon; ++nr) {
            std::int64_t worst = 0;
            bool bounded = true;
            for (int j = 0; j <= nr && bounded; ++j) {
                if (!base[static_cast<std::size_t>(j)])
                    bounded = false;
                else
                    worst = std::max(worst, *base[static_cast<std::size_t>(j)]);
            }
            out[static_cast<std::size_t>(nr)] = bounded ? budget((std::int64_t{1} << nr) * worst) : budget{};
        }
        return out;
    }

    std::string describe() const override { return "gamma-upgrade(" + base_->describe() + ")"; }

private:
    strategy_ptr base_;
    int cap_;
};

class product_strategy_t final : public strategy {
public:
    product_strategy_t(strategy_ptr l, strategy_ptr r) : left_(std::move(l)), right_(std::move(r)) {}

    certificate respond(const space& sp, const cover_seq& history) const override {
        require(sp.product.has_value(), "product strategy needs a product multicover");
        const auto& lsp = *sp.product->left;
        const auto& rsp = *sp.product->right;
        int nb = static_cast<int>(rsp.covers.size());
        cover_seq lh, rh;
        for (const auto& h : history) {
            const cover& c = h.get(sp);
            const auto* pf = std::get_if<product_family>(&c.family);
            require(pf != nullptr, "product strategy saw a non-product cover");
            if (h.indexed()) {
                require(h.index == pf->left_cover * nb + pf->right_cover, "product cover index mismatch");
            }
            lh.push_back(cover_handle::of_index(pf->left_cover));
            rh.push_back(cover_handle::of_index(pf->right_cover));
        }
        certificate cl = left_->respond(lsp, lh);
        certificate cr = right_->respond(rsp, rh);
        certificate out;
        out.cover_index = handle_cover_index(history.back());
        for (const auto& lm : cl.members)
            for (const auto& rm : cr.members) out.members.push_back(member_ref::by_pair(lm, rm));
        normalize_members(out.members);
        return out;
    }

    std::vector<budget> declared_budgets(int horizon) const override {
        auto lb = left_->declared_budgets(horizon);
        auto rb = right_->declared_budgets(horizon);
        std::vector<budget> out(static_cast<std::size_t>(horizon));
        for (int nr = 0; nr < horizon; ++nr) {
            const auto& a = lb[static_cast<std::size_t>(nr)];
            const auto& b = rb[static_cast<std::size_t>(nr)];
            out[static_cast<std::size_t>(nr)] = (a && b) ? budget(*a * *b) : budget{};
        }
        return out;
    }

    std::string describe() const override {
        return "product(" + left_->describe() + "," + right_->describe() + ")";
    }

private:
    strategy_ptr left_;
    strategy_ptr right_;
};

class pullback_strategy_t final : public strategy {
public:
    pullback_strategy_t(std::shared_ptr<const space> target, space_map f, strategy_ptr base)
        : target_(std::move(target)), map_(std::move(f)), base_(std::move(base)) {
        require(map_.k == space_map::kind::perfect, "pullback needs a perfect map");
    }

    certificate respond(const space& sp, const cover_seq& history) const override {
        cover_seq th;
        for (const auto& h : history) {
            require(h.indexed(), "pullback strategy needs indexed covers");
            th.push_back(cover_handle::of_index(map_.assign[static_cast<std::size_t>(h.index)]));
        }
        certificate cy = base_->respond(*target_, th);
        return pull_certificate(sp, *target_, map_, history.back().index, cy);
    }

    std::string describe() const override { return "pullback(" + base_->describe() + ")"; }

private:
    std::shared_ptr<const space> target_;
    space_map map_;
    strategy_ptr base_;
};

} // namespace

strategy_ptr union_strategy(std::vector<strategy_ptr> pieces) {
    return std::make_shared<union_strategy_t>(std::move(pieces));
}

strategy_ptr gamma_upgrade(strategy_ptr base, int horizon_cap) {
    require(base != nullptr, "null strategy");
    // the upgrade of a constant-full strategy is itself: every subsequence
    // contributes the same full certificate
    if (base->constant_full()) return base;
    return std::make_shared<gamma_upgrade_t>(std::move(base), horizon_cap);
}

strategy_ptr product_strategy(strategy_ptr left, strategy_ptr right) {
    require(left && right, "null strategy");
    return std::make_shared<product_strategy_t>(std::move(left), std::move(right));
}

strategy_ptr pullback_strategy(std::shared_ptr<const space> target, space_map f, strategy_ptr theta_y) {
    require(theta_y != nullptr, "null strategy");
    return std::make_shared<pullback_strategy_t>(std::move(target), std::move(f), std::move(theta_y));
}

// ---------------------------------------------------------------------------
// Witness transformations
// ---------------------------------------------------------------------------

witness_sequence pushforward_witness(const space& source, const space& target, const space_map& f,
                                     const witness_sequence& w, const std::vector<point>& target_probe) {
    require(f.k == space_map::kind::uniformly_bounded, "pushforward needs a uniformly bounded map");
    witness_sequence out = w;
    out.items.clear();
    for (const auto& c : w.items) {
        // find the target cover whose assignment is this item's source cover
        int v = -1;
        for (std::size_t i = 0; i < f.assign.size(); ++i)
            if (f.assign[i] == c.cover_index) {
                v = static_cast<int>(i);
                break;
            }
        require(v >= 0, "no target cover assigned to source cover " + std::to_string(c.cover_index));
        out.items.push_back(push_certificate(source, target, f, v, c));
    }
    // class survives only when the map is onto the probe
    auto scope = source.finite() ? source.universe() : source.default_probe();
    auto img = map_image(f, scope);
    bool onto = std::all_of(target_probe.begin(), target_probe.end(), [&](const point& p) {
        return std::binary_search(img.begin(), img.end(), p);
    });
    if (!onto && w.cls != witness_class::cover) {
        out.cls = witness_class::cover;
        out.note = "class downgraded: map is not onto the target probe";
    }
    return out;
}

witness_sequence scheepers_from_menger_powers(const space& sp, const std::vector<std::vector<certificate>>& stacks,
                                              const std::vector<point>& probe) {
    require(!stacks.empty(), "no power witnesses");
    std::size_t rounds = 0;
    for (const auto& s : stacks) rounds = std::max(rounds, s.size());
    require(rounds > 0, "empty power witnesses");

    // precondition: stack for power n covers the n-th power probe, i.e. its
    // unions engulf every <= n-subset of the probe
    for (std::size_t i = 0; i < stacks.size(); ++i) {
        int n = static_cast<int>(i) + 1;
        std::vector<set_pred> fam;
        for (const auto& c : stacks[i])
            if (c.cover_index >= 0) fam.push_back(pred_of_certificate(sp, c));
        require(is_omega_cover(fam, probe, std::min<int>(n, static_cast<int>(probe.size()))),
                "power witness " + std::to_string(n) + " does not cover the power probe");
    }

    witness_sequence out;
    out.cls = witness_class::omega;
    out.k = std::min<int>(static_cast<int>(stacks.size()), static_cast<int>(probe.size()));
    for (std::size_t r = 0; r < rounds; ++r) {
        certificate merged;
        merged.cover_index = -2; // filled below
        for (std::size_t i = 0; i < stacks.size() && i <= r; ++i) {
            if (r >= stacks[i].size()) continue;
            const auto& c = stacks[i][r];
            if (c.members.empty() && c.cover_index < 0) continue;
            if (merged.cover_index == -2)
                merged.cover_index = c.cover_index;
            else
                require(merged.cover_index == c.cover_index,
                        "stacked certificates disagree on the round cover");
            for (const auto& m : c.members) merged.members.push_back(m);
        }
        require(merged.cover_index != -2, "round " + std::to_string(r) + " has no certificates");
        normalize_members(merged.members);
        out.items.push_back(std::move(merged));
    }
    return out;
}

power_witness menger_power_from_scheepers(const space& sp, const witness_sequence& w, int n,
                                          const std::vector<std::vector<int>>& round_factors, int search_bound) {
    require(n >= 1, "power must be positive");
    require(w.cls == witness_class::omega, "input must be an omega witness");
    require(round_factors.size() == w.items.size(), "one factor tuple per witness round required");
    power_witness out;
    out.n = n;
    for (std::size_t r = 0; r < w.items.size(); ++r) {
        const auto& c = w.items[r];
        require(static_cast<int>(round_factors[r].size()) == n, "factor tuple arity mismatch");
        // the witness's round cover must ≺-dominate every factor cover; the
        // transfer below realizes the domination by re-bounding the union
        std::vector<point> pts;
        const auto& u = sp.cover_at(c.cover_index);
        for (const auto& m : c.members) {
            auto mp = enumerate_member(sp, u, m);
            require(mp.has_value(), "witness member not enumerable");
            pts.insert(pts.end(), mp->begin(), mp->end());
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        std::vector<certificate> factors;
        for (int i = 0; i < n; ++i) {
            int ui = round_factors[r][static_cast<std::size_t>(i)];
            auto fc = bounded_by(sp, ui, pts, budget(search_bound));
            require(fc.has_value(), "missing centered upper-bound structure: round " + std::to_string(r) +
                                        " union is not bounded in factor cover " + std::to_string(ui));
            factors.push_back(std::move(*fc));
        }
        out.factor_certs.push_back(std::move(factors));
    }
    return out;
}

witness_sequence proper_omega_from_scheepers(const space& sp, const std::vector<std::vector<certificate>>& stacks,
                                             const std::vector<point>& probe, int k_sets, int t) {
    require(!stacks.empty(), "no stacked witnesses");
    int t_eff = t;
    witness_sequence out;
    if (static_cast<int>(stacks.size()) < t) {
        t_eff = static_cast<int>(stacks.size());
        out.note = "t reduced to " + std::to_string(t_eff) + ": fewer stacks than requested occurrences";
    }
    // precondition: every stack is an omega witness on the probe
    for (const auto& s : stacks) {
        std::vector<set_pred> fam;
        for (const auto& c : s)
            if (c.cover_index >= 0) fam.push_back(pred_of_certificate(sp, c));
        require(is_omega_cover(fam, probe, std::min<int>(k_sets, static_cast<int>(probe.size()))),
                "a stacked family is not an omega witness on the probe");
    }
    std::size_t rounds = 0;
    for (std::size_t k = 0; k < stacks.size(); ++k) rounds = std::max(rounds, k + stacks[k].size());
    out.cls = witness_class::proper_omega;
    out.k = std::min<int>(k_sets, static_cast<int>(probe.size()));
    out.t = t_eff;
    for (std::size_t r = 0; r < rounds; ++r) {
        certificate merged;
        merged.cover_index = -2;
        for (std::size_t k = 0; k < stacks.size() && k <= r; ++k) {
            std::size_t j = r - k;
            if (j >= stacks[k].size()) continue;
            const auto& c = stacks[k][j];
            if (merged.cover_index == -2)
                merged.cover_index = c.cover_index;
            else
                require(merged.cover_index == c.cover_index,
                        "stacked certificates disagree on the round cover");
            for (const auto& m : c.members) merged.members.push_back(m);
        }
        require(merged.cover_index != -2, "round " + std::to_string(r) + " has no certificates");
        normalize_members(merged.members);
        out.items.push_back(std::move(merged));
    }
    return out;
}

witness_sequence union_witnesses(const space& sp, const std::vector<std::vector<certificate>>& stacks,
                                 witness_class cls, int f) {
    require(cls == witness_class::cover || cls == witness_class::gamma,
            "union merging preserves cover and gamma witnesses");
    require(!stacks.empty(), "no stacked witnesses");
    std::size_t rounds = 0;
    for (std::size_t k = 0; k < stacks.size(); ++k) rounds = std::max(rounds, k + stacks[k].size());
    witness_sequence out;
    out.cls = cls;
    out.f = f;
    for (std::size_t r = 0; r < rounds; ++r) {
        certificate merged;
        merged.cover_index = -2;
        for (std::size_t k = 0; k < stacks.size() && k <= r; ++k) {
            std::size_t j = r - k;
            if (j >= stacks[k].size()) continue;
            const auto& c = stacks[k][j];
            if (merged.cover_index == -2)
                merged.cover_index = c.cover_index;
            else
                require(merged.cover_index == c.cover_index, "stacked certificates disagree on the round cover");
            for (const auto& m : c.members) merged.members.push_back(m);
        }
        require(merged.cover_index != -2, "round " + std::to_string(r) + " has no certificates");
        normalize_members(merged.members);
        out.items.push_back(std::move(merged));
    }
    if (cls == witness_class::gamma) {
        out.m = static_cast<int>(stacks.size()) - 1; // every piece active from its offset on
        require(out.m < static_cast<int>(out.items.size()), "gamma tail start beyond the merged length");
    }
    (void)sp;
    return out;
}

witness_sequence hurewicz_product_witness(const space& prod, const witness_sequence& a, const witness_sequence& b) {
    require(prod.product.has_value(), "needs a product space");
    require(a.cls == witness_class::gamma && b.cls == witness_class::gamma, "inputs must be gamma witnesses");
    witness_sequence out;
    out.cls = witness_class::gamma;
    out.f = a.f + b.f;
    out.m = std::max(a.m, b.m);
    std::size_t len = std::min(a.items.size(), b.items.size());
    if (a.items.size() != b.items.size()) out.note = "length mismatch: truncated to " + std::to_string(len);
    int nb = static_cast<int>(prod.product->right->covers.size());
    for (std::size_t r = 0; r < len; ++r) {
        certificate c;
        c.cover_index = a.items[r].cover_index * nb + b.items[r].cover_index;
        for (const auto& lm : a.items[r].members)
            for (const auto& rm : b.items[r].members) c.members.push_back(member_ref::by_pair(lm, rm));
        normalize_members(c.members);
        out.items.push_back(std::move(c));
    }
    require(out.m < static_cast<int>(out.items.size()), "tail start beyond the truncated length");
    return out;
}

// ---------------------------------------------------------------------------
// σ-bounded products
// ---------------------------------------------------------------------------

namespace {

// certificate of piece K in Y-cover v, the per-piece perfectness data
certificate piece_certificate(const space& y, int v, const std::vector<point>& piece) {
    auto c = bounded_by(y, v, piece, std::nullopt);
    require(c.has_value(),
            "missing perfectness data: a piece is not bounded in Y-cover " + std::to_string(v));
    return *c;
}

certificate pair_certs(const space&, int prod_cover, const certificate& cx, const certificate& cy) {
    certificate out;
    out.cover_index = prod_cover;
    for (const auto& lm : cx.members)
        for (const auto& rm : cy.members) out.members.push_back(member_ref::by_pair(lm, rm));
    normalize_members(out.members);
    return out;
}

} // namespace

witness_sequence sigma_bounded_product_witness(const space& prod, const witness_sequence& wx,
                                               const std::vector<int>& y_covers,
                                               const std::vector<std::vector<point>>& pieces) {
    require(prod.product.has_value(), "needs a product space");
    require(!pieces.empty(), "no pieces");
    require(wx.cls == witness_class::cover || wx.cls == witness_class::gamma,
            "piecewise pullback unions preserve cover and gamma witnesses");
    require(y_covers.size() == wx.items.size(), "one Y-cover per round required");
    const auto& y = *prod.product->right;
    int nb = static_cast<int>(y.covers.size());
    witness_sequence out;
    out.cls = wx.cls;
    out.f = wx.f;
    for (std::size_t r = 0; r < wx.items.size(); ++r) {
        std::size_t piece_idx = std::min(r, pieces.size() - 1);
        int v = y_covers[r];
        auto cy = piece_certificate(y, v, pieces[piece_idx]);
        out.items.push_back(pair_certs(prod, wx.items[r].cover_index * nb + v, wx.items[r], cy));
    }
    if (wx.cls == witness_class::gamma) {
        // the tail can start only once the pieces have grown past the probe's
        // Y-part; the caller's probe check will use this start
        out.m = std::max<int>(wx.m, static_cast<int>(pieces.size()) - 1);
        require(out.m < static_cast<int>(out.items.size()), "gamma tail start beyond witness length");
    }
    return out;
}

witness_sequence sigma_bounded_product_omega(const space& prod, const witness_sequence& wx_proper,
                                             const std::vector<int>& y_covers,
                                             const std::vector<std::vector<point>>& pieces) {
    require(prod.product.has_value(), "needs a product space");
    require(wx_proper.cls == witness_class::proper_omega, "the omega route needs a proper omega witness");
    require(y_covers.size() == wx_proper.items.size(), "one Y-cover per round required");
    require(!pieces.empty(), "no pieces");
    const auto& y = *prod.product->right;
    int nb = static_cast<int>(y.covers.size());
    witness_sequence out;
    out.cls = witness_class::omega;
    out.k = wx_proper.k;
    for (std::size_t r = 0; r < wx_proper.items.size(); ++r) {
        std::size_t piece_idx = std::min(r, pieces.size() - 1);
        int v = y_covers[r];
        auto cy = piece_certificate(y, v, pieces[piece_idx]);
        out.items.push_back(pair_certs(prod, wx_proper.items[r].cover_index * nb + v, wx_proper.items[r], cy));
    }
    return out;
}

namespace {

class sigma_piece_strategy final : public strategy {
public:
    sigma_piece_strategy(strategy_ptr theta_x, std::vector<point> piece)
        : theta_x_(std::move(theta_x)), piece_(std::move(piece)) {}

    certificate respond(const space& sp, const cover_seq& history) const override {
        require(sp.product.has_value(), "sigma piece strategy needs a product space");
        const auto& xsp = *sp.product->left;
        const auto& ysp = *sp.product->right;
        cover_seq xh;
        int v_last = -1;
        for (const auto& h : history) {
            const auto* pf = std::get_if<product_family>(&h.get(sp).family);
            require(pf != nullptr, "non-product cover in a sigma piece history");
            xh.push_back(cover_handle::of_index(pf->left_cover));
            v_last = pf->right_cover;
        }
        certificate cx = theta_x_->respond(xsp, xh);
        certificate cy = piece_certificate(ysp, v_last, piece_);
        return pair_certs(sp, handle_cover_index(history.back()), cx, cy);
    }

    std::string describe() const override { return "sigma-piece(" + theta_x_->describe() + ")"; }

private:
    strategy_ptr theta_x_;
    std::vector<point> piece_;
};

} // namespace

strategy_ptr sigma_bounded_product_strategy(strategy_ptr theta_x, const std::vector<std::vector<point>>& pieces) {
    require(!pieces.empty(), "no pieces");
    std::vector<strategy_ptr> parts;
    for (const auto& K : pieces) parts.push_back(std::make_shared<sigma_piece_strategy>(theta_x, K));
    return union_strategy(std::move(parts));
}

piece_decomposition totally_bounded_decomposition(const space& sp, const witness_sequence& w,
                                                  const std::vector<point>& probe) {
    require(w.cls == witness_class::gamma, "decomposition needs a gamma witness");
    require(w.f == 0, "decomposition rejects witnesses with a positive miss budget");
    require(!w.items.empty(), "empty witness");
    auto fam = witness_family(sp, w);
    auto rows = incidence(fam, probe);
    require(is_gamma_cover_rows(rows, w.m, 0), "input does not pass the gamma predicate on the probe");
    piece_decomposition out;
    std::size_t L = w.items.size();
    for (std::size_t n = 0; n < L; ++n) {
        std::vector<point> T;
        for (std::size_t i = 0; i < probe.size(); ++i) {
            bool in_all = true;
            for (std::size_t kk = n; kk < L && in_all; ++kk) in_all = rows[kk][i];
            if (in_all) T.push_back(probe[i]);
        }
        out.pieces.push_back(std::move(T));
    }
    // gamma with f = 0 puts every probe point in all unions from w.m on
    std::vector<point> covered;
    for (const auto& T : out.pieces) covered.insert(covered.end(), T.begin(), T.end());
    std::sort(covered.begin(), covered.end());
    for (const auto& p : probe)
        require(std::binary_search(covered.begin(), covered.end(), p),
                "decomposition pieces fail to cover the probe");
    return out;
}

} // namespace cbg
