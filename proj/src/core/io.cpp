#include "io.hpp"

#include <fstream>

#include "err.hpp"
#include "spaces.hpp"

namespace cbg {

json point_to_json(const point& p) {
    switch (p.v.index()) {
    case 0: return json(p.index());
    case 1: return json(p.vec());
    case 2: return json(p.word());
    default: {
        json arr = json::array();
        for (const auto& q : p.tuple()) arr.push_back(point_to_json(q));
        return json{{"pair", arr}};
    }
    }
}

point point_from_json(const json& j) {
    if (j.is_number_integer()) return point(j.get<std::int64_t>());
    if (j.is_string()) return point(j.get<std::string>());
    if (j.is_array()) {
        lattice_vec v;
        for (const auto& x : j) {
            require(x.is_number_integer(), "lattice point coordinates must be integers");
            v.push_back(x.get<std::int64_t>());
        }
        return point(std::move(v));
    }
    if (j.is_object() && j.contains("pair")) {
        const auto& arr = j.at("pair");
        require(arr.is_array() && arr.size() == 2, "pair points have two components");
        return point::pair(point_from_json(arr[0]), point_from_json(arr[1]));
    }
    fail_input("bad point: " + j.dump());
}

json member_ref_to_json(const member_ref& m) {
    switch (m.t) {
    case member_ref::tag::index: return json(m.index);
    case member_ref::tag::center: return json{{"center", point_to_json(m.center)}};
    default: return json{{"pair", json::array({member_ref_to_json(m.parts[0]), member_ref_to_json(m.parts[1])})}};
    }
}

member_ref member_ref_from_json(const json& j) {
    if (j.is_number_integer()) return member_ref::by_index(j.get<int>());
    require(j.is_object(), "bad member reference: " + j.dump());
    if (j.contains("center")) return member_ref::by_center(point_from_json(j.at("center")));
    if (j.contains("pair")) {
        const auto& arr = j.at("pair");
        require(arr.is_array() && arr.size() == 2, "pair member needs two parts");
        return member_ref::by_pair(member_ref_from_json(arr[0]), member_ref_from_json(arr[1]));
    }
    fail_input("bad member reference: " + j.dump());
}

json certificate_to_json(const certificate& c) {
    json ms = json::array();
    for (const auto& m : c.members) ms.push_back(member_ref_to_json(m));
    return json{{"cover", c.cover_index}, {"members", ms}};
}

certificate certificate_from_json(const json& j) {
    certificate c;
    c.cover_index = j.at("cover").get<int>();
    for (const auto& m : j.at("members")) c.members.push_back(member_ref_from_json(m));
    return c;
}

namespace {

json rat_to_json(const rat& r) { return json(r.str()); }

rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return rat(j.get<std::int64_t>());
    require(j.is_string(), "rationals are integers or \"p/q\" strings");
    return rat::parse(j.get<std::string>());
}

json cover_member_to_json(const cover_member& cm) {
    if (const auto* es = std::get_if<explicit_set>(&cm)) {
        json pts = json::array();
        for (const auto& p : es->points) pts.push_back(point_to_json(p));
        return json{{"set", pts}};
    }
    if (const auto* mb = std::get_if<metric_ball>(&cm))
        return json{{"metric-ball", {{"center", point_to_json(mb->center)}, {"radius", rat_to_json(mb->radius)}}}};
    const auto& gb = std::get<group_ball>(cm);
    return json{{"group-ball",
                 {{"side", side_name(gb.s)}, {"center", point_to_json(gb.center)}, {"radius", gb.radius}}}};
}

cover_member cover_member_from_json(const json& j) {
    require(j.is_object(), "bad cover member: " + j.dump());
    if (j.contains("set")) {
        explicit_set es;
        for (const auto& p : j.at("set")) es.points.push_back(point_from_json(p));
        std::sort(es.points.begin(), es.points.end());
        es.points.erase(std::unique(es.points.begin(), es.points.end()), es.points.end());
        return es;
    }
    if (j.contains("metric-ball")) {
        const auto& b = j.at("metric-ball");
        return metric_ball{point_from_json(b.at("center")), rat_from_json(b.at("radius"))};
    }
    if (j.contains("group-ball")) {
        const auto& b = j.at("group-ball");
        return group_ball{side_parse(b.at("side").get<std::string>()), point_from_json(b.at("center")),
                          b.at("radius").get<std::int64_t>()};
    }
    fail_input("bad cover member: " + j.dump());
}

json cover_to_json(const cover& c) {
    json out{{"label", c.label}};
    switch (c.family.index()) {
    case 0: {
        json ms = json::array();
        for (const auto& m : std::get<explicit_family>(c.family).members) ms.push_back(cover_member_to_json(m));
        out["members"] = ms;
        break;
    }
    case 1:
        out["ball-radius"] = rat_to_json(std::get<ball_family>(c.family).radius);
        break;
    case 2: {
        const auto& tf = std::get<translate_family>(c.family);
        out["translate"] = json{{"side", side_name(tf.s)}, {"radius", tf.radius}};
        break;
    }
    default: {
        const auto& pf = std::get<product_family>(c.family);
        out["product"] = json::array({pf.left_cover, pf.right_cover});
        break;
    }
    }
    if (c.restriction) {
        json pts = json::array();
        for (const auto& p : *c.restriction) pts.push_back(point_to_json(p));
        out["restriction"] = pts;
    }
    return out;
}

cover cover_from_json(const json& j) {
    cover c;
    c.label = j.value("label", "");
    if (j.contains("members")) {
        explicit_family fam;
        for (const auto& m : j.at("members")) fam.members.push_back(cover_member_from_json(m));
        c.family = std::move(fam);
    } else if (j.contains("ball-radius")) {
        c.family = ball_family{rat_from_json(j.at("ball-radius"))};
    } else if (j.contains("translate")) {
        const auto& t = j.at("translate");
        c.family = translate_family{side_parse(t.at("side").get<std::string>()), t.at("radius").get<std::int64_t>()};
    } else if (j.contains("product")) {
        c.family = product_family{j.at("product")[0].get<int>(), j.at("product")[1].get<int>()};
    } else {
        fail_input("cover needs members, ball-radius, translate or product: " + j.dump());
    }
    if (j.contains("restriction")) {
        std::vector<point> pts;
        for (const auto& p : j.at("restriction")) pts.push_back(point_from_json(p));
        std::sort(pts.begin(), pts.end());
        c.restriction = std::move(pts);
    }
    return c;
}

} // namespace

json space_to_json(const space& sp) {
    json out{{"name", sp.name}};
    if (const auto* f = std::get_if<finite_ground>(&sp.ground)) {
        json pts = json::array();
        for (const auto& p : f->points) pts.push_back(point_to_json(p));
        out["ground"] = json{{"type", "finite"}, {"points", pts}};
    } else if (const auto* l = std::get_if<lattice_ground>(&sp.ground)) {
        out["ground"] = json{{"type", "lattice"}, {"dim", l->dim}};
    } else if (const auto* fg = std::get_if<free_group_ground>(&sp.ground)) {
        out["ground"] = json{{"type", "free-group"}, {"rank", fg->rank}};
    } else {
        out["ground"] = json{{"type", "product"}};
        out["left"] = space_to_json(*sp.product->left);
        out["right"] = space_to_json(*sp.product->right);
    }
    if (sp.metric) {
        json rows = json::array();
        for (const auto& r : sp.metric->dist) {
            json row = json::array();
            for (const auto& d : r) row.push_back(rat_to_json(d));
            rows.push_back(row);
        }
        out["metric"] = rows;
    }
    if (sp.group) {
        const auto& g = *sp.group;
        json gj;
        if (g.k == group_model::kind::table) {
            gj["type"] = "table";
            gj["mul"] = g.mul;
            json gens = json::array();
            for (const auto& x : g.generators) gens.push_back(point_to_json(x));
            gj["generators"] = gens;
        } else if (g.k == group_model::kind::lattice) {
            gj["type"] = "lattice";
            gj["dim"] = g.lattice_dim;
        } else {
            gj["type"] = "free-group";
            gj["rank"] = g.free_rank;
        }
        out["group"] = gj;
    }
    json cs = json::array();
    for (const auto& c : sp.covers) cs.push_back(cover_to_json(c));
    out["covers"] = cs;
    if (!sp.centered_witness.empty()) {
        json w = json::array();
        for (const auto& [ij, k] : sp.centered_witness) w.push_back(json::array({ij.first, ij.second, k}));
        out["centered-witness"] = w;
    }
    if (!sp.probes.empty()) {
        json ps = json::array();
        for (const auto& pr : sp.probes) {
            json pts = json::array();
            for (const auto& p : pr) pts.push_back(point_to_json(p));
            ps.push_back(pts);
        }
        out["probes"] = ps;
    }
    return out;
}

space space_from_json(const json& j) {
    space sp;
    sp.name = j.value("name", "space");
    const auto& g = j.at("ground");
    std::string type = g.at("type").get<std::string>();
    if (type == "finite") {
        finite_ground fg;
        for (const auto& p : g.at("points")) fg.points.push_back(point_from_json(p));
        std::sort(fg.points.begin(), fg.points.end());
        sp.ground = std::move(fg);
    } else if (type == "lattice") {
        sp.ground = lattice_ground{g.at("dim").get<int>()};
    } else if (type == "free-group") {
        sp.ground = free_group_ground{g.at("rank").get<int>()};
    } else if (type == "product") {
        auto left = std::make_shared<space>(space_from_json(j.at("left")));
        auto right = std::make_shared<space>(space_from_json(j.at("right")));
        space prod = product_space(left, right);
        if (j.contains("covers")) {
            prod.covers.clear();
            for (const auto& c : j.at("covers")) prod.covers.push_back(cover_from_json(c));
        }
        validate_space(prod);
        return prod;
    } else {
        fail_input("unknown ground type: " + type);
    }
    if (j.contains("metric")) {
        metric_model mm;
        for (const auto& row : j.at("metric")) {
            std::vector<rat> r;
            for (const auto& d : row) r.push_back(rat_from_json(d));
            mm.dist.push_back(std::move(r));
        }
        sp.metric = std::move(mm);
    }
    if (j.contains("group")) {
        const auto& gj = j.at("group");
        std::string gt = gj.at("type").get<std::string>();
        if (gt == "table") {
            std::vector<std::vector<int>> mul = gj.at("mul").get<std::vector<std::vector<int>>>();
            std::vector<std::int64_t> gens;
            for (const auto& x : gj.at("generators")) gens.push_back(point_from_json(x).index());
            // reuse the table constructor for identity/inverse/BFS bookkeeping
            neighborhood_schedule dummy{{0}};
            space tmp = make_table_group_space(std::move(mul), gens, dummy, side::right, sp.name);
            sp.group = tmp.group;
        } else if (gt == "lattice") {
            group_model gm;
            gm.k = group_model::kind::lattice;
            gm.lattice_dim = gj.at("dim").get<int>();
            for (int i = 0; i < gm.lattice_dim; ++i) {
                lattice_vec e(static_cast<std::size_t>(gm.lattice_dim), 0);
                e[static_cast<std::size_t>(i)] = 1;
                gm.generators.emplace_back(e);
            }
            sp.group = std::move(gm);
        } else if (gt == "free-group") {
            group_model gm;
            gm.k = group_model::kind::free_group;
            gm.free_rank = gj.at("rank").get<int>();
            for (int i = 0; i < gm.free_rank; ++i)
                gm.generators.emplace_back(std::string(1, static_cast<char>('a' + i)));
            sp.group = std::move(gm);
        } else {
            fail_input("unknown group type: " + gt);
        }
    }
    for (const auto& c : j.at("covers")) sp.covers.push_back(cover_from_json(c));
    if (j.contains("centered-witness"))
        for (const auto& w : j.at("centered-witness"))
            sp.centered_witness[{w[0].get<int>(), w[1].get<int>()}] = w[2].get<int>();
    if (j.contains("probes"))
        for (const auto& pr : j.at("probes")) {
            std::vector<point> pts;
            for (const auto& p : pr) pts.push_back(point_from_json(p));
            sp.probes.push_back(std::move(pts));
        }
    validate_space(sp);
    return sp;
}

json config_to_json(const game_config& cfg) {
    json b = json::array();
    for (const auto& x : cfg.budgets) b.push_back(x ? json(*x) : json("unbounded"));
    json w;
    if (const auto* c = std::get_if<win_cover>(&cfg.win)) {
        w = json{{"type", "cover"}};
        json pts = json::array();
        for (const auto& p : c->probe) pts.push_back(point_to_json(p));
        w["probe"] = pts;
    } else if (const auto* o = std::get_if<win_omega>(&cfg.win)) {
        w = json{{"type", "omega"}, {"k", o->k}};
        json pts = json::array();
        for (const auto& p : o->probe) pts.push_back(point_to_json(p));
        w["probe"] = pts;
    } else {
        const auto& gm = std::get<win_gamma>(cfg.win);
        w = json{{"type", "gamma"}, {"m", gm.m}, {"f", gm.f}};
        json pts = json::array();
        for (const auto& p : gm.probe) pts.push_back(point_to_json(p));
        w["probe"] = pts;
    }
    return json{{"horizon", cfg.horizon}, {"budgets", b}, {"win", w}, {"memo-cap", cfg.memo_cap}};
}

game_config config_from_json(const json& j, const space& sp) {
    game_config cfg;
    cfg.horizon = j.at("horizon").get<int>();
    require(cfg.horizon >= 1, "horizon must be positive");
    if (!j.contains("budgets")) {
        cfg.budgets.assign(static_cast<std::size_t>(cfg.horizon), budget{});
    } else if (j.at("budgets").is_number_integer()) {
        cfg.budgets.assign(static_cast<std::size_t>(cfg.horizon), budget(j.at("budgets").get<std::int64_t>()));
    } else if (j.at("budgets").is_string()) {
        require(j.at("budgets").get<std::string>() == "unbounded", "budgets: integer, list, or \"unbounded\"");
        cfg.budgets.assign(static_cast<std::size_t>(cfg.horizon), budget{});
    } else {
        for (const auto& b : j.at("budgets"))
            cfg.budgets.push_back(b.is_string() ? budget{} : budget(b.get<std::int64_t>()));
    }
    auto probe_of = [&](const json& w) -> std::vector<point> {
        if (!w.contains("probe")) return sp.default_probe();
        std::vector<point> pts;
        for (const auto& p : w.at("probe")) pts.push_back(point_from_json(p));
        return pts;
    };
    json w = j.value("win", json{{"type", "cover"}});
    std::string type = w.value("type", "cover");
    if (type == "cover") {
        cfg.win = win_cover{probe_of(w)};
    } else if (type == "omega") {
        cfg.win = win_omega{w.value("k", 2), probe_of(w)};
    } else if (type == "gamma") {
        cfg.win = win_gamma{w.value("m", 0), w.value("f", 0), probe_of(w)};
    } else {
        fail_input("unknown win condition: " + type);
    }
    cfg.memo_cap = j.value("memo-cap", std::int64_t{1} << 22);
    cfg.validate(sp);
    return cfg;
}

json witness_to_json(const witness_sequence& w) {
    json items = json::array();
    for (const auto& c : w.items) items.push_back(certificate_to_json(c));
    const char* cls = w.cls == witness_class::cover    ? "cover"
                      : w.cls == witness_class::omega  ? "omega"
                      : w.cls == witness_class::gamma ? "gamma"
                                                      : "proper-omega";
    json out{{"class", cls}, {"items", items}, {"k", w.k}, {"t", w.t}, {"m", w.m}, {"f", w.f}};
    if (!w.note.empty()) out["note"] = w.note;
    return out;
}

witness_sequence witness_from_json(const json& j) {
    witness_sequence w;
    std::string cls = j.value("class", "cover");
    if (cls == "cover")
        w.cls = witness_class::cover;
    else if (cls == "omega")
        w.cls = witness_class::omega;
    else if (cls == "gamma")
        w.cls = witness_class::gamma;
    else if (cls == "proper-omega")
        w.cls = witness_class::proper_omega;
    else
        fail_input("unknown witness class: " + cls);
    w.k = j.value("k", 2);
    w.t = j.value("t", 2);
    w.m = j.value("m", 0);
    w.f = j.value("f", 0);
    for (const auto& c : j.at("items")) w.items.push_back(certificate_from_json(c));
    return w;
}

json tri_to_json(const tri_bool& t) {
    json out;
    out["verdict"] = t.v == verdict::yes ? (t.probe_scoped ? "Verified-on-probe" : "Yes")
                     : t.v == verdict::no ? "No"
                                          : "Unknown";
    if (!t.note.empty()) out["note"] = t.note;
    if (!t.evidence.empty()) {
        json ev = json::array();
        for (const auto& c : t.evidence) ev.push_back(certificate_to_json(c));
        out["evidence"] = ev;
    }
    if (t.bad_member) out["bad-member"] = member_ref_to_json(*t.bad_member);
    if (t.bad_cover >= 0) out["bad-cover"] = t.bad_cover;
    if (!t.counterexample.empty()) {
        json pts = json::array();
        for (const auto& p : t.counterexample) pts.push_back(point_to_json(p));
        out["counterexample"] = pts;
    }
    return out;
}

json transcript_to_json(const transcript& t) {
    json rounds = json::array();
    for (const auto& r : t.rounds)
        rounds.push_back(json{{"cover", r.cover_index}, {"cert", certificate_to_json(r.cert)}});
    json out{{"winner", t.winner == player::two ? "II" : "I"}, {"rounds", rounds}, {"forfeit", t.forfeit}};
    if (!t.note.empty()) out["note"] = t.note;
    if (!t.missed.empty()) {
        json pts = json::array();
        for (const auto& p : t.missed) pts.push_back(point_to_json(p));
        out["missed"] = pts;
    }
    return out;
}

std::string fingerprint(const json& j) {
    std::string s = j.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

space load_space_field(const json& spec, const std::string& field) {
    require(spec.contains(field), "missing \"" + field + "\"");
    const auto& f = spec.at(field);
    if (f.is_string()) {
        std::ifstream in(f.get<std::string>());
        require(in.good(), "cannot open space file " + f.get<std::string>());
        json j;
        in >> j;
        return space_from_json(j);
    }
    return space_from_json(f);
}

} // namespace cbg
