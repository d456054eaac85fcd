// cbgame — batch front end over the shared library's C interface.
//
// Verbs build a JSON run specification and hand it to cbg_run_json; the exit
// code is the library's status (0 II-wins/verified, 1 I-wins/refuted,
// 2 unknown, >2 errors).

#include <cbgame/cbgame.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <string>

using nlohmann::json;

namespace {

json load_json_or_path(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return json::parse(arg);
    std::ifstream in(arg);
    if (!in.good()) throw CLI::ValidationError("cannot open " + arg);
    json j;
    in >> j;
    return j;
}

int execute(const json& spec, bool pretty) {
    char* report = nullptr;
    int rc = cbg_run_json(spec.dump().c_str(), &report);
    if (report) {
        std::cout << (pretty ? json::parse(report).dump(2) : std::string(report)) << "\n";
        cbg_string_free(report);
    } else {
        std::cerr << "{\"verdict\":\"Error\",\"error\":\"" << cbg_last_error() << "\"}\n";
    }
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multicovered spaces and cover-bounded selection games"};
    app.require_subcommand(1);
    app.fallthrough();
    bool pretty = false;
    app.add_flag("--pretty", pretty, "indent the JSON report");
    long long seed = 0;
    app.add_option("--seed", seed, "seed recorded in the run spec (runs are deterministic)");
    long long limit_states = 1 << 22;
    app.add_option("--limit-states", limit_states, "solver memo cap");

    std::string space_arg, space2_arg, config_arg, instance_arg, descriptor_arg;
    std::string i_seq, strategy = "oracle", principle = "totally-bounded", mode = "equivalent", name;
    std::string out_dir;
    long long budget = -1, probe_box = 20;
    int cover_a = -1, cover_b = -1, bound = 32;
    int max_x = 5, max_covers = 2, max_members = 5;

    auto add_space = [&](CLI::App* cmd, bool required = true) {
        auto* opt = cmd->add_option("--space", space_arg, "space JSON (inline or path)");
        if (required) opt->required();
    };
    auto add_config = [&](CLI::App* cmd, bool required = true) {
        auto* opt = cmd->add_option("--config", config_arg, "game config JSON (inline or path)");
        if (required) opt->required();
    };

    auto* solve = app.add_subcommand("solve", "exact backward-induction solve of a finite instance");
    solve->fallthrough();
    add_space(solve);
    add_config(solve);
    bool dump_policy = false;
    solve->add_flag("--dump-policy", dump_policy, "emit the full policy table");

    auto* play = app.add_subcommand("play", "deterministic replay of one play");
    play->fallthrough();
    add_space(play);
    add_config(play);
    play->add_option("--i-seq", i_seq, "comma-separated first-player cover indices")->required();
    play->add_option("--strategy", strategy, "oracle | constant-full | constant-empty");
    std::string transcripts_out;
    play->add_option("--transcripts-out", transcripts_out, "append transcripts to this file, one JSON per line");

    auto* check = app.add_subcommand("check-principle", "selection principles and structural checks");
    check->fallthrough();
    add_space(check);
    add_config(check, false);
    check->add_option("principle", principle,
                      "totally-bounded | centered | omega-bounded | menger | scheepers | hurewicz | winning | o-bounded")
        ->required();
    check->add_option("--budget", budget, "boundedness budget (totally-bounded)");
    check->add_option("--bound", bound, "search bound (centered)");

    auto* cmp = app.add_subcommand("compare-covers", "the ≺ preorder and multicover equivalence");
    cmp->fallthrough();
    add_space(cmp);
    cmp->add_option("--space2", space2_arg, "second space (multicover comparison)");
    cmp->add_option("--cover", cover_a, "first cover index (within one space)");
    cmp->add_option("--cover2", cover_b, "second cover index");
    cmp->add_option("--mode", mode, "equivalent | coarser");
    cmp->add_option("--bound", bound, "per-member certificate search bound");

    auto* verify = app.add_subcommand("verify-combinator", "precondition/construction/postcondition checks");
    verify->fallthrough();
    verify->add_option("name", name, "union | gamma-upgrade | product | lift-abelian | lift-group | decomposition")
        ->required();
    verify->add_option("--instance", instance_arg, "instance JSON (inline or path)")->required();

    auto* mk = app.add_subcommand("make-space", "normalize a group/metric descriptor into a space file");
    mk->fallthrough();
    mk->add_option("--descriptor", descriptor_arg, "descriptor JSON (inline or path)")->required();
    bool materialize_flag = false;
    mk->add_flag("--materialize", materialize_flag, "expand lazy covers over finite grounds");
    mk->add_option("--probe-box", probe_box, "probe box half-width for lattice spaces");

    auto* corpus = app.add_subcommand("corpus", "canonical small-instance enumeration");
    corpus->fallthrough();
    corpus->add_option("--max-x", max_x, "max ground size (<= 6)");
    corpus->add_option("--max-covers", max_covers, "max covers per instance (<= 3)");
    corpus->add_option("--max-members", max_members, "max members per cover (<= 6)");
    corpus->add_option("--out", out_dir, "write one file per instance into this directory");

    CLI11_PARSE(app, argc, argv);

    try {
        json spec;
        if (*solve) {
            spec = {{"command", "solve"},
                    {"space", load_json_or_path(space_arg)},
                    {"config", load_json_or_path(config_arg)}};
            spec["config"]["memo-cap"] = limit_states;
            if (dump_policy) spec["params"] = {{"dump-policy", true}};
        } else if (*play) {
            spec = {{"command", "play"},
                    {"space", load_json_or_path(space_arg)},
                    {"config", load_json_or_path(config_arg)}};
            json seq = json::array();
            std::string cur;
            for (char c : i_seq + ",") {
                if (c == ',') {
                    if (!cur.empty()) seq.push_back(std::stoi(cur));
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            spec["params"] = {{"i-seq", seq}, {"strategy", strategy}, {"seed", seed}};
            if (!transcripts_out.empty()) spec["params"]["transcripts-out"] = transcripts_out;
        } else if (*check) {
            spec = {{"command", "check-principle"}, {"space", load_json_or_path(space_arg)}};
            spec["params"] = {{"principle", principle}, {"bound", bound}};
            if (budget >= 0) spec["params"]["budget"] = budget;
            if (!config_arg.empty()) spec["config"] = load_json_or_path(config_arg);
        } else if (*cmp) {
            spec = {{"command", "compare-covers"}, {"space", load_json_or_path(space_arg)}};
            spec["params"] = {{"mode", mode}, {"bound", bound}};
            if (!space2_arg.empty()) spec["space2"] = load_json_or_path(space2_arg);
            if (cover_a >= 0) spec["params"]["cover"] = cover_a;
            if (cover_b >= 0) spec["params"]["cover2"] = cover_b;
        } else if (*verify) {
            spec = {{"command", "verify-combinator"},
                    {"name", name},
                    {"instance", load_json_or_path(instance_arg)}};
        } else if (*mk) {
            spec = {{"command", "make-space"}, {"descriptor", load_json_or_path(descriptor_arg)}};
            spec["params"] = {{"materialize", materialize_flag}};
        } else if (*corpus) {
            spec = {{"command", "corpus"}};
            spec["params"] = {{"max-x", max_x}, {"max-covers", max_covers}, {"max-members", max_members}};
            if (!out_dir.empty()) spec["params"]["out-dir"] = out_dir;
        }
        return execute(spec, pretty);
    } catch (const std::exception& e) {
        std::cerr << "{\"verdict\":\"Error\",\"error\":\"" << e.what() << "\"}\n";
        return CBG_EINPUT;
    }
}
