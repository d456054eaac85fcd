#pragma once

#include <json.hpp>

#include "combinators.hpp"
#include "corpus.hpp"
#include "game.hpp"
#include "preorder.hpp"
#include "space.hpp"

namespace cbg {

using nlohmann::json;

// points: integer | [ints] (lattice vector) | "word" | {"pair":[a,b]}
json point_to_json(const point& p);
point point_from_json(const json& j);

json member_ref_to_json(const member_ref& m);
member_ref member_ref_from_json(const json& j);

json certificate_to_json(const certificate& c);
certificate certificate_from_json(const json& j);

json space_to_json(const space& sp);
space space_from_json(const json& j);

json config_to_json(const game_config& cfg);
game_config config_from_json(const json& j, const space& sp);

json witness_to_json(const witness_sequence& w);
witness_sequence witness_from_json(const json& j);

json tri_to_json(const tri_bool& t);
json transcript_to_json(const transcript& t);

// 64-bit FNV-1a of the canonical dump, as 16 hex digits.
std::string fingerprint(const json& j);

// ---------------------------------------------------------------------------
// RunSpec execution (the CLI is a thin flag parser over this)
// ---------------------------------------------------------------------------

struct run_result {
    status st = status::internal;
    json report;
};

// Executes {"command": ..., ...}; never throws — failures become reports with
// error verdicts and the matching status.
run_result run_spec(const json& spec);

// Loads {"space": {...}} or {"space": "path.json"}.
space load_space_field(const json& spec, const std::string& field = "space");

} // namespace cbg
