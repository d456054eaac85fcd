#include <cbgame/cbgame.h>

#include <cstring>
#include <string>

#include "../core/err.hpp"
#include "../core/io.hpp"

using namespace cbg;

struct cbg_space_s {
    space sp;
};

namespace {

thread_local std::string last_error_message;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int set_error(const std::exception& e, int code) {
    last_error_message = e.what();
    return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const error& e) {
        return set_error(e, static_cast<int>(e.code()));
    } catch (const json::exception& e) {
        return set_error(e, CBG_EINPUT);
    } catch (const std::exception& e) {
        return set_error(e, CBG_EINTERNAL);
    }
}

} // namespace

extern "C" {

int cbg_version_major(void) { return 1; }
int cbg_version_minor(void) { return 0; }

int cbg_run_json(const char* runspec_json, char** report_out) {
    if (!runspec_json || !report_out) {
        last_error_message = "null argument";
        return CBG_EINPUT;
    }
    json spec;
    try {
        spec = json::parse(runspec_json);
    } catch (const json::exception& e) {
        last_error_message = e.what();
        json rep{{"verdict", "Error"}, {"error", e.what()}, {"exit", CBG_EINPUT}};
        *report_out = dup_string(rep.dump());
        return CBG_EINPUT;
    }
    run_result res = run_spec(spec);
    *report_out = dup_string(res.report.dump());
    return static_cast<int>(res.st);
}

int cbg_space_parse(const char* space_json, cbg_space** out) {
    if (!space_json || !out) {
        last_error_message = "null argument";
        return CBG_EINPUT;
    }
    return guarded([&] {
        auto handle = new cbg_space_s{space_from_json(json::parse(space_json))};
        *out = handle;
        return CBG_II_WINS;
    });
}

void cbg_space_free(cbg_space* sp) { delete sp; }

int cbg_space_cover_count(const cbg_space* sp, int* out) {
    if (!sp || !out) {
        last_error_message = "null argument";
        return CBG_EINPUT;
    }
    *out = static_cast<int>(sp->sp.covers.size());
    return CBG_II_WINS;
}

int cbg_space_ground_size(const cbg_space* sp, long long* out) {
    if (!sp || !out) {
        last_error_message = "null argument";
        return CBG_EINPUT;
    }
    return guarded([&] {
        *out = sp->sp.finite() ? static_cast<long long>(sp->sp.universe().size()) : -1;
        return CBG_II_WINS;
    });
}

char* cbg_space_fingerprint(const cbg_space* sp) {
    if (!sp) return nullptr;
    try {
        return dup_string(fingerprint(space_to_json(sp->sp)));
    } catch (const std::exception& e) {
        last_error_message = e.what();
        return nullptr;
    }
}

char* cbg_space_dump(const cbg_space* sp) {
    if (!sp) return nullptr;
    try {
        return dup_string(space_to_json(sp->sp).dump());
    } catch (const std::exception& e) {
        last_error_message = e.what();
        return nullptr;
    }
}

int cbg_solve(const cbg_space* sp, const char* config_json, char** report_out) {
    if (!sp || !config_json || !report_out) {
        last_error_message = "null argument";
        return CBG_EINPUT;
    }
    json spec{{"command", "solve"}, {"space", space_to_json(sp->sp)}};
    return guarded([&] {
        spec["config"] = json::parse(config_json);
        run_result res = run_spec(spec);
        *report_out = dup_string(res.report.dump());
        return static_cast<int>(res.st);
    });
}

int cbg_play(const cbg_space* sp, const char* config_json, const char* play_json, char** report_out) {
    if (!sp || !config_json || !play_json || !report_out) {
        last_error_message = "null argument";
        return CBG_EINPUT;
    }
    return guarded([&] {
        json spec{{"command", "play"}, {"space", space_to_json(sp->sp)}};
        spec["config"] = json::parse(config_json);
        spec["params"] = json::parse(play_json);
        run_result res = run_spec(spec);
        *report_out = dup_string(res.report.dump());
        return static_cast<int>(res.st);
    });
}

const char* cbg_last_error(void) { return last_error_message.c_str(); }

void cbg_string_free(char* s) { std::free(s); }

} // extern "C"
