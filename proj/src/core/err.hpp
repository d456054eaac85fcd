#pragma once

#include <stdexcept>
#include <string>

namespace cbg {

// Status values shared by the C API and the CLI exit codes.
// 0..2 are verdicts, >2 are failures.
enum class status : int {
    player_ii = 0,   // II wins / verified / yes
    player_i = 1,    // I wins / refuted / no
    unknown = 2,     // search bound hit on a lazy instance
    bad_input = 3,   // schema violation, malformed instance, precondition failure
    resource = 4,    // state-space or enumeration cap exceeded
    internal = 5,
};

class error : public std::runtime_error {
public:
    error(status s, const std::string& what) : std::runtime_error(what), code_(s) {}
    status code() const { return code_; }

private:
    status code_;
};

[[noreturn]] inline void fail(status s, const std::string& what) { throw error(s, what); }
[[noreturn]] inline void fail_input(const std::string& what) { throw error(status::bad_input, what); }

inline void require(bool ok, const std::string& what) {
    if (!ok) fail_input(what);
}

} // namespace cbg
