/* cbgame — multicovered spaces and cover-bounded selection games.
 *
 * C interface of the shared library. All functions are thread-safe; handles
 * are immutable after creation and may be shared across threads. Strings
 * returned by the library are heap-allocated and must be released with
 * cbg_string_free.
 */

#ifndef CBGAME_H
#define CBGAME_H

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. 0..2 are verdicts, >2 are failures; the CLI uses them as
 * exit codes. */
enum {
    CBG_II_WINS = 0, /* second player wins / verified / yes */
    CBG_I_WINS = 1,  /* first player wins / refuted / no */
    CBG_UNKNOWN = 2, /* search bound hit on a lazy instance */
    CBG_EINPUT = 3,  /* schema violation or precondition failure */
    CBG_ELIMIT = 4,  /* state-space or enumeration cap exceeded */
    CBG_EINTERNAL = 5
};

typedef struct cbg_space_s cbg_space;

/* Version of the library. */
int cbg_version_major(void);
int cbg_version_minor(void);

/* Executes a JSON run specification ({"command": "solve", ...}) and stores
 * the JSON report in *report_out. Returns the verdict/status code. The
 * report is always produced, also on failures. */
int cbg_run_json(const char* runspec_json, char** report_out);

/* Parses a space description. On success stores a handle in *out and
 * returns CBG_II_WINS; on failure returns an error code and leaves an
 * explanation in cbg_last_error(). */
int cbg_space_parse(const char* space_json, cbg_space** out);
void cbg_space_free(cbg_space* sp);

/* Number of covers in the multicover. */
int cbg_space_cover_count(const cbg_space* sp, int* out);

/* Ground size: number of points for finite grounds, -1 for lazy grounds. */
int cbg_space_ground_size(const cbg_space* sp, long long* out);

/* Content fingerprint (16 hex digits) tying reports to instances. */
char* cbg_space_fingerprint(const cbg_space* sp);

/* Normalized JSON dump of a parsed space. */
char* cbg_space_dump(const cbg_space* sp);

/* Solves the game described by config_json on the given space; stores the
 * JSON report and returns the winner/status code. */
int cbg_solve(const cbg_space* sp, const char* config_json, char** report_out);

/* Deterministic replay: config plus {"i-seq": [...], "strategy": ...}. */
int cbg_play(const cbg_space* sp, const char* config_json, const char* play_json, char** report_out);

/* Message describing the most recent failure in this thread. */
const char* cbg_last_error(void);

void cbg_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* CBGAME_H */
