/* teamlogic :: C API for the team-semantics workbench.
 *
 * Opaque handles, status codes, and JSON strings across the boundary.
 * Every char** output is allocated by the library; release it with
 * tl_string_free. On any status other than TL_OK, tl_last_error() holds a
 * thread-local description of the failure.
 */

#ifndef TEAMLOGIC_H
#define TEAMLOGIC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct tl_formula tl_formula;
typedef struct tl_team tl_team;
typedef struct tl_kripke tl_kripke;
typedef struct tl_adqbf tl_adqbf;

typedef enum {
  TL_OK = 0,
  TL_ERR_PARSE = 1,
  TL_ERR_FRAGMENT = 2,
  TL_ERR_RESOURCE = 3,
  TL_ERR_INVALID = 4,
  TL_ERR_IO = 5,
} tl_status;

const char* tl_version(void);
const char* tl_last_error(void);
void tl_string_free(char* s);

tl_status tl_formula_parse(const char* text, tl_formula** out);
void tl_formula_free(tl_formula* f);
tl_status tl_formula_render(const tl_formula* f, char** out);
tl_status tl_formula_fragment(const tl_formula* f, char** out);
tl_status tl_formula_free_vars(const tl_formula* f, char** out_json);

tl_status tl_team_parse(const char* json, tl_team** out);
void tl_team_free(tl_team* t);
tl_status tl_kripke_parse(const char* json, tl_kripke** out);
void tl_kripke_free(tl_kripke* m);

/* verdict: 1 satisfied, 0 violated. */
tl_status tl_check_team(const tl_formula* f, const tl_team* t, int* verdict);
/* Checks against the team carried by the model JSON (all worlds by default). */
tl_status tl_check_kripke(const tl_formula* f, const tl_kripke* m, int* verdict);

/* mode: "sat" | "valid" | "entail". logic: fragment name or "" for
 * auto-detection. opts_json (may be NULL):
 *   {"oracle":"brute", "bound":N, "jobs":N,
 *    "caps":{"max_joint_vars":N, "max_worlds":N, "max_dep_arity":N,
 *            "max_witness_tuples":N}}
 * The report is a JSON object with verdict, witness, counters, timing_ms. */
tl_status tl_decide(const char* mode, const char* const* premises, size_t premise_count,
                    const char* conclusion, const char* logic, const char* opts_json,
                    char** report_json);

/* name: "prenex" | "qpdl-to-mdl" | "pi2-to-pdl" | "pi2-to-qplind" |
 *       "sigma1-to-qplinc" | "inc-to-ind".
 * input: formula text (prenex, inc-to-ind as "inc(..., ...)"), an ADQBF
 * instance JSON, or for qpdl-to-mdl a JSON object
 *   {"kind":"sat|valid|entail","premises":[...],"conclusion":"..."}.
 * Output JSON: {"sigma":[...], "psi":"...", "varmap":{...}}. */
tl_status tl_reduce(const char* name, const char* input, char** out_json);

/* Seeded random formula in the given fragment over var_count variables. */
tl_status tl_formula_generate(const char* fragment, unsigned long long seed, int size,
                              int var_count, char** out_text);

tl_status tl_adqbf_parse(const char* json, tl_adqbf** out);
void tl_adqbf_free(tl_adqbf* a);
tl_status tl_adqbf_eval(const tl_adqbf* a, int* verdict);
tl_status tl_adqbf_generate(const char* shape, unsigned long long seed, int n, int fn_count,
                            int max_arity, char** out_json);

#ifdef __cplusplus
}
#endif

#endif
