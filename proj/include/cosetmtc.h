/* C interface to the cosetmtc core: modular data of su(n) WZW models and
 * their diagonal cosets, fixed-point resolution, branching-positivity
 * checks, and lens-space invariants.
 *
 * Conventions:
 *   - Every constructor takes an out-parameter and returns a status code;
 *     on failure the out-parameter is untouched and cmt_last_error() holds
 *     a message (thread-local, valid until the next failing call).
 *   - Results are UTF-8 JSON strings allocated by the library; release them
 *     with cmt_string_free.  Handles are released with their _free call.
 *   - Numeric payload layout is documented next to each emission function;
 *     complex numbers are [re, im] arrays, labels are unshifted Dynkin
 *     labels.
 */
#ifndef COSETMTC_H
#define COSETMTC_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cmt_status {
  CMT_OK = 0,
  CMT_STATUS_INVALID = 1, /* invalid parameters (rank, level, null pointer) */
  CMT_STATUS_SCHEMA = 2,  /* malformed file or document */
  CMT_STATUS_SCOPE = 3,   /* valid request outside the implemented regime */
  CMT_STATUS_NUMERIC = 4, /* internal numerical consistency failure */
  CMT_STATUS_INTERNAL = 5 /* unexpected failure */
} cmt_status;

typedef struct cmt_theory cmt_theory;       /* modular data handle */
typedef struct cmt_branching cmt_branching; /* branching table handle */

/* Library version (also the cache-key component used by clients). */
const char* cmt_version(void);

/* Message for the most recent failing call on this thread; never NULL. */
const char* cmt_last_error(void);

/* Release a string returned by any _json function. */
void cmt_string_free(char* s);

/* ---- theories ---------------------------------------------------------- */

/* su(n) level k WZW theory. */
cmt_status cmt_wzw_new(int n, int level, cmt_theory** out);

/* Diagonal coset su(n)_m1 x su(n)_m2 / su(n)_{m1+m2}, fixed points
 * resolved.  Returns CMT_STATUS_SCOPE when a fixed point exists but the
 * resolution is outside the supported regime. */
cmt_status cmt_coset_new(int n, int m1, int m2, cmt_theory** out);

void cmt_theory_free(cmt_theory* t);

/* Modular data: { "type", "factors", "labels", "S", "T", "delta", "c" }. */
cmt_status cmt_theory_json(const cmt_theory* t, char** out);

/* Sparse fusion coefficients: [ { "a", "b", "c", "n" }, ... ]. */
cmt_status cmt_theory_fusion_json(const cmt_theory* t, char** out);

/* Axiom verification report.  *pass is 1/0; the JSON carries the maximum
 * deviation per relation.  Coset handles add the coset cross-checks. */
cmt_status cmt_theory_verify_json(const cmt_theory* t, double tol,
                                  double integer_tol, int* pass, char** out);

/* Coset handles only: sector table
 * [ { "orbit": [label, label, label], "period", "mult", "res_index",
 *     "qdim", "delta", "univalence": [re, im] }, ... ]. */
cmt_status cmt_coset_sectors_json(const cmt_theory* t, char** out);

/* Coset handles only: Gauss-sum consistency report with *pass as above. */
cmt_status cmt_coset_sigma_json(const cmt_theory* t, double tol, int* pass,
                                char** out);

/* ---- branching tables -------------------------------------------------- */

/* Canonical branching data of the diagonal coset (numerator = product of
 * the two factors, denominator = level-sum theory). */
cmt_status cmt_branching_diagonal(int n, int m1, int m2, cmt_branching** out);

/* Load { "numerator", "denominator", "exp", "vacuum_mult" } from a file. */
cmt_status cmt_branching_load(const char* path, cmt_branching** out);

void cmt_branching_free(cmt_branching* b);

/* The table itself, same schema as cmt_branching_load reads. */
cmt_status cmt_branching_json(const cmt_branching* b, char** out);

/* Run a comma-separated subset of { kwc, kwh, cond2, prop32 }.
 * *pass is 1 iff every requested check passes.  JSON:
 *   { "pass", "kwc": { "pass", "min_b", "b_values", "failures" },
 *     "kwh": { "pass", "violations": [ { "i", "alpha", "j", "beta",
 *     "product" } ] }, "cond2": { "pass", "witnesses" },
 *     "prop32": { "pass", "qualifying", "max_dev" } }
 * with only the requested sections present. */
cmt_status cmt_kw_checks_json(const cmt_branching* b, const char* checks,
                              double tol, int* pass, char** out);

/* ---- lens-space invariants --------------------------------------------- */

/* L(p,1) invariant of the theory: { "p", "value": [re, im] }. */
cmt_status cmt_lens_json(const cmt_theory* t, int p, double tol, char** out);

/* Factorization probe on a coset handle, both orientations:
 *   { "n", "p", "forward": { "p", "tau_num", "tau_den", "tau_coset",
 *     "ratio", "c", "residual" }, "reverse": { ... } }. */
cmt_status cmt_probe_json(const cmt_theory* t, int p, double tol, char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* COSETMTC_H */
