/* qvdb - exact-match quantum database search on a statevector simulator.
 *
 * C API of the shared library. All functions returning qvdb_status set a
 * thread-local message retrievable through qvdb_last_error() on failure.
 * Objects created by the library are released with the matching *_free
 * function; strings returned through char** out parameters are released
 * with qvdb_string_free.
 */
#ifndef QVDB_H
#define QVDB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qvdb_status {
  QVDB_OK = 0,
  QVDB_ERR_INVALID_ARGUMENT = 1, /* bad key, width mismatch, out-of-range value */
  QVDB_ERR_PARSE = 2,            /* malformed database JSON */
  QVDB_ERR_RESOURCE_LIMIT = 3,   /* dense-path or register-size guard tripped */
  QVDB_ERR_UNSUPPORTED_GATE = 4, /* gate outside the QASM export whitelist */
  QVDB_ERR_IO = 5,
  QVDB_ERR_INTERNAL = 6
} qvdb_status;

typedef struct qvdb_database qvdb_database; /* stored key set */
typedef struct qvdb_circuit qvdb_circuit;   /* gate sequence over one register */
typedef struct qvdb_report qvdb_report;     /* result of one search run */

const char* qvdb_version(void);

/* Message for the last failing call on this thread. Never NULL. */
const char* qvdb_last_error(void);

void qvdb_string_free(char* s);

/* ---- database ------------------------------------------------------- */

/* Parses {"qubits": n, "entries": [{"key": "101", "padding": false,
 * "label": "..."}, ...]}. Keys are MSB-first bit strings, validated for
 * width and uniqueness; "padding" defaults to false, "label" to absent. */
qvdb_status qvdb_database_from_json(const char* json_text, qvdb_database** out);
qvdb_status qvdb_database_to_json(const qvdb_database* db, char** out_json);
void qvdb_database_free(qvdb_database* db);

/* Appends padding entries (smallest unused key values, ascending) until the
 * database holds 2^(n-1) entries; a larger database is returned unchanged. */
qvdb_status qvdb_database_pad(const qvdb_database* db, qvdb_database** out);

/* Same selection rule with an explicit target size (at most 2^n entries). */
qvdb_status qvdb_database_pad_to(const qvdb_database* db, size_t target_size,
                                 qvdb_database** out);

int qvdb_database_qubits(const qvdb_database* db);
size_t qvdb_database_size(const qvdb_database* db);
size_t qvdb_database_padding_count(const qvdb_database* db);
int qvdb_database_overprovisioned(const qvdb_database* db);
const char* qvdb_database_entry_key(const qvdb_database* db, size_t index);
int qvdb_database_entry_is_padding(const qvdb_database* db, size_t index);
const char* qvdb_database_entry_label(const qvdb_database* db, size_t index);

/* Capacity bound 2^(n-1) - 1 on definitively amplifiable Z-marked keys. */
uint64_t qvdb_max_definitive_solutions(int n_qubits);

/* max(1, floor(pi/4 * sqrt(2^n / expected_solutions))). */
qvdb_status qvdb_optimal_iterations(int n_qubits, uint64_t expected_solutions,
                                    int* out);

/* ---- search --------------------------------------------------------- */

typedef struct qvdb_search_options {
  int iterations;            /* >= 1 */
  int64_t shots;             /* <= 0: exact probabilities only */
  uint64_t seed;             /* sampling seed */
  double presence_threshold; /* > 1 */
  int pad;                   /* nonzero: pad the database before searching */
} qvdb_search_options;

/* iterations 1, shots 0, seed 1, threshold 2.0, pad 0 */
void qvdb_search_options_init(qvdb_search_options* opts);

qvdb_status qvdb_search(const qvdb_database* db, const char* const* query_keys,
                        size_t n_queries, const qvdb_search_options* opts,
                        qvdb_report** out);

/* Z-marking baseline: every listed key is a solution; no verdicts. */
qvdb_status qvdb_search_cz(int n_qubits, const char* const* keys, size_t n_keys,
                           const qvdb_search_options* opts, qvdb_report** out);

/* Named presets fig2..fig11. fig10/fig11 sample 4096 shots unless
 * shots_override is given. NULL overrides keep the preset values. */
qvdb_status qvdb_run_scenario(const char* name, const int64_t* shots_override,
                              const uint64_t* seed_override, qvdb_report** out);

/* ---- report --------------------------------------------------------- */

void qvdb_report_free(qvdb_report* r);
int qvdb_report_qubits(const qvdb_report* r);
int qvdb_report_iterations(const qvdb_report* r);
uint64_t qvdb_report_seed(const qvdb_report* r);
int qvdb_report_has_counts(const qvdb_report* r);
uint64_t qvdb_report_shots(const qvdb_report* r);
size_t qvdb_report_num_states(const qvdb_report* r);

/* Exact per-state probabilities, basis index order; len must be 2^n. */
qvdb_status qvdb_report_probabilities(const qvdb_report* r, double* buf,
                                      size_t len);
/* Sampled hit counts per state (zero without sampling); len must be 2^n. */
qvdb_status qvdb_report_counts(const qvdb_report* r, uint64_t* buf, size_t len);

size_t qvdb_report_num_verdicts(const qvdb_report* r);
const char* qvdb_report_verdict_key(const qvdb_report* r, size_t index);
int qvdb_report_verdict_present(const qvdb_report* r, size_t index);
double qvdb_report_verdict_probability(const qvdb_report* r, size_t index);

size_t qvdb_report_num_padding_excluded(const qvdb_report* r);
const char* qvdb_report_padding_excluded_key(const qvdb_report* r, size_t index);

size_t qvdb_report_db_size(const qvdb_report* r);
size_t qvdb_report_padding_count(const qvdb_report* r);
int qvdb_report_overprovisioned(const qvdb_report* r);

/* {"qubits", "iterations", "shots", "seed", "probabilities", "counts"?,
 * "verdicts", "padding_excluded", "overprovisioned"} */
qvdb_status qvdb_report_to_json(const qvdb_report* r, char** out_json);

/* ---- circuits / QASM ------------------------------------------------ */

/* Full search circuit: uniform preparation, then (oracle, diffusion) per
 * iteration. Measurements are appended by the QASM exporter. */
qvdb_status qvdb_build_search_circuit(const qvdb_database* db,
                                      const char* const* query_keys,
                                      size_t n_queries, int iterations,
                                      qvdb_circuit** out);
int qvdb_circuit_qubits(const qvdb_circuit* c);
size_t qvdb_circuit_num_ops(const qvdb_circuit* c);

/* OpenQASM 2.0 text over {h, x, z, s, sdg, u1, cu1, cx} plus terminal
 * per-qubit measurement. Byte-deterministic for identical circuits. */
qvdb_status qvdb_circuit_to_qasm(const qvdb_circuit* c, char** out_qasm);
void qvdb_circuit_free(qvdb_circuit* c);

/* ---- verification ---------------------------------------------------- */

typedef struct qvdb_verify_result {
  double statevector_vs_dense;    /* componentwise, tolerance 1e-10 */
  double diffusion_vs_reflection; /* probability vectors, tolerance 1e-12 */
  double mc_phase_decomposition;  /* unitary deviation, tolerance 1e-10 */
  double oracle_order_invariance; /* must be exactly 0 */
  int pass;
} qvdb_verify_result;

/* Randomized equivalence suites against the dense-unitary path.
 * max_qubits is capped at 10 (dense guard); trials >= 1. */
qvdb_status qvdb_verify(int max_qubits, int trials, uint64_t seed,
                        qvdb_verify_result* out);

#ifdef __cplusplus
}
#endif

#endif /* QVDB_H */
