#include "qvdb.h"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>
#include <utility>

#include "qvdb/database.hpp"
#include "qvdb/engine.hpp"
#include "qvdb/errors.hpp"
#include "qvdb/verify.hpp"
#include "qvdb/version.hpp"

struct qvdb_database {
  qvdb::Database db;
};

struct qvdb_circuit {
  qvdb::Circuit circuit;
};

struct qvdb_report {
  qvdb::SearchReport report;
  // Bit-string storage backing the const char* accessors.
  std::vector<std::string> verdict_bits;
  std::vector<std::string> padding_bits;
};

namespace {

thread_local std::string g_last_error = "no error";

void set_error(const std::string& message) { g_last_error = message; }

template <typename F>
qvdb_status wrap(F&& body) noexcept {
  try {
    return body();
  } catch (const qvdb::ParseError& e) {
    set_error(e.what());
    return QVDB_ERR_PARSE;
  } catch (const qvdb::ResourceLimitError& e) {
    set_error(e.what());
    return QVDB_ERR_RESOURCE_LIMIT;
  } catch (const qvdb::UnsupportedGateError& e) {
    set_error(e.what());
    return QVDB_ERR_UNSUPPORTED_GATE;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return QVDB_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return QVDB_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return QVDB_ERR_INTERNAL;
  }
}

qvdb_status require(bool ok, const char* message) {
  if (ok) return QVDB_OK;
  set_error(message);
  return QVDB_ERR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qvdb::SearchConfig to_config(const qvdb_search_options* opts) {
  qvdb::SearchConfig config;
  if (!opts) return config;
  config.iterations = opts->iterations;
  if (opts->shots < 0)
    throw std::invalid_argument("shots must be non-negative");
  if (opts->shots > 0)
    config.shots = static_cast<std::uint64_t>(opts->shots);
  config.seed = opts->seed;
  config.presence_threshold = opts->presence_threshold;
  return config;
}

qvdb::QuerySet to_query_set(const char* const* keys, size_t n, int n_qubits) {
  std::vector<std::string> bits;
  for (size_t i = 0; i < n; ++i) {
    if (!keys[i]) throw std::invalid_argument("null query key");
    bits.emplace_back(keys[i]);
  }
  return qvdb::make_query_set(bits, n_qubits);
}

qvdb_report* make_report(qvdb::SearchReport&& rep) {
  auto* out = new qvdb_report{std::move(rep), {}, {}};
  for (const qvdb::PresenceVerdict& v : out->report.verdicts)
    out->verdict_bits.push_back(v.key.bits());
  for (const qvdb::BasisKey& k : out->report.padding_excluded)
    out->padding_bits.push_back(k.bits());
  return out;
}

}  // namespace

extern "C" {

const char* qvdb_version(void) { return qvdb::kVersion; }

const char* qvdb_last_error(void) { return g_last_error.c_str(); }

void qvdb_string_free(char* s) { std::free(s); }

/* ---- database ------------------------------------------------------- */

qvdb_status qvdb_database_from_json(const char* json_text,
                                    qvdb_database** out) {
  if (auto st = require(json_text && out, "null argument")) return st;
  return wrap([&] {
    *out = new qvdb_database{qvdb::Database::from_json(json_text)};
    return QVDB_OK;
  });
}

qvdb_status qvdb_database_to_json(const qvdb_database* db, char** out_json) {
  if (auto st = require(db && out_json, "null argument")) return st;
  return wrap([&] {
    *out_json = copy_string(db->db.to_json());
    return *out_json ? QVDB_OK : QVDB_ERR_INTERNAL;
  });
}

void qvdb_database_free(qvdb_database* db) { delete db; }

qvdb_status qvdb_database_pad(const qvdb_database* db, qvdb_database** out) {
  if (auto st = require(db && out, "null argument")) return st;
  return wrap([&] {
    *out = new qvdb_database{qvdb::pad_database(db->db)};
    return QVDB_OK;
  });
}

qvdb_status qvdb_database_pad_to(const qvdb_database* db, size_t target_size,
                                 qvdb_database** out) {
  if (auto st = require(db && out, "null argument")) return st;
  return wrap([&] {
    *out = new qvdb_database{qvdb::pad_database_to(db->db, target_size)};
    return QVDB_OK;
  });
}

int qvdb_database_qubits(const qvdb_database* db) {
  return db ? db->db.n_qubits : 0;
}

size_t qvdb_database_size(const qvdb_database* db) {
  return db ? db->db.entries.size() : 0;
}

size_t qvdb_database_padding_count(const qvdb_database* db) {
  return db ? db->db.padding_count() : 0;
}

int qvdb_database_overprovisioned(const qvdb_database* db) {
  return db && qvdb::is_overprovisioned(db->db) ? 1 : 0;
}

const char* qvdb_database_entry_key(const qvdb_database* db, size_t index) {
  if (!db || index >= db->db.entries.size()) return nullptr;
  thread_local std::string bits;
  bits = db->db.entries[index].key.bits();
  return bits.c_str();
}

int qvdb_database_entry_is_padding(const qvdb_database* db, size_t index) {
  if (!db || index >= db->db.entries.size()) return 0;
  return db->db.entries[index].is_padding ? 1 : 0;
}

const char* qvdb_database_entry_label(const qvdb_database* db, size_t index) {
  if (!db || index >= db->db.entries.size()) return nullptr;
  return db->db.entries[index].label.c_str();
}

uint64_t qvdb_max_definitive_solutions(int n_qubits) {
  return n_qubits >= 1 ? qvdb::max_definitive_solutions(n_qubits) : 0;
}

qvdb_status qvdb_optimal_iterations(int n_qubits, uint64_t expected_solutions,
                                    int* out) {
  if (auto st = require(out != nullptr, "null argument")) return st;
  return wrap([&] {
    *out = qvdb::optimal_iterations(n_qubits, expected_solutions);
    return QVDB_OK;
  });
}

/* ---- search --------------------------------------------------------- */

void qvdb_search_options_init(qvdb_search_options* opts) {
  if (!opts) return;
  opts->iterations = 1;
  opts->shots = 0;
  opts->seed = 1;
  opts->presence_threshold = 2.0;
  opts->pad = 0;
}

qvdb_status qvdb_search(const qvdb_database* db, const char* const* query_keys,
                        size_t n_queries, const qvdb_search_options* opts,
                        qvdb_report** out) {
  if (auto st = require(db && query_keys && out, "null argument")) return st;
  return wrap([&] {
    qvdb::Database working = db->db;
    if (opts && opts->pad) working = qvdb::pad_database(working);
    const qvdb::QuerySet queries =
        to_query_set(query_keys, n_queries, working.n_qubits);
    *out = make_report(qvdb::grover_search(working, queries, to_config(opts)));
    return QVDB_OK;
  });
}

qvdb_status qvdb_search_cz(int n_qubits, const char* const* keys, size_t n_keys,
                           const qvdb_search_options* opts,
                           qvdb_report** out) {
  if (auto st = require(out && (keys || n_keys == 0), "null argument"))
    return st;
  return wrap([&] {
    std::vector<qvdb::BasisKey> parsed;
    for (size_t i = 0; i < n_keys; ++i) {
      if (!keys[i]) throw std::invalid_argument("null key");
      parsed.push_back(qvdb::BasisKey::from_bits(keys[i]));
    }
    *out = make_report(
        qvdb::grover_search_cz(n_qubits, parsed, to_config(opts)));
    return QVDB_OK;
  });
}

qvdb_status qvdb_run_scenario(const char* name, const int64_t* shots_override,
                              const uint64_t* seed_override,
                              qvdb_report** out) {
  if (auto st = require(name && out, "null argument")) return st;
  return wrap([&] {
    qvdb::ScenarioOverrides overrides;
    if (shots_override) {
      if (*shots_override < 1)
        throw std::invalid_argument("shots must be at least 1");
      overrides.shots = static_cast<std::uint64_t>(*shots_override);
    }
    if (seed_override) overrides.seed = *seed_override;
    *out = make_report(qvdb::run_scenario(name, overrides));
    return QVDB_OK;
  });
}

/* ---- report --------------------------------------------------------- */

void qvdb_report_free(qvdb_report* r) { delete r; }

int qvdb_report_qubits(const qvdb_report* r) {
  return r ? r->report.n_qubits : 0;
}

int qvdb_report_iterations(const qvdb_report* r) {
  return r ? r->report.iterations : 0;
}

uint64_t qvdb_report_seed(const qvdb_report* r) {
  return r ? r->report.seed : 0;
}

int qvdb_report_has_counts(const qvdb_report* r) {
  return r && r->report.counts ? 1 : 0;
}

uint64_t qvdb_report_shots(const qvdb_report* r) {
  return r && r->report.shots ? *r->report.shots : 0;
}

size_t qvdb_report_num_states(const qvdb_report* r) {
  return r ? r->report.distribution.size() : 0;
}

qvdb_status qvdb_report_probabilities(const qvdb_report* r, double* buf,
                                      size_t len) {
  if (auto st = require(r && buf, "null argument")) return st;
  if (auto st = require(len == r->report.distribution.size(),
                        "buffer length must be 2^n"))
    return st;
  for (size_t i = 0; i < len; ++i) buf[i] = r->report.distribution[i];
  return QVDB_OK;
}

qvdb_status qvdb_report_counts(const qvdb_report* r, uint64_t* buf,
                               size_t len) {
  if (auto st = require(r && buf, "null argument")) return st;
  if (auto st = require(len == r->report.distribution.size(),
                        "buffer length must be 2^n"))
    return st;
  for (size_t i = 0; i < len; ++i) buf[i] = 0;
  if (r->report.counts)
    for (const auto& [index, hits] : r->report.counts->counts)
      buf[index] = hits;
  return QVDB_OK;
}

size_t qvdb_report_num_verdicts(const qvdb_report* r) {
  return r ? r->report.verdicts.size() : 0;
}

const char* qvdb_report_verdict_key(const qvdb_report* r, size_t index) {
  if (!r || index >= r->verdict_bits.size()) return nullptr;
  return r->verdict_bits[index].c_str();
}

int qvdb_report_verdict_present(const qvdb_report* r, size_t index) {
  if (!r || index >= r->report.verdicts.size()) return 0;
  return r->report.verdicts[index].present ? 1 : 0;
}

double qvdb_report_verdict_probability(const qvdb_report* r, size_t index) {
  if (!r || index >= r->report.verdicts.size()) return 0.0;
  return r->report.verdicts[index].probability;
}

size_t qvdb_report_num_padding_excluded(const qvdb_report* r) {
  return r ? r->padding_bits.size() : 0;
}

const char* qvdb_report_padding_excluded_key(const qvdb_report* r,
                                             size_t index) {
  if (!r || index >= r->padding_bits.size()) return nullptr;
  return r->padding_bits[index].c_str();
}

size_t qvdb_report_db_size(const qvdb_report* r) {
  return r ? r->report.db_size : 0;
}

size_t qvdb_report_padding_count(const qvdb_report* r) {
  return r ? r->report.padding_count : 0;
}

int qvdb_report_overprovisioned(const qvdb_report* r) {
  return r && r->report.overprovisioned ? 1 : 0;
}

qvdb_status qvdb_report_to_json(const qvdb_report* r, char** out_json) {
  if (auto st = require(r && out_json, "null argument")) return st;
  return wrap([&] {
    *out_json = copy_string(qvdb::report_to_json(r->report));
    return *out_json ? QVDB_OK : QVDB_ERR_INTERNAL;
  });
}

/* ---- circuits / QASM ------------------------------------------------ */

qvdb_status qvdb_build_search_circuit(const qvdb_database* db,
                                      const char* const* query_keys,
                                      size_t n_queries, int iterations,
                                      qvdb_circuit** out) {
  if (auto st = require(db && query_keys && out, "null argument")) return st;
  return wrap([&] {
    const qvdb::QuerySet queries =
        to_query_set(query_keys, n_queries, db->db.n_qubits);
    *out = new qvdb_circuit{
        qvdb::build_search_circuit(db->db, queries, iterations)};
    return QVDB_OK;
  });
}

int qvdb_circuit_qubits(const qvdb_circuit* c) {
  return c ? c->circuit.n_qubits : 0;
}

size_t qvdb_circuit_num_ops(const qvdb_circuit* c) {
  return c ? c->circuit.ops.size() : 0;
}

qvdb_status qvdb_circuit_to_qasm(const qvdb_circuit* c, char** out_qasm) {
  if (auto st = require(c && out_qasm, "null argument")) return st;
  return wrap([&] {
    *out_qasm = copy_string(qvdb::export_qasm(c->circuit));
    return *out_qasm ? QVDB_OK : QVDB_ERR_INTERNAL;
  });
}

void qvdb_circuit_free(qvdb_circuit* c) { delete c; }

/* ---- verification ---------------------------------------------------- */

qvdb_status qvdb_verify(int max_qubits, int trials, uint64_t seed,
                        qvdb_verify_result* out) {
  if (auto st = require(out != nullptr, "null argument")) return st;
  return wrap([&] {
    const qvdb::VerifyResult r =
        qvdb::run_verification({max_qubits, trials, seed});
    out->statevector_vs_dense = r.statevector_vs_dense;
    out->diffusion_vs_reflection = r.diffusion_vs_reflection;
    out->mc_phase_decomposition = r.mc_phase_decomposition;
    out->oracle_order_invariance = r.oracle_order_invariance;
    out->pass = r.pass ? 1 : 0;
    return QVDB_OK;
  });
}

}  // extern "C"
