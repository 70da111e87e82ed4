#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qvdb/circuit.hpp"

namespace qvdb {

struct DatabaseEntry {
  BasisKey key;
  bool is_padding = false;
  std::string label;
};

// The stored key set. Keys are unique and share the register width.
struct Database {
  int n_qubits = 0;
  std::vector<DatabaseEntry> entries;

  // {"qubits": n, "entries": [{"key": "101", "padding": false,
  // "label": "..."}, ...]}. "padding" and "label" are optional. Structural
  // problems name the offending key in the exception message.
  static Database from_json(const std::string& text);
  std::string to_json() const;

  std::size_t padding_count() const;
};

// Validates key widths and uniqueness; throws std::invalid_argument naming
// the first offending key.
void validate_database(const Database& db);

struct QuerySet {
  std::vector<BasisKey> keys;
};

// Builds a QuerySet from MSB-first bit strings; keys must be non-empty,
// unique and of width n_qubits.
QuerySet make_query_set(const std::vector<std::string>& bits, int n_qubits);

// Capacity bound on definitively amplifiable Z-marked keys: 2^(n-1) - 1.
std::uint64_t max_definitive_solutions(int n_qubits);

// One quarter-turn key phase per database entry, then one per query key.
// All ops are diagonal, so any ordering yields the same unitary; a key
// stored and queried picks up i*i = -1, a half-turn mark.
Circuit build_cs_oracle(const Database& db, const QuerySet& queries);

// Baseline half-turn marking: -1 exactly at the listed keys.
Circuit build_cz_oracle(int n_qubits, const std::vector<BasisKey>& keys);

// Pads with the smallest unused key values, ascending, until the database
// holds 2^(n-1) entries (one matching query then brings the coded total to
// the ideal 2^(n-1) + 1). Larger databases pass through unchanged.
Database pad_database(const Database& db);

// Same selection rule with an explicit target size; target must not exceed
// the register space.
Database pad_database_to(const Database& db, std::size_t target_size);

// More entries than the capacity bound plus one.
bool is_overprovisioned(const Database& db);

struct PresenceVerdict {
  BasisKey key;
  bool present = false;
  double probability = 0.0;
};

struct StrippedVerdicts {
  std::vector<PresenceVerdict> kept;
  std::vector<BasisKey> excluded_padding;
};

// Classical filter: verdicts on padding entries are pulled out of the hit
// list and reported separately.
StrippedVerdicts strip_padding_hits(const std::vector<PresenceVerdict>& verdicts,
                                    const Database& db);

}  // namespace qvdb
