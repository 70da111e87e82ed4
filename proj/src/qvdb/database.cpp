#include "qvdb/database.hpp"

#include <set>
#include <stdexcept>

#include <json.hpp>

#include "qvdb/errors.hpp"
#include "qvdb/state.hpp"

namespace qvdb {

namespace {

using nlohmann::json;

void check_width(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw std::invalid_argument("\"qubits\" must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(n_qubits));
}

void check_key_width(const BasisKey& key, int n_qubits) {
  if (key.width != n_qubits)
    throw std::invalid_argument("key \"" + key.bits() + "\" has width " +
                                std::to_string(key.width) + ", expected " +
                                std::to_string(n_qubits));
}

}  // namespace

void validate_database(const Database& db) {
  check_width(db.n_qubits);
  std::set<std::uint64_t> seen;
  for (const DatabaseEntry& e : db.entries) {
    check_key_width(e.key, db.n_qubits);
    if (!seen.insert(e.key.value).second)
      throw std::invalid_argument("duplicate key \"" + e.key.bits() + "\"");
  }
}

Database Database::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("database JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("qubits") ||
      !doc["qubits"].is_number_integer())
    throw std::invalid_argument("database JSON needs an integer \"qubits\" field");

  Database db;
  db.n_qubits = doc["qubits"].get<int>();
  check_width(db.n_qubits);

  if (doc.contains("entries")) {
    if (!doc["entries"].is_array())
      throw std::invalid_argument("\"entries\" must be an array");
    for (const json& item : doc["entries"]) {
      if (!item.is_object() || !item.contains("key") ||
          !item["key"].is_string())
        throw std::invalid_argument("every entry needs a string \"key\" field");
      DatabaseEntry e;
      e.key = BasisKey::from_bits(item["key"].get<std::string>());
      if (item.contains("padding")) e.is_padding = item["padding"].get<bool>();
      if (item.contains("label")) e.label = item["label"].get<std::string>();
      db.entries.push_back(std::move(e));
    }
  }
  validate_database(db);
  return db;
}

std::string Database::to_json() const {
  json doc;
  doc["qubits"] = n_qubits;
  doc["entries"] = json::array();
  for (const DatabaseEntry& e : entries) {
    json item;
    item["key"] = e.key.bits();
    item["padding"] = e.is_padding;
    if (!e.label.empty()) item["label"] = e.label;
    doc["entries"].push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

std::size_t Database::padding_count() const {
  std::size_t n = 0;
  for (const DatabaseEntry& e : entries)
    if (e.is_padding) ++n;
  return n;
}

QuerySet make_query_set(const std::vector<std::string>& bits, int n_qubits) {
  if (bits.empty()) throw std::invalid_argument("query set is empty");
  QuerySet qs;
  std::set<std::uint64_t> seen;
  for (const std::string& b : bits) {
    BasisKey key = BasisKey::from_bits(b);
    check_key_width(key, n_qubits);
    if (!seen.insert(key.value).second)
      throw std::invalid_argument("duplicate query key \"" + key.bits() + "\"");
    qs.keys.push_back(key);
  }
  return qs;
}

std::uint64_t max_definitive_solutions(int n_qubits) {
  if (n_qubits < 1)
    throw std::invalid_argument("register needs at least one qubit");
  return (1ull << (n_qubits - 1)) - 1;
}

Circuit build_cs_oracle(const Database& db, const QuerySet& queries) {
  validate_database(db);
  if (queries.keys.empty()) throw std::invalid_argument("query set is empty");
  Circuit oracle(db.n_qubits);
  for (const DatabaseEntry& e : db.entries)
    oracle.append(key_phase(e.key, kPi / 2));
  for (const BasisKey& q : queries.keys) {
    check_key_width(q, db.n_qubits);
    oracle.append(key_phase(q, kPi / 2));
  }
  return oracle;
}

Circuit build_cz_oracle(int n_qubits, const std::vector<BasisKey>& keys) {
  check_width(n_qubits);
  Circuit oracle(n_qubits);
  std::set<std::uint64_t> seen;
  for (const BasisKey& k : keys) {
    check_key_width(k, n_qubits);
    if (!seen.insert(k.value).second)
      throw std::invalid_argument("duplicate key \"" + k.bits() + "\"");
    oracle.append(key_phase(k, kPi));
  }
  return oracle;
}

Database pad_database(const Database& db) {
  validate_database(db);
  return pad_database_to(db, std::size_t{1} << (db.n_qubits - 1));
}

Database pad_database_to(const Database& db, std::size_t target_size) {
  validate_database(db);
  if (target_size > (std::size_t{1} << db.n_qubits))
    throw std::invalid_argument("padding target exceeds the register space");
  Database padded = db;
  if (padded.entries.size() >= target_size) return padded;

  std::set<std::uint64_t> used;
  for (const DatabaseEntry& e : padded.entries) used.insert(e.key.value);
  for (std::uint64_t v = 0; padded.entries.size() < target_size; ++v) {
    if (used.count(v)) continue;
    DatabaseEntry e;
    e.key = BasisKey(db.n_qubits, v);
    e.is_padding = true;
    padded.entries.push_back(std::move(e));
  }
  return padded;
}

bool is_overprovisioned(const Database& db) {
  return db.entries.size() > max_definitive_solutions(db.n_qubits) + 1;
}

StrippedVerdicts strip_padding_hits(const std::vector<PresenceVerdict>& verdicts,
                                    const Database& db) {
  std::set<std::uint64_t> padding;
  for (const DatabaseEntry& e : db.entries)
    if (e.is_padding) padding.insert(e.key.value);

  StrippedVerdicts out;
  for (const PresenceVerdict& v : verdicts) {
    if (v.key.width == db.n_qubits && padding.count(v.key.value))
      out.excluded_padding.push_back(v.key);
    else
      out.kept.push_back(v);
  }
  return out;
}

}  // namespace qvdb
