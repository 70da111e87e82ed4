#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "qvdb/database.hpp"
#include "qvdb/errors.hpp"
#include "qvdb/state.hpp"

using namespace qvdb;

namespace {

Database make_db(int n_qubits, const std::vector<std::string>& keys) {
  Database db;
  db.n_qubits = n_qubits;
  for (const std::string& k : keys)
    db.entries.push_back({.key = BasisKey::from_bits(k)});
  return db;
}

}  // namespace

TEST_CASE("BasisKey maps MSB-first bits to integer values") {
  const BasisKey key = BasisKey::from_bits("101");
  CHECK(key.width == 3);
  CHECK(key.value == 5);
  CHECK(key.bits() == "101");
  CHECK(key.bit(0));
  CHECK(!key.bit(1));
  CHECK(key.bit(2));

  CHECK(BasisKey(4, 6).bits() == "0110");
  CHECK_THROWS_AS(BasisKey::from_bits(""), std::invalid_argument);
  CHECK_THROWS_AS(BasisKey::from_bits("10x"), std::invalid_argument);
  CHECK_THROWS_AS(BasisKey(2, 4), std::invalid_argument);
}

TEST_CASE("database JSON round-trips") {
  const std::string text = R"({
    "qubits": 3,
    "entries": [
      {"key": "111", "label": "alpha"},
      {"key": "101"},
      {"key": "000", "padding": true}
    ]
  })";
  const Database db = Database::from_json(text);
  CHECK(db.n_qubits == 3);
  REQUIRE(db.entries.size() == 3);
  CHECK(db.entries[0].key.bits() == "111");
  CHECK(db.entries[0].label == "alpha");
  CHECK(!db.entries[0].is_padding);
  CHECK(db.entries[2].is_padding);
  CHECK(db.padding_count() == 1);

  const Database again = Database::from_json(db.to_json());
  CHECK(again.n_qubits == db.n_qubits);
  REQUIRE(again.entries.size() == db.entries.size());
  for (std::size_t i = 0; i < db.entries.size(); ++i) {
    CHECK(again.entries[i].key == db.entries[i].key);
    CHECK(again.entries[i].is_padding == db.entries[i].is_padding);
    CHECK(again.entries[i].label == db.entries[i].label);
  }
}

TEST_CASE("database JSON rejects malformed and invalid input") {
  CHECK_THROWS_AS(Database::from_json("{\"qubits\": 3, \"entries\": ["),
                  ParseError);
  CHECK_THROWS_AS(Database::from_json("{}"), std::invalid_argument);
  CHECK_THROWS_AS(Database::from_json("{\"qubits\": \"three\"}"),
                  std::invalid_argument);
  CHECK_THROWS_AS(Database::from_json("{\"qubits\": 0}"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      Database::from_json("{\"qubits\": 3, \"entries\": [{\"key\": 5}]}"),
      std::invalid_argument);

  // The offending key shows up in the message.
  try {
    Database::from_json(
        R"({"qubits": 3, "entries": [{"key": "111"}, {"key": "111"}]})");
    FAIL("expected a duplicate-key error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("111") != std::string::npos);
  }
  try {
    Database::from_json(
        R"({"qubits": 3, "entries": [{"key": "0101"}]})");
    FAIL("expected a width error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("0101") != std::string::npos);
  }
}

TEST_CASE("max_definitive_solutions follows 2^(n-1) - 1") {
  CHECK(max_definitive_solutions(3) == 3);
  CHECK(max_definitive_solutions(1) == 0);
  CHECK(max_definitive_solutions(5) == 15);
  CHECK_THROWS_AS(max_definitive_solutions(0), std::invalid_argument);
}

TEST_CASE("CS oracle marks stored keys with i and the matched query with -1") {
  const Database db = make_db(3, {"111", "101", "110"});
  const CMatrix m =
      circuit_unitary(build_cs_oracle(db, make_query_set({"101"}, 3)));
  CHECK(m.at(5, 5) == cplx{-1.0, 0.0});
  CHECK(m.at(7, 7) == cplx{0.0, 1.0});
  CHECK(m.at(6, 6) == cplx{0.0, 1.0});
  for (std::size_t k : {0u, 1u, 2u, 3u, 4u}) CHECK(m.at(k, k) == cplx{1.0, 0.0});
}

TEST_CASE("CS oracle with an unmatched query phases four states by i") {
  const Database db = make_db(3, {"111", "101", "110"});
  const CMatrix m =
      circuit_unitary(build_cs_oracle(db, make_query_set({"100"}, 3)));
  for (std::size_t k : {4u, 5u, 6u, 7u}) CHECK(m.at(k, k) == cplx{0.0, 1.0});
  for (std::size_t k : {0u, 1u, 2u, 3u}) CHECK(m.at(k, k) == cplx{1.0, 0.0});
}

TEST_CASE("CS oracle accepts an empty database") {
  const CMatrix m = circuit_unitary(
      build_cs_oracle(make_db(3, {}), make_query_set({"101"}, 3)));
  for (std::size_t k = 0; k < 8; ++k)
    CHECK(m.at(k, k) == (k == 5 ? cplx{0.0, 1.0} : cplx{1.0, 0.0}));
}

TEST_CASE("CS oracle validates widths and query sets") {
  const Database db = make_db(3, {"111"});
  CHECK_THROWS_AS(build_cs_oracle(db, QuerySet{}), std::invalid_argument);
  CHECK_THROWS_AS(build_cs_oracle(db, {{BasisKey::from_bits("10")}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_query_set({"101", "101"}, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_query_set({}, 3), std::invalid_argument);
}

TEST_CASE("CS oracles are diagonal for every key pair up to n=4") {
  for (int n = 2; n <= 4; ++n) {
    const std::uint64_t dim = 1ull << n;
    for (std::uint64_t stored = 0; stored < dim; ++stored)
      for (std::uint64_t queried = 0; queried < dim; ++queried) {
        Database db;
        db.n_qubits = n;
        db.entries.push_back({.key = BasisKey(n, stored)});
        QuerySet qs;
        qs.keys.push_back(BasisKey(n, queried));
        const CMatrix m = circuit_unitary(build_cs_oracle(db, qs));
        for (std::size_t r = 0; r < dim; ++r)
          for (std::size_t c = 0; c < dim; ++c)
            if (r != c) CHECK(std::abs(m.at(r, c)) < 1e-14);
        // Composition law: stored == queried accumulates i*i = -1.
        if (stored == queried) CHECK(m.at(stored, stored) == cplx{-1.0, 0.0});
      }
  }
}

TEST_CASE("CS oracle unitary is order-invariant exactly") {
  const Database db = make_db(3, {"111", "101", "110"});
  const Circuit oracle = build_cs_oracle(db, make_query_set({"101", "011"}, 3));

  std::mt19937_64 rng(13);
  std::vector<GateOp> ops = oracle.ops;
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(ops.begin(), ops.end(), rng);
    Circuit shuffled(3);
    for (const GateOp& op : ops) shuffled.append(op);
    CHECK(max_abs_diff(circuit_unitary(oracle), circuit_unitary(shuffled)) ==
          0.0);
  }
}

TEST_CASE("CZ oracle puts -1 exactly on the coded states") {
  const std::vector<BasisKey> three = {BasisKey::from_bits("111"),
                                       BasisKey::from_bits("101"),
                                       BasisKey::from_bits("110")};
  const CMatrix m = circuit_unitary(build_cz_oracle(3, three));
  for (std::size_t k = 0; k < 8; ++k)
    CHECK(m.at(k, k) ==
          (k == 7 || k == 5 || k == 6 ? cplx{-1.0, 0.0} : cplx{1.0, 0.0}));

  CHECK(max_abs_diff(circuit_unitary(build_cz_oracle(3, {})),
                     CMatrix::identity(8)) == 0.0);

  std::vector<BasisKey> four = three;
  four.push_back(BasisKey::from_bits("100"));
  const CMatrix m4 = circuit_unitary(build_cz_oracle(3, four));
  int minus = 0;
  for (std::size_t k = 0; k < 8; ++k)
    if (m4.at(k, k) == cplx{-1.0, 0.0}) ++minus;
  CHECK(minus == 4);

  CHECK_THROWS_AS(build_cz_oracle(3, {three[0], three[0]}),
                  std::invalid_argument);
}

TEST_CASE("pad_database appends the smallest unused keys") {
  const Database padded = pad_database(make_db(3, {"111", "101", "110"}));
  REQUIRE(padded.entries.size() == 4);
  CHECK(padded.entries[0].key.bits() == "111");  // original order preserved
  CHECK(padded.entries[3].key.bits() == "000");
  CHECK(padded.entries[3].is_padding);
  CHECK(!padded.entries[0].is_padding);
}

TEST_CASE("pad_database passes full and oversized databases through") {
  const Database four = make_db(3, {"111", "101", "110", "011"});
  CHECK(pad_database(four).entries.size() == 4);

  const Database six = make_db(3, {"111", "101", "110", "011", "001", "010"});
  CHECK(pad_database(six).entries.size() == 6);
}

TEST_CASE("pad_database is idempotent and collision-free") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const std::uint64_t dim = 1ull << n;
    Database db;
    db.n_qubits = n;
    std::vector<std::uint64_t> values(dim);
    for (std::uint64_t v = 0; v < dim; ++v) values[v] = v;
    std::shuffle(values.begin(), values.end(), rng);
    const std::size_t count = rng() % (dim / 2);
    for (std::size_t i = 0; i < count; ++i)
      db.entries.push_back({.key = BasisKey(n, values[i])});

    const Database once = pad_database(db);
    const Database twice = pad_database(once);
    CHECK(once.entries.size() == dim / 2);
    CHECK(twice.entries.size() == once.entries.size());

    std::set<std::uint64_t> seen;
    for (const DatabaseEntry& e : once.entries)
      CHECK(seen.insert(e.key.value).second);
    for (std::size_t i = 0; i < db.entries.size(); ++i)
      CHECK(once.entries[i].key == db.entries[i].key);
  }
}

TEST_CASE("pad_database_to honors an explicit target") {
  const Database padded = pad_database_to(make_db(3, {"111"}), 6);
  CHECK(padded.entries.size() == 6);
  CHECK(padded.padding_count() == 5);
  CHECK_THROWS_AS(pad_database_to(make_db(3, {"111"}), 9),
                  std::invalid_argument);
}

TEST_CASE("overprovisioning starts past capacity plus one") {
  CHECK(!is_overprovisioned(make_db(3, {"111", "101", "110", "011"})));
  CHECK(is_overprovisioned(make_db(3, {"111", "101", "110", "011", "001"})));
  CHECK(!is_overprovisioned(make_db(3, {})));
}

TEST_CASE("strip_padding_hits filters verdicts on padding entries") {
  Database db = make_db(3, {"111", "101"});
  db.entries.push_back(
      {.key = BasisKey::from_bits("000"), .is_padding = true});

  const std::vector<PresenceVerdict> verdicts = {
      {BasisKey::from_bits("000"), true, 0.4},
      {BasisKey::from_bits("101"), true, 0.5},
  };
  const StrippedVerdicts stripped = strip_padding_hits(verdicts, db);
  REQUIRE(stripped.kept.size() == 1);
  CHECK(stripped.kept[0].key.bits() == "101");
  REQUIRE(stripped.excluded_padding.size() == 1);
  CHECK(stripped.excluded_padding[0].bits() == "000");

  const StrippedVerdicts empty = strip_padding_hits({}, db);
  CHECK(empty.kept.empty());
  CHECK(empty.excluded_padding.empty());
}
