#include "qvdb/engine.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace qvdb {

namespace {

void validate_config(const SearchConfig& config) {
  if (config.iterations < 1)
    throw std::invalid_argument("iterations must be at least 1");
  if (config.shots && *config.shots < 1)
    throw std::invalid_argument("shots must be at least 1");
  if (!(config.presence_threshold > 1.0))
    throw std::invalid_argument("presence threshold must be greater than 1");
}

void check_search_width(int n_qubits) {
  if (n_qubits < 2)
    throw std::invalid_argument("search needs at least 2 qubits");
}

ProbabilityDistribution empirical_frequencies(const ShotCounts& counts,
                                              std::size_t dim) {
  ProbabilityDistribution freq(dim, 0.0);
  for (const auto& [index, hits] : counts.counts)
    freq[index] = static_cast<double>(hits) / static_cast<double>(counts.shots);
  return freq;
}

SearchReport run_pipeline(int n_qubits, const Circuit& oracle,
                          const QuerySet* queries, const SearchConfig& config) {
  StateVector state = init_uniform(n_qubits);
  const Circuit diffusion = build_diffusion(n_qubits);
  for (int i = 0; i < config.iterations; ++i) {
    apply_circuit(state, oracle);
    apply_circuit(state, diffusion);
  }

  SearchReport report;
  report.n_qubits = n_qubits;
  report.iterations = config.iterations;
  report.shots = config.shots;
  report.seed = config.seed;
  report.distribution = probabilities(state);
  if (config.shots)
    report.counts = sample_counts(report.distribution, *config.shots, config.seed);

  if (queries) {
    // Verdicts follow what a measurement would show: exact probabilities
    // without sampling, empirical frequencies with it.
    ProbabilityDistribution freq;
    const ProbabilityDistribution* basis = &report.distribution;
    if (report.counts) {
      freq = empirical_frequencies(*report.counts, report.distribution.size());
      basis = &freq;
    }
    report.verdicts = classify(*basis, *queries, config.presence_threshold);
  }
  return report;
}

}  // namespace

SearchReport grover_search(const Database& db, const QuerySet& queries,
                           const SearchConfig& config) {
  validate_config(config);
  check_search_width(db.n_qubits);
  const Circuit oracle = build_cs_oracle(db, queries);
  SearchReport report = run_pipeline(db.n_qubits, oracle, &queries, config);
  report.db_size = db.entries.size();
  report.padding_count = db.padding_count();
  report.overprovisioned = is_overprovisioned(db);

  // Classical filter: a query that lands on a padding entry is not a real
  // hit, so it moves out of the verdict list.
  StrippedVerdicts stripped = strip_padding_hits(report.verdicts, db);
  report.verdicts = std::move(stripped.kept);
  report.padding_excluded = std::move(stripped.excluded_padding);
  return report;
}

SearchReport grover_search_cz(int n_qubits, const std::vector<BasisKey>& keys,
                              const SearchConfig& config) {
  validate_config(config);
  check_search_width(n_qubits);
  const Circuit oracle = build_cz_oracle(n_qubits, keys);
  SearchReport report = run_pipeline(n_qubits, oracle, nullptr, config);
  report.db_size = keys.size();
  return report;
}

std::vector<PresenceVerdict> classify(const ProbabilityDistribution& dist,
                                      const QuerySet& queries,
                                      double threshold) {
  if (!(threshold > 1.0))
    throw std::invalid_argument("presence threshold must be greater than 1");
  std::set<std::uint64_t> query_indices;
  for (const BasisKey& q : queries.keys) {
    if (q.value >= dist.size())
      throw std::invalid_argument("query key \"" + q.bits() +
                                  "\" outside the distribution");
    query_indices.insert(q.value);
  }

  double best_other = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i)
    if (!query_indices.count(i)) best_other = std::max(best_other, dist[i]);

  std::vector<PresenceVerdict> verdicts;
  verdicts.reserve(queries.keys.size());
  for (const BasisKey& q : queries.keys) {
    PresenceVerdict v;
    v.key = q;
    v.probability = dist[q.value];
    v.present = v.probability >= threshold * best_other;
    verdicts.push_back(v);
  }
  return verdicts;
}

int optimal_iterations(int n_qubits, std::uint64_t expected_solutions) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw std::invalid_argument("register width out of range");
  const std::uint64_t dim = 1ull << n_qubits;
  if (expected_solutions < 1 || expected_solutions > dim)
    throw std::invalid_argument("expected solutions must be in [1, 2^n]");
  const double raw = std::floor(
      kPi / 4.0 * std::sqrt(static_cast<double>(dim) /
                            static_cast<double>(expected_solutions)));
  return std::max(1, static_cast<int>(raw));
}

Circuit build_search_circuit(const Database& db, const QuerySet& queries,
                             int iterations) {
  if (iterations < 1)
    throw std::invalid_argument("iterations must be at least 1");
  check_search_width(db.n_qubits);
  const Circuit oracle = build_cs_oracle(db, queries);
  const Circuit diffusion = build_diffusion(db.n_qubits);
  Circuit full(db.n_qubits);
  for (int q = 0; q < db.n_qubits; ++q) full.append(h(q));
  for (int i = 0; i < iterations; ++i) {
    full.append(oracle);
    full.append(diffusion);
  }
  return full;
}

namespace {

Database demo_database(const std::vector<std::string>& bits) {
  Database db;
  db.n_qubits = 3;
  for (const std::string& b : bits)
    db.entries.push_back({.key = BasisKey::from_bits(b)});
  return db;
}

std::vector<BasisKey> demo_keys(const std::vector<std::string>& bits) {
  std::vector<BasisKey> keys;
  for (const std::string& b : bits) keys.push_back(BasisKey::from_bits(b));
  return keys;
}

}  // namespace

std::vector<std::string> scenario_names() {
  return {"fig2", "fig3", "fig4",  "fig5",  "fig6",
          "fig7", "fig8", "fig9", "fig10", "fig11"};
}

SearchReport run_scenario(const std::string& name,
                          const ScenarioOverrides& overrides) {
  SearchConfig config;
  if (name == "fig10" || name == "fig11") config.shots = 4096;
  if (overrides.shots) config.shots = *overrides.shots;
  if (overrides.seed) config.seed = *overrides.seed;

  const Database stored = demo_database({"111", "101", "110"});
  const Database overfull = demo_database({"111", "101", "110", "011", "001"});

  if (name == "fig2")
    return grover_search_cz(3, demo_keys({"111", "101", "110"}), config);
  if (name == "fig3")
    return grover_search_cz(3, demo_keys({"111", "101", "110", "100"}), config);
  if (name == "fig4" || name == "fig10")
    return grover_search(stored, make_query_set({"101"}, 3), config);
  if (name == "fig5" || name == "fig11")
    return grover_search(stored, make_query_set({"100"}, 3), config);
  if (name == "fig6")
    return grover_search(stored, make_query_set({"101", "110"}, 3), config);
  if (name == "fig7")
    return grover_search(pad_database(stored), make_query_set({"101"}, 3),
                         config);
  if (name == "fig8")
    return grover_search(overfull, make_query_set({"101"}, 3), config);
  if (name == "fig9")
    return grover_search(overfull, make_query_set({"010"}, 3), config);
  throw std::invalid_argument("unknown scenario \"" + name + "\"");
}

std::string report_to_json(const SearchReport& report) {
  nlohmann::json doc;
  doc["qubits"] = report.n_qubits;
  doc["iterations"] = report.iterations;
  if (report.shots)
    doc["shots"] = *report.shots;
  else
    doc["shots"] = nullptr;
  doc["seed"] = report.seed;

  nlohmann::json probs = nlohmann::json::object();
  for (std::size_t i = 0; i < report.distribution.size(); ++i)
    probs[BasisKey(report.n_qubits, i).bits()] = report.distribution[i];
  doc["probabilities"] = std::move(probs);

  if (report.counts) {
    nlohmann::json counts = nlohmann::json::object();
    for (std::size_t i = 0; i < report.distribution.size(); ++i) {
      const auto it = report.counts->counts.find(i);
      counts[BasisKey(report.n_qubits, i).bits()] =
          it == report.counts->counts.end() ? 0ull : it->second;
    }
    doc["counts"] = std::move(counts);
  }

  nlohmann::json verdicts = nlohmann::json::object();
  for (const PresenceVerdict& v : report.verdicts)
    verdicts[v.key.bits()] = v.present ? "present" : "absent";
  doc["verdicts"] = std::move(verdicts);

  doc["padding_excluded"] = nlohmann::json::array();
  for (const BasisKey& k : report.padding_excluded)
    doc["padding_excluded"].push_back(k.bits());

  doc["overprovisioned"] = report.overprovisioned;
  return doc.dump(2) + "\n";
}

}  // namespace qvdb
