#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qvdb/database.hpp"
#include "qvdb/state.hpp"

namespace qvdb {

struct SearchConfig {
  int iterations = 1;
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 1;
  double presence_threshold = 2.0;  // must stay > 1
};

struct SearchReport {
  int n_qubits = 0;
  int iterations = 1;
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 1;
  ProbabilityDistribution distribution;  // exact, basis index order
  std::optional<ShotCounts> counts;
  std::vector<PresenceVerdict> verdicts;
  std::vector<BasisKey> padding_excluded;
  std::size_t db_size = 0;
  std::size_t padding_count = 0;
  bool overprovisioned = false;
};

// One full pipeline run: uniform preparation, then per iteration the stored
// keys plus queries as quarter-turn phases followed by the diffusion step.
// Verdicts come from the exact distribution, or from empirical frequencies
// when sampling is requested; verdicts on padding entries are moved to
// padding_excluded.
SearchReport grover_search(const Database& db, const QuerySet& queries,
                           const SearchConfig& config);

// Half-turn baseline: every listed key is a solution, so the report carries
// no verdicts.
SearchReport grover_search_cz(int n_qubits, const std::vector<BasisKey>& keys,
                              const SearchConfig& config);

// A query is Present iff its probability is at least threshold times the
// best probability among states outside the query set. Ratio-based, so any
// positive rescaling of `dist` leaves verdicts unchanged.
std::vector<PresenceVerdict> classify(const ProbabilityDistribution& dist,
                                      const QuerySet& queries,
                                      double threshold);

// max(1, floor(pi/4 * sqrt(2^n / expected_solutions))).
int optimal_iterations(int n_qubits, std::uint64_t expected_solutions);

// The full circuit behind grover_search, for export.
Circuit build_search_circuit(const Database& db, const QuerySet& queries,
                             int iterations);

struct ScenarioOverrides {
  std::optional<std::uint64_t> shots;
  std::optional<std::uint64_t> seed;
};

// Fixed demonstration presets fig2..fig11 on a 3-qubit register; fig10 and
// fig11 sample 4096 shots unless overridden. Unknown names throw.
SearchReport run_scenario(const std::string& name,
                          const ScenarioOverrides& overrides = {});

std::vector<std::string> scenario_names();

// Serializes a report to the stable JSON schema consumed by the CLI.
std::string report_to_json(const SearchReport& report);

}  // namespace qvdb
