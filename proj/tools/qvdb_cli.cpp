// qvdb: Grover search over quarter-turn phase oracles, from the shell.
//
// Subcommands: search, scenario, export-qasm, verify, pad. All output is
// JSON (default) or an ASCII histogram; exit codes are 0 on success, 2 for
// validation or usage errors, 3 for I/O errors.

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qvdb.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailedCheck = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

using DbPtr = std::unique_ptr<qvdb_database, decltype(&qvdb_database_free)>;
using ReportPtr = std::unique_ptr<qvdb_report, decltype(&qvdb_report_free)>;
using CircuitPtr = std::unique_ptr<qvdb_circuit, decltype(&qvdb_circuit_free)>;

int report_error(qvdb_status status) {
  std::cerr << "error: " << qvdb_last_error() << "\n";
  return status == QVDB_ERR_IO ? kExitIo : kExitUsage;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open \"" << out_path << "\" for writing\n";
    return kExitIo;
  }
  out << text;
  out.flush();
  if (!out.good()) {
    std::cerr << "error: failed writing \"" << out_path << "\"\n";
    return kExitIo;
  }
  return kExitOk;
}

std::string iso_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string bits_of(std::uint64_t value, int n_qubits) {
  std::string s(static_cast<std::size_t>(n_qubits), '0');
  for (int i = 0; i < n_qubits; ++i)
    if ((value >> (n_qubits - 1 - i)) & 1) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

void warn_low_shots(std::int64_t shots, double threshold) {
  if (shots <= 0) return;
  const double floor_shots = 100.0 / (threshold * threshold);
  if (static_cast<double>(shots) < floor_shots)
    std::cerr << "warning: " << shots << " shots is below 100/threshold^2 = "
              << floor_shots << "; verdicts may be unstable\n";
}

void print_histogram(const qvdb_report* rep, const char* note) {
  const int n = qvdb_report_qubits(rep);
  const std::size_t dim = qvdb_report_num_states(rep);
  std::vector<double> probs(dim);
  qvdb_report_probabilities(rep, probs.data(), dim);

  const bool sampled = qvdb_report_has_counts(rep) != 0;
  const std::uint64_t shots = qvdb_report_shots(rep);
  std::vector<std::uint64_t> counts;
  if (sampled) {
    counts.resize(dim);
    qvdb_report_counts(rep, counts.data(), dim);
  }

  std::cout << "qubits=" << n << " iterations=" << qvdb_report_iterations(rep);
  if (sampled)
    std::cout << " shots=" << shots << " seed=" << qvdb_report_seed(rep);
  if (note) std::cout << "  [" << note << "]";
  std::cout << "\n";

  // Bars follow whatever the verdicts were based on: empirical frequencies
  // when sampling, the exact distribution otherwise.
  std::vector<double> bar_basis(dim);
  double bar_max = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    bar_basis[i] = sampled && shots > 0
                       ? static_cast<double>(counts[i]) / static_cast<double>(shots)
                       : probs[i];
    bar_max = std::max(bar_max, bar_basis[i]);
  }

  char line[64];
  for (std::size_t i = 0; i < dim; ++i) {
    const int width =
        bar_max > 0.0
            ? static_cast<int>(std::lround(40.0 * bar_basis[i] / bar_max))
            : 0;
    std::snprintf(line, sizeof line, "%s  %.5f", bits_of(i, n).c_str(),
                  probs[i]);
    std::cout << line;
    if (sampled) {
      std::snprintf(line, sizeof line, "  %6" PRIu64, counts[i]);
      std::cout << line;
    }
    std::cout << "  " << std::string(static_cast<std::size_t>(width), '#')
              << "\n";
  }

  const std::size_t n_verdicts = qvdb_report_num_verdicts(rep);
  for (std::size_t i = 0; i < n_verdicts; ++i) {
    std::snprintf(line, sizeof line, "%s %s  p=%.5f",
                  qvdb_report_verdict_present(rep, i) ? "present" : "absent ",
                  qvdb_report_verdict_key(rep, i),
                  qvdb_report_verdict_probability(rep, i));
    std::cout << line << "\n";
  }

  const std::size_t n_padding = qvdb_report_num_padding_excluded(rep);
  if (n_padding > 0) {
    std::cout << "padding excluded:";
    for (std::size_t i = 0; i < n_padding; ++i)
      std::cout << " " << qvdb_report_padding_excluded_key(rep, i);
    std::cout << "\n";
  }
  if (qvdb_report_overprovisioned(rep))
    std::cout << "note: database exceeds the definitive-capacity bound\n";
}

int emit_report(const qvdb_report* rep, const std::vector<std::string>& echo,
                const std::string& format, const char* note) {
  if (format == "hist") {
    print_histogram(rep, note);
    return kExitOk;
  }
  char* raw = nullptr;
  if (qvdb_status st = qvdb_report_to_json(rep, &raw)) return report_error(st);
  nlohmann::json doc = nlohmann::json::parse(raw);
  qvdb_string_free(raw);
  doc["command"] = echo;
  doc["version"] = qvdb_version();
  doc["timestamp"] = iso_timestamp();
  if (note) doc["note"] = note;
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

struct SearchArgs {
  std::string db_path;
  std::vector<std::string> keys;
  int iterations = 1;
  std::int64_t shots = 0;
  std::uint64_t seed = 1;
  double threshold = 2.0;
  bool pad = false;
  std::string format = "json";
};

int run_search(const SearchArgs& args, const std::vector<std::string>& echo) {
  const auto text = read_file(args.db_path);
  if (!text) {
    std::cerr << "error: cannot read \"" << args.db_path << "\"\n";
    return kExitIo;
  }

  qvdb_database* raw_db = nullptr;
  if (qvdb_status st = qvdb_database_from_json(text->c_str(), &raw_db))
    return report_error(st);
  DbPtr db(raw_db, &qvdb_database_free);

  qvdb_search_options opts;
  qvdb_search_options_init(&opts);
  opts.iterations = args.iterations;
  opts.shots = args.shots;
  opts.seed = args.seed;
  opts.presence_threshold = args.threshold;
  opts.pad = args.pad ? 1 : 0;
  warn_low_shots(args.shots, args.threshold);

  std::vector<const char*> keys;
  for (const std::string& k : args.keys) keys.push_back(k.c_str());

  qvdb_report* raw_rep = nullptr;
  if (qvdb_status st =
          qvdb_search(db.get(), keys.data(), keys.size(), &opts, &raw_rep))
    return report_error(st);
  ReportPtr rep(raw_rep, &qvdb_report_free);
  return emit_report(rep.get(), echo, args.format, nullptr);
}

struct ScenarioArgs {
  std::string name;
  std::int64_t shots = -1;  // -1: preset default
  std::int64_t seed = -1;
  std::string format = "json";
};

int run_scenario(const ScenarioArgs& args,
                 const std::vector<std::string>& echo) {
  const std::int64_t* shots = args.shots >= 0 ? &args.shots : nullptr;
  std::uint64_t seed_value = 0;
  const std::uint64_t* seed = nullptr;
  if (args.seed >= 0) {
    seed_value = static_cast<std::uint64_t>(args.seed);
    seed = &seed_value;
  }
  if (shots) warn_low_shots(*shots, 2.0);

  qvdb_report* raw_rep = nullptr;
  if (qvdb_status st =
          qvdb_run_scenario(args.name.c_str(), shots, seed, &raw_rep))
    return report_error(st);
  ReportPtr rep(raw_rep, &qvdb_report_free);

  // Sampled presets draw from the exact distribution, no device noise
  // model; say so rather than imply device parity.
  const char* note =
      qvdb_report_has_counts(rep.get()) ? "noiseless simulation" : nullptr;
  return emit_report(rep.get(), echo, args.format, note);
}

struct ExportArgs {
  std::string db_path;
  std::vector<std::string> keys;
  int iterations = 1;
  std::string out_path;
};

int run_export_qasm(const ExportArgs& args) {
  const auto text = read_file(args.db_path);
  if (!text) {
    std::cerr << "error: cannot read \"" << args.db_path << "\"\n";
    return kExitIo;
  }

  qvdb_database* raw_db = nullptr;
  if (qvdb_status st = qvdb_database_from_json(text->c_str(), &raw_db))
    return report_error(st);
  DbPtr db(raw_db, &qvdb_database_free);

  std::vector<const char*> keys;
  for (const std::string& k : args.keys) keys.push_back(k.c_str());

  qvdb_circuit* raw_circuit = nullptr;
  if (qvdb_status st = qvdb_build_search_circuit(
          db.get(), keys.data(), keys.size(), args.iterations, &raw_circuit))
    return report_error(st);
  CircuitPtr circuit(raw_circuit, &qvdb_circuit_free);

  char* qasm = nullptr;
  if (qvdb_status st = qvdb_circuit_to_qasm(circuit.get(), &qasm))
    return report_error(st);
  const std::string body(qasm);
  qvdb_string_free(qasm);
  return write_output(body, args.out_path);
}

struct VerifyArgs {
  int max_qubits = 6;
  int trials = 100;
  std::uint64_t seed = 1;
};

int run_verify(const VerifyArgs& args) {
  if (args.max_qubits < 2 || args.max_qubits > 10) {
    std::cerr << "error: --n must be in [2, 10] (dense-path guard)\n";
    return kExitUsage;
  }
  if (args.trials < 1) {
    std::cerr << "error: --trials must be at least 1\n";
    return kExitUsage;
  }

  qvdb_verify_result result;
  if (qvdb_status st =
          qvdb_verify(args.max_qubits, args.trials, args.seed, &result))
    return report_error(st);

  char line[96];
  std::snprintf(line, sizeof line, "statevector vs dense unitary  max|d|=%.3e",
                result.statevector_vs_dense);
  std::cout << line << "\n";
  std::snprintf(line, sizeof line, "diffusion vs mean reflection  max|d|=%.3e",
                result.diffusion_vs_reflection);
  std::cout << line << "\n";
  std::snprintf(line, sizeof line, "phase decomposition           max|d|=%.3e",
                result.mc_phase_decomposition);
  std::cout << line << "\n";
  std::snprintf(line, sizeof line, "oracle order invariance       max|d|=%.3e",
                result.oracle_order_invariance);
  std::cout << line << "\n";
  std::cout << (result.pass ? "PASS" : "FAIL") << "\n";
  return result.pass ? kExitOk : kExitFailedCheck;
}

struct PadArgs {
  std::string db_path;
  std::int64_t size = -1;  // -1: default target 2^(n-1)
  std::string out_path;
};

int run_pad(const PadArgs& args) {
  const auto text = read_file(args.db_path);
  if (!text) {
    std::cerr << "error: cannot read \"" << args.db_path << "\"\n";
    return kExitIo;
  }

  qvdb_database* raw_db = nullptr;
  if (qvdb_status st = qvdb_database_from_json(text->c_str(), &raw_db))
    return report_error(st);
  DbPtr db(raw_db, &qvdb_database_free);

  qvdb_database* raw_padded = nullptr;
  const qvdb_status st =
      args.size >= 0
          ? qvdb_database_pad_to(db.get(), static_cast<std::size_t>(args.size),
                                 &raw_padded)
          : qvdb_database_pad(db.get(), &raw_padded);
  if (st) return report_error(st);
  DbPtr padded(raw_padded, &qvdb_database_free);

  char* json_text = nullptr;
  if (qvdb_status st2 = qvdb_database_to_json(padded.get(), &json_text))
    return report_error(st2);
  const std::string body(json_text);
  qvdb_string_free(json_text);
  return write_output(body, args.out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grover search over a phase-coded key database"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qvdb_version()));

  SearchArgs search_args;
  CLI::App* search = app.add_subcommand(
      "search", "Search a database file for one or more query keys");
  search->add_option("db", search_args.db_path, "Database JSON file")
      ->required();
  search->add_option("keys", search_args.keys, "Query keys, MSB-first bits")
      ->required();
  search->add_option("--iterations", search_args.iterations,
                     "Grover rounds (default 1)");
  search->add_option("--shots", search_args.shots,
                     "Sample this many shots; 0 reports the exact distribution");
  search->add_option("--seed", search_args.seed, "Sampling seed (default 1)");
  search->add_option("--threshold", search_args.threshold,
                     "Presence margin over the best non-query state");
  search->add_flag("--pad", search_args.pad,
                   "Pad the database to 2^(n-1) entries before searching");
  search->add_option("--format", search_args.format, "json or hist")
      ->check(CLI::IsMember({"json", "hist"}));

  ScenarioArgs scenario_args;
  CLI::App* scenario =
      app.add_subcommand("scenario", "Run a named preset (fig2..fig11)");
  scenario->add_option("name", scenario_args.name, "Preset name")->required();
  scenario->add_option("--shots", scenario_args.shots,
                       "Override the preset shot count");
  scenario->add_option("--seed", scenario_args.seed,
                       "Override the sampling seed");
  scenario->add_option("--format", scenario_args.format, "json or hist")
      ->check(CLI::IsMember({"json", "hist"}));

  ExportArgs export_args;
  CLI::App* export_qasm = app.add_subcommand(
      "export-qasm", "Emit the full search circuit as OpenQASM 2.0");
  export_qasm->add_option("db", export_args.db_path, "Database JSON file")
      ->required();
  export_qasm->add_option("keys", export_args.keys, "Query keys")->required();
  export_qasm->add_option("--iterations", export_args.iterations,
                          "Grover rounds (default 1)");
  export_qasm->add_option("--out", export_args.out_path,
                          "Output path (default: stdout)");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand(
      "verify", "Brute-force oracle suite: fast kernel vs dense unitaries");
  verify->add_option("--n", verify_args.max_qubits,
                     "Largest register to test (2..10, default 6)");
  verify->add_option("--trials", verify_args.trials,
                     "Random trials (default 100)");
  verify->add_option("--seed", verify_args.seed, "Trial seed (default 1)");

  PadArgs pad_args;
  CLI::App* pad =
      app.add_subcommand("pad", "Print the padded database as JSON");
  pad->add_option("db", pad_args.db_path, "Database JSON file")->required();
  pad->add_option("--size", pad_args.size,
                  "Explicit target entry count (default 2^(n-1))");
  pad->add_option("--out", pad_args.out_path, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  std::vector<std::string> echo;
  for (int i = 1; i < argc; ++i) echo.emplace_back(argv[i]);

  if (search->parsed()) return run_search(search_args, echo);
  if (scenario->parsed()) return run_scenario(scenario_args, echo);
  if (export_qasm->parsed()) return run_export_qasm(export_args);
  if (verify->parsed()) return run_verify(verify_args);
  if (pad->parsed()) return run_pad(pad_args);
  return kExitUsage;
}
