#pragma once

#include <cstdint>
#include <random>

#include "qvdb/state.hpp"

namespace qvdb {

struct VerifyOptions {
  int max_qubits = 6;  // capped at kMaxDenseQubits
  int trials = 100;
  std::uint64_t seed = 1;
};

// Worst observed deviation per suite, plus the overall pass flag.
struct VerifyResult {
  double statevector_vs_dense = 0.0;    // tolerance 1e-10
  double diffusion_vs_reflection = 0.0; // tolerance 1e-12
  double mc_phase_decomposition = 0.0;  // tolerance 1e-10
  double oracle_order_invariance = 0.0; // must be exactly 0
  bool pass = false;
};

inline constexpr double kTolStateVsDense = 1e-10;
inline constexpr double kTolDiffusion = 1e-12;
inline constexpr double kTolDecomposition = 1e-10;

// Randomized equivalence suites: the bit-mask kernel against the dense
// unitary, gate-level diffusion against the analytic reflection, parity
// network decompositions against the ideal multi-controlled phase, and
// gate-order invariance of the diagonal oracles.
VerifyResult run_verification(const VerifyOptions& opts);

// Random circuit over {H, X, Z, S, Sdg, Phase, KeyPhase} with up to two
// controls per gate. Shared input generator for the suites above and for
// property tests.
Circuit random_circuit(int n_qubits, int max_gates, std::mt19937_64& rng);

// Haar-ish random normalized state (Gaussian components).
StateVector random_state(int n_qubits, std::mt19937_64& rng);

}  // namespace qvdb
