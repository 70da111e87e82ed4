#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qvdb/circuit.hpp"
#include "qvdb/matrix.hpp"

namespace qvdb {

inline constexpr int kMaxQubits = 24;       // statevector kernel guard
inline constexpr int kMaxDenseQubits = 10;  // dense-unitary path guard

// 2^n complex amplitudes, unit norm. Gates mutate the array in place; a
// single state must not be shared across threads during mutation.
struct StateVector {
  int n_qubits = 0;
  std::vector<cplx> amps;

  std::size_t size() const { return amps.size(); }
};

using ProbabilityDistribution = std::vector<double>;

struct ShotCounts {
  std::uint64_t shots = 0;
  std::map<std::uint64_t, std::uint64_t> counts;  // basis index -> hits
};

// |s>: every amplitude 1/sqrt(2^n). n in [1, kMaxQubits].
StateVector init_uniform(int n_qubits);

StateVector basis_state(int n_qubits, std::uint64_t index);

// In-place bit-mask kernel. Controlled ops touch only the amplitudes whose
// control bits match the declared polarities; a key-conditioned phase
// touches exactly one index.
void apply_gate(StateVector& state, const GateOp& op);
void apply_circuit(StateVector& state, const Circuit& circuit);

// Analytic amplitude-amplification step: a |-> 2*mean - a. Matches
// build_diffusion's probabilities (the amplitudes differ by a -1 global
// phase).
void reflect_about_mean(StateVector& state);

ProbabilityDistribution probabilities(const StateVector& state);

// Multinomial draw, deterministic per (seed, shots): an mt19937_64 stream
// mapped to 53-bit uniforms, one inverse-CDF lookup per shot. The generator
// and mapping are frozen; identical inputs give identical counts on every
// platform.
ShotCounts sample_counts(const ProbabilityDistribution& dist,
                         std::uint64_t shots, std::uint64_t seed);

// 1 - |<a|b>|: zero iff the states differ only by a global phase.
double state_distance_up_to_global_phase(const StateVector& a,
                                         const StateVector& b);

// Brute-force verification oracle: the circuit's full unitary, accumulated
// gate by gate from the gate definitions alone (no statevector kernel
// involved). Guarded at kMaxDenseQubits.
CMatrix circuit_unitary(const Circuit& circuit);

}  // namespace qvdb
