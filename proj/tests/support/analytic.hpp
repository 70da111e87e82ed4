#pragma once

// Test-side analytic model of one Grover round, kept deliberately free of
// library code. Oracle output amplitudes are phase_k / sqrt(dim); the
// diffusion step sends a to 2*mean - a. Expected values asserted elsewhere
// in the suite were frozen from this model computed by hand.

#include <complex>
#include <cstdint>
#include <vector>

namespace testsupport {

using cplx = std::complex<double>;

// Per-state oracle phases for a CS-coded database plus query list: every
// stored key and every queried key contributes a factor i at its index.
inline std::vector<cplx> cs_phases(int n_qubits,
                                   const std::vector<std::uint64_t>& db_keys,
                                   const std::vector<std::uint64_t>& queries) {
  std::vector<cplx> phases(std::size_t{1} << n_qubits, cplx{1.0, 0.0});
  const cplx i{0.0, 1.0};
  for (std::uint64_t k : db_keys) phases[k] *= i;
  for (std::uint64_t q : queries) phases[q] *= i;
  return phases;
}

inline std::vector<cplx> cz_phases(int n_qubits,
                                   const std::vector<std::uint64_t>& keys) {
  std::vector<cplx> phases(std::size_t{1} << n_qubits, cplx{1.0, 0.0});
  for (std::uint64_t k : keys) phases[k] *= -1.0;
  return phases;
}

// Probabilities after uniform preparation, the given oracle phases, and one
// reflection about the mean.
inline std::vector<double> one_round_probabilities(
    const std::vector<cplx>& phases) {
  const std::size_t dim = phases.size();
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));

  cplx mean{0.0, 0.0};
  for (const cplx& p : phases) mean += p * amp;
  mean /= static_cast<double>(dim);

  std::vector<double> probs(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const cplx after = 2.0 * mean - phases[k] * amp;
    probs[k] = std::norm(after);
  }
  return probs;
}

}  // namespace testsupport
