#include "qvdb/state.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "qvdb/errors.hpp"

namespace qvdb {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

struct ControlMasks {
  std::uint64_t positive = 0;
  std::uint64_t negative = 0;

  bool match(std::uint64_t index) const {
    return (index & positive) == positive && (index & negative) == 0;
  }
};

ControlMasks control_masks(const GateOp& op) {
  ControlMasks m;
  for (const ControlSpec& c : op.controls) {
    const std::uint64_t bit = 1ull << c.qubit;
    if (c.polarity == Polarity::Positive)
      m.positive |= bit;
    else
      m.negative |= bit;
  }
  return m;
}

void check_register(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw std::invalid_argument("register width must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(n_qubits));
}

}  // namespace

StateVector init_uniform(int n_qubits) {
  check_register(n_qubits);
  const std::size_t dim = 1ull << n_qubits;
  // 2^(-n/2), split so that the scaling stays a power of two.
  const double amp = std::ldexp(n_qubits % 2 ? kInvSqrt2 : 1.0, -(n_qubits / 2));
  StateVector st;
  st.n_qubits = n_qubits;
  st.amps.assign(dim, cplx{amp, 0.0});
  return st;
}

StateVector basis_state(int n_qubits, std::uint64_t index) {
  check_register(n_qubits);
  const std::size_t dim = 1ull << n_qubits;
  if (index >= dim)
    throw std::invalid_argument("basis index " + std::to_string(index) +
                                " out of range");
  StateVector st;
  st.n_qubits = n_qubits;
  st.amps.assign(dim, cplx{0.0, 0.0});
  st.amps[index] = 1.0;
  return st;
}

void apply_gate(StateVector& state, const GateOp& op) {
  validate_gate(op, state.n_qubits);

  if (op.kind == GateKind::KeyPhase) {
    state.amps[op.key.value] *= phase_factor(op.theta);
    return;
  }

  const ControlMasks ctl = control_masks(op);
  const std::uint64_t dim = state.amps.size();
  const std::uint64_t tbit = 1ull << op.target;

  if (is_phase_family(op.kind)) {
    const cplx f = phase_factor(phase_angle(op));
    for (std::uint64_t i = 0; i < dim; ++i)
      if ((i & tbit) && ctl.match(i)) state.amps[i] *= f;
    return;
  }

  // Pair iteration with the target bit punched out of the loop index.
  const std::uint64_t lo = tbit - 1;
  const std::uint64_t hi = ~lo;
  const std::uint64_t half = dim >> 1;
  if (op.kind == GateKind::X) {
    for (std::uint64_t k = 0; k < half; ++k) {
      const std::uint64_t i0 = ((k & hi) << 1) | (k & lo);
      if (!ctl.match(i0)) continue;
      std::swap(state.amps[i0], state.amps[i0 | tbit]);
    }
    return;
  }

  // H
  for (std::uint64_t k = 0; k < half; ++k) {
    const std::uint64_t i0 = ((k & hi) << 1) | (k & lo);
    if (!ctl.match(i0)) continue;
    const std::uint64_t i1 = i0 | tbit;
    const cplx a = state.amps[i0];
    const cplx b = state.amps[i1];
    state.amps[i0] = (a + b) * kInvSqrt2;
    state.amps[i1] = (a - b) * kInvSqrt2;
  }
}

void apply_circuit(StateVector& state, const Circuit& circuit) {
  if (circuit.n_qubits != state.n_qubits)
    throw std::invalid_argument("circuit register width " +
                                std::to_string(circuit.n_qubits) +
                                " does not match state width " +
                                std::to_string(state.n_qubits));
  for (const GateOp& op : circuit.ops) apply_gate(state, op);
}

void reflect_about_mean(StateVector& state) {
  cplx sum = 0.0;
  for (const cplx& a : state.amps) sum += a;
  const cplx mean = sum / static_cast<double>(state.amps.size());
  for (cplx& a : state.amps) a = 2.0 * mean - a;
}

ProbabilityDistribution probabilities(const StateVector& state) {
  ProbabilityDistribution dist(state.amps.size());
  for (std::size_t i = 0; i < state.amps.size(); ++i)
    dist[i] = std::norm(state.amps[i]);
  return dist;
}

ShotCounts sample_counts(const ProbabilityDistribution& dist,
                         std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be at least 1");
  if (dist.empty()) throw std::invalid_argument("empty distribution");

  std::vector<double> cdf(dist.size());
  double total = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    total += dist[i];
    cdf[i] = total;
  }

  ShotCounts out;
  out.shots = shots;
  std::mt19937_64 rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
    if (idx == cdf.size()) idx = cdf.size() - 1;
    ++out.counts[idx];
  }
  return out;
}

double state_distance_up_to_global_phase(const StateVector& a,
                                         const StateVector& b) {
  if (a.n_qubits != b.n_qubits || a.amps.size() != b.amps.size())
    throw std::invalid_argument("state sizes differ");
  cplx overlap = 0.0;
  for (std::size_t i = 0; i < a.amps.size(); ++i)
    overlap += std::conj(a.amps[i]) * b.amps[i];
  return 1.0 - std::abs(overlap);
}

// ---- dense verification path -----------------------------------------
//
// Accumulates U <- G * U one gate at a time, where each G is taken straight
// from the gate definition and applied as row operations on U. This shares
// no code with the statevector kernel above.

namespace {

void dense_apply(CMatrix& u, const GateOp& op) {
  const std::size_t dim = u.dim;

  if (op.kind == GateKind::KeyPhase) {
    const cplx f = phase_factor(op.theta);
    for (std::size_t c = 0; c < dim; ++c) u.at(op.key.value, c) *= f;
    return;
  }

  const ControlMasks ctl = control_masks(op);
  const std::uint64_t tbit = 1ull << op.target;

  if (is_phase_family(op.kind)) {
    const cplx f = phase_factor(phase_angle(op));
    for (std::size_t r = 0; r < dim; ++r)
      if ((r & tbit) && ctl.match(r))
        for (std::size_t c = 0; c < dim; ++c) u.at(r, c) *= f;
    return;
  }

  for (std::size_t r0 = 0; r0 < dim; ++r0) {
    if (r0 & tbit) continue;
    if (!ctl.match(r0)) continue;
    const std::size_t r1 = r0 | tbit;
    for (std::size_t c = 0; c < dim; ++c) {
      const cplx a = u.at(r0, c);
      const cplx b = u.at(r1, c);
      if (op.kind == GateKind::X) {
        u.at(r0, c) = b;
        u.at(r1, c) = a;
      } else {  // H
        u.at(r0, c) = (a + b) * kInvSqrt2;
        u.at(r1, c) = (a - b) * kInvSqrt2;
      }
    }
  }
}

}  // namespace

CMatrix circuit_unitary(const Circuit& circuit) {
  if (circuit.n_qubits < 1) throw std::invalid_argument("empty register");
  if (circuit.n_qubits > kMaxDenseQubits)
    throw ResourceLimitError("dense-unitary path is limited to " +
                             std::to_string(kMaxDenseQubits) +
                             " qubits, got " +
                             std::to_string(circuit.n_qubits));
  CMatrix u = CMatrix::identity(1ull << circuit.n_qubits);
  for (const GateOp& op : circuit.ops) {
    validate_gate(op, circuit.n_qubits);
    dense_apply(u, op);
  }
  return u;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.dim != b.dim) throw std::invalid_argument("matrix sizes differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    worst = std::max(worst, std::abs(a.data[i] - b.data[i]));
  return worst;
}

double matrix_distance_up_to_global_phase(const CMatrix& a, const CMatrix& b) {
  if (a.dim != b.dim) throw std::invalid_argument("matrix sizes differ");
  std::size_t ref = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < b.data.size(); ++i) {
    const double mag = std::abs(b.data[i]);
    if (mag > best) {
      best = mag;
      ref = i;
    }
  }
  if (best == 0.0) return max_abs_diff(a, b);
  cplx align = a.data[ref] / b.data[ref];
  const double mag = std::abs(align);
  if (mag == 0.0) return max_abs_diff(a, b);
  align /= mag;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    worst = std::max(worst, std::abs(a.data[i] - align * b.data[i]));
  return worst;
}

}  // namespace qvdb
