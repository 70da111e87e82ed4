#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qvdb/key.hpp"

namespace qvdb {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// e^{i theta}, with the quarter-turn angles pinned to exact axis values so
// that two stacked quarter turns compose to a half turn without rounding.
cplx phase_factor(double theta);

enum class Polarity { Positive, Negative };

// A control fires on |1> when Positive, on |0> when Negative (a negative
// control is the plain control sandwiched between NOT gates).
struct ControlSpec {
  int qubit = 0;
  Polarity polarity = Polarity::Positive;

  friend bool operator==(const ControlSpec&, const ControlSpec&) = default;
};

enum class GateKind { H, X, Z, S, Sdg, Phase, KeyPhase };

// One circuit operation. H/X/Z/S/Sdg/Phase act on `target`, gated by
// `controls`. KeyPhase multiplies the amplitude of the single basis state
// `key` by e^{i theta}; it uses neither `target` nor `controls` and its key
// width must equal the circuit's qubit count.
struct GateOp {
  GateKind kind = GateKind::H;
  int target = 0;
  double theta = 0.0;  // Phase and KeyPhase only
  BasisKey key;        // KeyPhase only
  std::vector<ControlSpec> controls;
};

GateOp h(int target);
GateOp x(int target);
GateOp z(int target);
GateOp s(int target);
GateOp sdg(int target);
GateOp phase(double theta, int target);
GateOp key_phase(const BasisKey& key, double theta);
GateOp controlled(GateOp op, std::vector<ControlSpec> controls);

// True for the diagonal single-qubit family Z/S/Sdg/Phase.
bool is_phase_family(GateKind kind);

// Rotation angle of a phase-family gate: Z is pi, S is pi/2, Sdg is -pi/2.
double phase_angle(const GateOp& op);

// Throws std::invalid_argument for out-of-range qubits, duplicated
// control/target qubits, or a KeyPhase whose key width differs from n_qubits.
void validate_gate(const GateOp& op, int n_qubits);

struct Circuit {
  int n_qubits = 0;
  std::vector<GateOp> ops;

  Circuit() = default;
  explicit Circuit(int n_qubits_);

  void append(GateOp op);
  void append(const Circuit& fragment);
};

// Rewrites a KeyPhase into {X, multi-controlled Phase}: the phase lands on
// qubit 0, every other qubit becomes a control whose polarity is its key
// bit, and a key with bit 0 clear gets the phase gate sandwiched in X(0).
Circuit lower_key_phase(const GateOp& op);

// Reflection about the uniform state: H on all qubits, X on all, a phase
// flip of the all-ones state, X on all, H on all. Equals the textbook
// reflection up to a -1 global phase.
Circuit build_diffusion(int n_qubits);

// Ancilla-free network for Phase(theta) under the given controls, over
// single-qubit Phase, cx and x only. Negative controls become X sandwiches;
// the positive core applies Phase(+-theta/2^k) to the parity of every
// non-empty subset of the k+1 involved wires, walked in Gray-code order.
std::vector<GateOp> decompose_mc_phase(double theta,
                                       const std::vector<ControlSpec>& controls,
                                       int target);

// OpenQASM 2.0 text: qelib1.inc header, registers q[n]/c[n], gate lines over
// {h, x, z, s, sdg, u1, cu1, cx}, terminal per-qubit measurement.
std::string export_qasm(const Circuit& circuit);

}  // namespace qvdb
