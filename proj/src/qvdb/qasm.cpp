#include <cmath>
#include <cstdio>
#include <string>

#include "qvdb/circuit.hpp"
#include "qvdb/errors.hpp"

// OpenQASM 2.0 emitter. The dialect is fixed: qelib1.inc, registers q/c,
// and the gate whitelist {h, x, z, s, sdg, u1, cu1, cx}. Key-conditioned
// phases are lowered to a controlled u1 (with X sandwiches for 0-bits) and
// multi-controlled phases to the parity network, so the emitted text stays
// inside the whitelist for any register size. Output is byte-deterministic.

namespace qvdb {

namespace {

// Angles in this codebase are dyadic multiples of pi; render those as exact
// "p*pi/q" expressions and fall back to a round-trip decimal otherwise.
std::string format_angle(double theta) {
  const double ratio = theta / kPi;
  for (int k = 0; k <= 24; ++k) {
    const double scaled = std::ldexp(ratio, k);
    if (scaled == std::floor(scaled) && std::abs(scaled) <= 1u << 24) {
      const long long num = static_cast<long long>(scaled);
      const long long den = 1ll << k;
      std::string head;
      if (num == 1)
        head = "pi";
      else if (num == -1)
        head = "-pi";
      else
        head = std::to_string(num) + "*pi";
      if (den == 1) return head;
      return head + "/" + std::to_string(den);
    }
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", theta);
  return buf;
}

std::string qubit_ref(int q) { return "q[" + std::to_string(q) + "]"; }

void emit_op(std::string& out, const GateOp& op);

void emit_phase_gate(std::string& out, double theta, int target,
                     const std::vector<ControlSpec>& controls) {
  if (controls.empty()) {
    out += "u1(" + format_angle(theta) + ") " + qubit_ref(target) + ";\n";
    return;
  }
  if (controls.size() == 1) {
    const ControlSpec& c = controls.front();
    const bool negated = c.polarity == Polarity::Negative;
    if (negated) out += "x " + qubit_ref(c.qubit) + ";\n";
    out += "cu1(" + format_angle(theta) + ") " + qubit_ref(c.qubit) + "," +
           qubit_ref(target) + ";\n";
    if (negated) out += "x " + qubit_ref(c.qubit) + ";\n";
    return;
  }
  for (const GateOp& g : decompose_mc_phase(theta, controls, target))
    emit_op(out, g);
}

void emit_op(std::string& out, const GateOp& op) {
  if (op.kind == GateKind::KeyPhase) {
    for (const GateOp& g : lower_key_phase(op).ops) emit_op(out, g);
    return;
  }
  if (is_phase_family(op.kind)) {
    if (op.controls.empty()) {
      switch (op.kind) {
        case GateKind::Z:
          out += "z " + qubit_ref(op.target) + ";\n";
          return;
        case GateKind::S:
          out += "s " + qubit_ref(op.target) + ";\n";
          return;
        case GateKind::Sdg:
          out += "sdg " + qubit_ref(op.target) + ";\n";
          return;
        default:
          out += "u1(" + format_angle(op.theta) + ") " + qubit_ref(op.target) +
                 ";\n";
          return;
      }
    }
    emit_phase_gate(out, phase_angle(op), op.target, op.controls);
    return;
  }
  if (op.kind == GateKind::X) {
    if (op.controls.empty()) {
      out += "x " + qubit_ref(op.target) + ";\n";
      return;
    }
    if (op.controls.size() == 1) {
      const ControlSpec& c = op.controls.front();
      const bool negated = c.polarity == Polarity::Negative;
      if (negated) out += "x " + qubit_ref(c.qubit) + ";\n";
      out += "cx " + qubit_ref(c.qubit) + "," + qubit_ref(op.target) + ";\n";
      if (negated) out += "x " + qubit_ref(c.qubit) + ";\n";
      return;
    }
    throw UnsupportedGateError("multi-controlled x is outside the QASM whitelist");
  }
  // H
  if (!op.controls.empty())
    throw UnsupportedGateError("controlled h is outside the QASM whitelist");
  out += "h " + qubit_ref(op.target) + ";\n";
}

}  // namespace

std::string export_qasm(const Circuit& circuit) {
  if (circuit.n_qubits < 1) throw std::invalid_argument("empty register");
  std::string out;
  out += "OPENQASM 2.0;\n";
  out += "include \"qelib1.inc\";\n";
  out += "qreg q[" + std::to_string(circuit.n_qubits) + "];\n";
  out += "creg c[" + std::to_string(circuit.n_qubits) + "];\n";
  for (const GateOp& op : circuit.ops) {
    validate_gate(op, circuit.n_qubits);
    emit_op(out, op);
  }
  for (int q = 0; q < circuit.n_qubits; ++q)
    out += "measure q[" + std::to_string(q) + "] -> c[" + std::to_string(q) +
           "];\n";
  return out;
}

}  // namespace qvdb
