#include "qvdb/circuit.hpp"

#include <bit>
#include <stdexcept>

#include "qvdb/errors.hpp"

namespace qvdb {

namespace {
constexpr int kMaxParityWires = 10;  // exponential-size decomposition guard
}

cplx phase_factor(double theta) {
  if (theta == 0.0) return {1.0, 0.0};
  if (theta == kPi || theta == -kPi) return {-1.0, 0.0};
  if (theta == kPi / 2) return {0.0, 1.0};
  if (theta == -kPi / 2) return {0.0, -1.0};
  return std::polar(1.0, theta);
}

GateOp h(int target) { return {.kind = GateKind::H, .target = target}; }
GateOp x(int target) { return {.kind = GateKind::X, .target = target}; }
GateOp z(int target) { return {.kind = GateKind::Z, .target = target}; }
GateOp s(int target) { return {.kind = GateKind::S, .target = target}; }
GateOp sdg(int target) { return {.kind = GateKind::Sdg, .target = target}; }

GateOp phase(double theta, int target) {
  return {.kind = GateKind::Phase, .target = target, .theta = theta};
}

GateOp key_phase(const BasisKey& key, double theta) {
  if (key.width < 1) throw std::invalid_argument("key_phase: empty key");
  return {.kind = GateKind::KeyPhase, .target = -1, .theta = theta, .key = key};
}

GateOp controlled(GateOp op, std::vector<ControlSpec> controls) {
  if (op.kind == GateKind::KeyPhase)
    throw std::invalid_argument("a key-conditioned phase takes no controls");
  op.controls = std::move(controls);
  return op;
}

bool is_phase_family(GateKind kind) {
  return kind == GateKind::Z || kind == GateKind::S || kind == GateKind::Sdg ||
         kind == GateKind::Phase;
}

double phase_angle(const GateOp& op) {
  switch (op.kind) {
    case GateKind::Z:
      return kPi;
    case GateKind::S:
      return kPi / 2;
    case GateKind::Sdg:
      return -kPi / 2;
    case GateKind::Phase:
      return op.theta;
    default:
      throw std::invalid_argument("gate has no phase angle");
  }
}

void validate_gate(const GateOp& op, int n_qubits) {
  if (op.kind == GateKind::KeyPhase) {
    if (op.key.width != n_qubits)
      throw std::invalid_argument("key \"" + op.key.bits() + "\" has width " +
                                  std::to_string(op.key.width) +
                                  ", expected " + std::to_string(n_qubits));
    if (!op.controls.empty())
      throw std::invalid_argument("a key-conditioned phase takes no controls");
    return;
  }
  if (op.target < 0 || op.target >= n_qubits)
    throw std::invalid_argument("target qubit " + std::to_string(op.target) +
                                " out of range for " +
                                std::to_string(n_qubits) + " qubits");
  std::uint64_t seen = 1ull << op.target;
  for (const ControlSpec& c : op.controls) {
    if (c.qubit < 0 || c.qubit >= n_qubits)
      throw std::invalid_argument("control qubit " + std::to_string(c.qubit) +
                                  " out of range for " +
                                  std::to_string(n_qubits) + " qubits");
    const std::uint64_t bit = 1ull << c.qubit;
    if (seen & bit)
      throw std::invalid_argument("qubit " + std::to_string(c.qubit) +
                                  " appears twice in one gate");
    seen |= bit;
  }
}

Circuit::Circuit(int n_qubits_) : n_qubits(n_qubits_) {
  if (n_qubits < 1)
    throw std::invalid_argument("circuit needs at least one qubit");
}

void Circuit::append(GateOp op) {
  validate_gate(op, n_qubits);
  ops.push_back(std::move(op));
}

void Circuit::append(const Circuit& fragment) {
  if (fragment.n_qubits != n_qubits)
    throw std::invalid_argument("fragment register width " +
                                std::to_string(fragment.n_qubits) +
                                " does not match circuit width " +
                                std::to_string(n_qubits));
  for (const GateOp& op : fragment.ops) append(op);
}

Circuit lower_key_phase(const GateOp& op) {
  if (op.kind != GateKind::KeyPhase)
    throw std::invalid_argument("lower_key_phase expects a key-conditioned phase");
  const int n = op.key.width;
  Circuit fragment(n);

  std::vector<ControlSpec> controls;
  controls.reserve(static_cast<std::size_t>(n) - 1);
  for (int q = 1; q < n; ++q)
    controls.push_back(
        {q, op.key.bit(q) ? Polarity::Positive : Polarity::Negative});

  // The phase always lands on qubit 0; a 0-bit there means the phase must
  // fire on |0>, hence the X sandwich on the target itself.
  const bool flip_target = !op.key.bit(0);
  if (flip_target) fragment.append(x(0));
  fragment.append(controlled(phase(op.theta, 0), controls));
  if (flip_target) fragment.append(x(0));
  return fragment;
}

Circuit build_diffusion(int n_qubits) {
  Circuit c(n_qubits);
  for (int q = 0; q < n_qubits; ++q) c.append(h(q));
  for (int q = 0; q < n_qubits; ++q) c.append(x(q));
  c.append(key_phase(BasisKey(n_qubits, (1ull << n_qubits) - 1), kPi));
  for (int q = 0; q < n_qubits; ++q) c.append(x(q));
  for (int q = 0; q < n_qubits; ++q) c.append(h(q));
  return c;
}

std::vector<GateOp> decompose_mc_phase(double theta,
                                       const std::vector<ControlSpec>& controls,
                                       int target) {
  const int k = static_cast<int>(controls.size());
  if (k + 1 > kMaxParityWires)
    throw ResourceLimitError("decomposition over " + std::to_string(k + 1) +
                             " wires exceeds the " +
                             std::to_string(kMaxParityWires) + "-wire guard");

  std::vector<int> wires{target};
  std::uint64_t seen = 1ull << target;
  for (const ControlSpec& c : controls) {
    if (c.qubit < 0) throw std::invalid_argument("negative qubit index");
    const std::uint64_t bit = 1ull << c.qubit;
    if (seen & bit)
      throw std::invalid_argument("qubit " + std::to_string(c.qubit) +
                                  " appears twice in one gate");
    seen |= bit;
    wires.push_back(c.qubit);
  }

  std::vector<GateOp> out;
  for (const ControlSpec& c : controls)
    if (c.polarity == Polarity::Negative) out.push_back(x(c.qubit));

  // AND over m wires as a signed sum of subset parities: every non-empty
  // subset S contributes (-1)^{|S|+1} * theta/2^(m-1) on its parity. Each
  // parity is folded into the subset's first wire by a cx chain, phased,
  // then unfolded. Subsets are visited in Gray-code order.
  const int m = k + 1;
  const double base = std::ldexp(theta, -k);
  for (std::uint64_t i = 1; i < (1ull << m); ++i) {
    const std::uint64_t subset = i ^ (i >> 1);
    const int bits = std::popcount(subset);
    int acc = -1;
    std::vector<int> chain;
    for (int w = 0; w < m; ++w) {
      if (!(subset >> w & 1)) continue;
      if (acc < 0)
        acc = wires[static_cast<std::size_t>(w)];
      else
        chain.push_back(wires[static_cast<std::size_t>(w)]);
    }
    for (int q : chain)
      out.push_back(controlled(x(acc), {{q, Polarity::Positive}}));
    out.push_back(phase((bits % 2 == 1) ? base : -base, acc));
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      out.push_back(controlled(x(acc), {{*it, Polarity::Positive}}));
  }

  for (const ControlSpec& c : controls)
    if (c.polarity == Polarity::Negative) out.push_back(x(c.qubit));
  return out;
}

}  // namespace qvdb
