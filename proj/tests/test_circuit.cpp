#include <doctest.h>

#include <cmath>
#include <random>

#include "qvdb/errors.hpp"
#include "qvdb/state.hpp"
#include "qvdb/verify.hpp"

using namespace qvdb;

namespace {

CMatrix single_op_unitary(int n_qubits, const GateOp& op) {
  Circuit c(n_qubits);
  c.append(op);
  return circuit_unitary(c);
}

// diag(1, ..., 1, e^{i theta}) conditioned on the control pattern: the phase
// sits on every index whose target bit is set and whose control bits match.
CMatrix ideal_controlled_phase(int n_qubits, double theta, int target,
                               const std::vector<ControlSpec>& controls) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  CMatrix m = CMatrix::identity(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    if (!((k >> target) & 1)) continue;
    bool match = true;
    for (const ControlSpec& c : controls) {
      const bool set = (k >> c.qubit) & 1;
      if (set != (c.polarity == Polarity::Positive)) match = false;
    }
    if (match) m.at(k, k) = std::polar(1.0, theta);
  }
  return m;
}

}  // namespace

TEST_CASE("S, Sdg and Z are exact aliases of the generic phase gate") {
  for (int target = 0; target < 2; ++target) {
    CHECK(max_abs_diff(single_op_unitary(2, s(target)),
                       single_op_unitary(2, phase(kPi / 2, target))) == 0.0);
    CHECK(max_abs_diff(single_op_unitary(2, sdg(target)),
                       single_op_unitary(2, phase(-kPi / 2, target))) == 0.0);
    CHECK(max_abs_diff(single_op_unitary(2, z(target)),
                       single_op_unitary(2, phase(kPi, target))) == 0.0);
  }
}

TEST_CASE("axis phase factors are exact") {
  CHECK(phase_factor(kPi) == cplx{-1.0, 0.0});
  CHECK(phase_factor(-kPi) == cplx{-1.0, 0.0});
  CHECK(phase_factor(kPi / 2) == cplx{0.0, 1.0});
  CHECK(phase_factor(-kPi / 2) == cplx{0.0, -1.0});
  CHECK(phase_factor(0.0) == cplx{1.0, 0.0});
}

TEST_CASE("key_phase marks exactly the keyed index") {
  const CMatrix m =
      single_op_unitary(3, key_phase(BasisKey::from_bits("101"), kPi / 2));
  for (std::size_t k = 0; k < 8; ++k)
    CHECK(m.at(k, k) == (k == 5 ? cplx{0.0, 1.0} : cplx{1.0, 0.0}));

  const CMatrix m4 =
      single_op_unitary(3, key_phase(BasisKey::from_bits("100"), kPi / 2));
  CHECK(m4.at(4, 4) == cplx{0.0, 1.0});
  CHECK(m4.at(5, 5) == cplx{1.0, 0.0});

  const CMatrix noop =
      single_op_unitary(2, key_phase(BasisKey::from_bits("11"), 0.0));
  CHECK(max_abs_diff(noop, CMatrix::identity(4)) == 0.0);

  CHECK_THROWS_AS(key_phase(BasisKey{}, kPi), std::invalid_argument);
}

TEST_CASE("controlled() rejects key-conditioned phases") {
  CHECK_THROWS_AS(controlled(key_phase(BasisKey::from_bits("11"), kPi),
                             {{0, Polarity::Positive}}),
                  std::invalid_argument);
}

TEST_CASE("lower_key_phase puts the phase on qubit 0 with key-bit controls") {
  const GateOp op = key_phase(BasisKey::from_bits("111"), kPi / 2);
  const Circuit lowered = lower_key_phase(op);
  REQUIRE(lowered.ops.size() == 1);
  const GateOp& g = lowered.ops.front();
  CHECK(g.kind == GateKind::Phase);
  CHECK(g.target == 0);
  REQUIRE(g.controls.size() == 2);
  for (const ControlSpec& c : g.controls)
    CHECK(c.polarity == Polarity::Positive);
}

TEST_CASE("lower_key_phase X-sandwiches a clear bit 0") {
  const GateOp op = key_phase(BasisKey::from_bits("110"), kPi / 2);
  const Circuit lowered = lower_key_phase(op);
  REQUIRE(lowered.ops.size() == 3);
  CHECK(lowered.ops[0].kind == GateKind::X);
  CHECK(lowered.ops[0].target == 0);
  CHECK(lowered.ops[1].kind == GateKind::Phase);
  CHECK(lowered.ops[2].kind == GateKind::X);
  CHECK(max_abs_diff(circuit_unitary(lowered), single_op_unitary(3, op)) ==
        0.0);
}

TEST_CASE("lower_key_phase handles the all-zero key") {
  const GateOp op = key_phase(BasisKey::from_bits("000"), kPi);
  const CMatrix m = circuit_unitary(lower_key_phase(op));
  for (std::size_t k = 0; k < 8; ++k)
    CHECK(m.at(k, k) == (k == 0 ? cplx{-1.0, 0.0} : cplx{1.0, 0.0}));
}

TEST_CASE("lower_key_phase agrees with key_phase for every key up to n=5") {
  for (int n = 1; n <= 5; ++n) {
    const std::uint64_t dim = 1ull << n;
    for (std::uint64_t v = 0; v < dim; ++v) {
      const GateOp op = key_phase(BasisKey(n, v), kPi / 2);
      CHECK(max_abs_diff(circuit_unitary(lower_key_phase(op)),
                         single_op_unitary(n, op)) < 1e-12);
    }
  }
}

TEST_CASE("diffusion at n=1 is minus X") {
  const Circuit diffusion = build_diffusion(1);
  REQUIRE(diffusion.ops.size() == 5);
  const CMatrix m = circuit_unitary(diffusion);
  CHECK(std::abs(m.at(0, 1) - cplx{-1.0, 0.0}) < 1e-12);
  CHECK(std::abs(m.at(1, 0) - cplx{-1.0, 0.0}) < 1e-12);
  CHECK(std::abs(m.at(0, 0)) < 1e-12);
  CHECK(std::abs(m.at(1, 1)) < 1e-12);

  // The observable claim: uniform input keeps uniform probabilities.
  StateVector state = init_uniform(1);
  apply_circuit(state, diffusion);
  for (double p : probabilities(state))
    CHECK(p == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("diffusion unitary equals minus the reflection about uniform") {
  for (int n = 1; n <= 5; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    CMatrix expected(dim);
    const double two_over_dim = 2.0 / static_cast<double>(dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c)
        expected.at(r, c) = (r == c ? 1.0 : 0.0) - two_over_dim;
    CHECK(max_abs_diff(circuit_unitary(build_diffusion(n)), expected) < 1e-12);
  }
}

TEST_CASE("diffusion fixes the uniform state at n=3") {
  StateVector state = init_uniform(3);
  apply_circuit(state, build_diffusion(3));
  for (double p : probabilities(state))
    CHECK(p == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("diffusion after the stored-and-queried oracle state") {
  // Phases: -1 on 101, i on 111 and 110, 1 elsewhere; one diffusion round
  // lands on 17/32 for the query and 5/32 for the other stored keys.
  StateVector state = init_uniform(3);
  apply_gate(state, key_phase(BasisKey::from_bits("101"), kPi));
  apply_gate(state, key_phase(BasisKey::from_bits("111"), kPi / 2));
  apply_gate(state, key_phase(BasisKey::from_bits("110"), kPi / 2));
  apply_circuit(state, build_diffusion(3));

  const ProbabilityDistribution probs = probabilities(state);
  CHECK(probs[5] == doctest::Approx(17.0 / 32.0).epsilon(1e-12));
  CHECK(probs[7] == doctest::Approx(5.0 / 32.0).epsilon(1e-12));
  CHECK(probs[6] == doctest::Approx(5.0 / 32.0).epsilon(1e-12));
  for (std::size_t k : {0u, 1u, 2u, 3u, 4u})
    CHECK(probs[k] == doctest::Approx(1.0 / 32.0).epsilon(1e-12));
}

TEST_CASE("diffusion and mean reflection give identical probabilities") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    StateVector via_gates = random_state(n, rng);
    StateVector via_mean = via_gates;

    apply_circuit(via_gates, build_diffusion(n));
    reflect_about_mean(via_mean);

    const ProbabilityDistribution a = probabilities(via_gates);
    const ProbabilityDistribution b = probabilities(via_mean);
    for (std::size_t k = 0; k < a.size(); ++k)
      CHECK(std::abs(a[k] - b[k]) < 1e-12);
  }
}

TEST_CASE("decompose_mc_phase with no controls is one phase gate") {
  const auto ops = decompose_mc_phase(0.7, {}, 2);
  REQUIRE(ops.size() == 1);
  CHECK(ops.front().kind == GateKind::Phase);
  CHECK(ops.front().target == 2);
  CHECK(ops.front().theta == 0.7);
}

TEST_CASE("single-control decomposition is the five-gate identity") {
  const double theta = 1.1;
  const auto ops =
      decompose_mc_phase(theta, {{1, Polarity::Positive}}, 0);
  // Phase(theta/2) on each wire plus the CX-conjugated Phase(-theta/2).
  REQUIRE(ops.size() == 5);

  Circuit c(2);
  for (const GateOp& op : ops) c.append(op);
  CHECK(max_abs_diff(circuit_unitary(c),
                     ideal_controlled_phase(2, theta, 0,
                                            {{1, Polarity::Positive}})) <
        1e-10);
}

TEST_CASE("double-control quarter turn matches the ideal diagonal") {
  const std::vector<ControlSpec> controls = {{1, Polarity::Positive},
                                             {2, Polarity::Positive}};
  Circuit c(3);
  for (const GateOp& op : decompose_mc_phase(kPi / 2, controls, 0))
    c.append(op);
  const CMatrix m = circuit_unitary(c);
  CHECK(max_abs_diff(m, ideal_controlled_phase(3, kPi / 2, 0, controls)) <
        1e-10);
  CHECK(std::abs(m.at(7, 7) - cplx{0.0, 1.0}) < 1e-10);
}

TEST_CASE("decompositions match ideals for all polarities up to 4 controls") {
  std::mt19937_64 rng(31);
  for (int k = 1; k <= 4; ++k) {
    const int n = k + 1;
    for (int mask = 0; mask < (1 << k); ++mask) {
      std::vector<ControlSpec> controls;
      for (int i = 0; i < k; ++i)
        controls.push_back({i + 1, (mask >> i) & 1 ? Polarity::Positive
                                                   : Polarity::Negative});
      const double theta =
          std::uniform_real_distribution<double>(-kPi, kPi)(rng);
      Circuit c(n);
      for (const GateOp& op : decompose_mc_phase(theta, controls, 0))
        c.append(op);
      CHECK(max_abs_diff(circuit_unitary(c),
                         ideal_controlled_phase(n, theta, 0, controls)) <
            1e-10);
    }
  }
}

TEST_CASE("decompose_mc_phase guards the parity-network width") {
  std::vector<ControlSpec> controls;
  for (int i = 1; i <= 10; ++i) controls.push_back({i, Polarity::Positive});
  CHECK_THROWS_AS(decompose_mc_phase(kPi, controls, 0), ResourceLimitError);
}

TEST_CASE("validate_gate rejects malformed ops") {
  CHECK_THROWS_AS(validate_gate(h(3), 3), std::invalid_argument);
  CHECK_THROWS_AS(
      validate_gate(controlled(s(1), {{1, Polarity::Positive}}), 3),
      std::invalid_argument);
  CHECK_THROWS_AS(
      validate_gate(key_phase(BasisKey::from_bits("11"), kPi), 3),
      std::invalid_argument);
  CHECK_NOTHROW(validate_gate(key_phase(BasisKey::from_bits("111"), kPi), 3));
}
