#include "qvdb/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qvdb/database.hpp"

namespace qvdb {

namespace {

int rand_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

double rand_angle(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return (2.0 * u - 1.0) * kPi;
}

std::vector<ControlSpec> random_controls(std::mt19937_64& rng, int n_qubits,
                                         int target, int max_controls) {
  std::vector<int> others;
  for (int q = 0; q < n_qubits; ++q)
    if (q != target) others.push_back(q);
  std::shuffle(others.begin(), others.end(), rng);
  const int k = rand_int(rng, 0, std::min<int>(max_controls,
                                               static_cast<int>(others.size())));
  std::vector<ControlSpec> controls;
  for (int i = 0; i < k; ++i)
    controls.push_back({others[static_cast<std::size_t>(i)],
                        rng() & 1 ? Polarity::Positive : Polarity::Negative});
  return controls;
}

// Ideal multi-controlled phase, written directly as a diagonal matrix.
CMatrix ideal_mc_phase(int n_qubits, double theta,
                       const std::vector<ControlSpec>& controls, int target) {
  const std::size_t dim = 1ull << n_qubits;
  CMatrix m = CMatrix::identity(dim);
  const cplx f = phase_factor(theta);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!(i >> target & 1)) continue;
    bool fires = true;
    for (const ControlSpec& c : controls) {
      const bool bit = i >> c.qubit & 1;
      if (bit != (c.polarity == Polarity::Positive)) fires = false;
    }
    if (fires) m.at(i, i) *= f;
  }
  return m;
}

std::vector<BasisKey> random_key_set(std::mt19937_64& rng, int n_qubits,
                                     int count) {
  std::vector<std::uint64_t> values(1ull << n_qubits);
  std::iota(values.begin(), values.end(), 0ull);
  std::shuffle(values.begin(), values.end(), rng);
  std::vector<BasisKey> keys;
  for (int i = 0; i < count; ++i)
    keys.push_back(BasisKey(n_qubits, values[static_cast<std::size_t>(i)]));
  return keys;
}

}  // namespace

Circuit random_circuit(int n_qubits, int max_gates, std::mt19937_64& rng) {
  Circuit c(n_qubits);
  const int gates = rand_int(rng, 1, max_gates);
  for (int g = 0; g < gates; ++g) {
    const int pick = rand_int(rng, 0, 6);
    if (pick == 6) {
      const std::uint64_t value = rng() & ((1ull << n_qubits) - 1);
      c.append(key_phase(BasisKey(n_qubits, value), rand_angle(rng)));
      continue;
    }
    const int target = rand_int(rng, 0, n_qubits - 1);
    GateOp op;
    switch (pick) {
      case 0: op = h(target); break;
      case 1: op = x(target); break;
      case 2: op = z(target); break;
      case 3: op = s(target); break;
      case 4: op = sdg(target); break;
      default: op = phase(rand_angle(rng), target); break;
    }
    // Controlled h stays out of the pool so every circuit is exportable.
    if (pick != 0) op.controls = random_controls(rng, n_qubits, target, 2);
    c.append(op);
  }
  return c;
}

StateVector random_state(int n_qubits, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  StateVector st;
  st.n_qubits = n_qubits;
  st.amps.resize(1ull << n_qubits);
  double norm2 = 0.0;
  for (cplx& a : st.amps) {
    a = {gauss(rng), gauss(rng)};
    norm2 += std::norm(a);
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (cplx& a : st.amps) a *= scale;
  return st;
}

VerifyResult run_verification(const VerifyOptions& opts) {
  if (opts.max_qubits < 2 || opts.max_qubits > kMaxDenseQubits)
    throw std::invalid_argument("max qubits must be in [2, " +
                                std::to_string(kMaxDenseQubits) + "]");
  if (opts.trials < 1) throw std::invalid_argument("trials must be at least 1");

  std::mt19937_64 rng(opts.seed);
  VerifyResult result;

  for (int t = 0; t < opts.trials; ++t) {
    const int n = rand_int(rng, 2, opts.max_qubits);
    const std::size_t dim = 1ull << n;

    // 1. bit-mask kernel vs dense unitary, componentwise on a uniform input
    {
      const Circuit c = random_circuit(n, 50, rng);
      StateVector fast = init_uniform(n);
      apply_circuit(fast, c);
      const CMatrix u = circuit_unitary(c);
      const StateVector uniform = init_uniform(n);
      for (std::size_t r = 0; r < dim; ++r) {
        cplx expect = 0.0;
        for (std::size_t k = 0; k < dim; ++k)
          expect += u.at(r, k) * uniform.amps[k];
        result.statevector_vs_dense = std::max(
            result.statevector_vs_dense, std::abs(expect - fast.amps[r]));
      }
    }

    // 2. gate-level diffusion vs analytic reflection, probability vectors
    {
      StateVector input = random_state(n, rng);
      StateVector gate_path = input;
      apply_circuit(gate_path, build_diffusion(n));
      StateVector analytic_path = input;
      reflect_about_mean(analytic_path);
      const ProbabilityDistribution pg = probabilities(gate_path);
      const ProbabilityDistribution pa = probabilities(analytic_path);
      for (std::size_t i = 0; i < dim; ++i)
        result.diffusion_vs_reflection =
            std::max(result.diffusion_vs_reflection, std::abs(pg[i] - pa[i]));
    }

    // 3. parity-network decomposition vs ideal multi-controlled phase
    {
      const int target = rand_int(rng, 0, n - 1);
      const auto controls =
          random_controls(rng, n, target, std::min(4, n - 1));
      const double theta = rand_angle(rng);
      Circuit c(n);
      for (const GateOp& g : decompose_mc_phase(theta, controls, target))
        c.append(g);
      result.mc_phase_decomposition = std::max(
          result.mc_phase_decomposition,
          max_abs_diff(circuit_unitary(c),
                       ideal_mc_phase(n, theta, controls, target)));
    }

    // 4. diagonal oracle gate-order invariance, exact
    {
      const int stored = rand_int(rng, 0, static_cast<int>(dim) / 2);
      const int queried = rand_int(rng, 1, 2);
      const auto keys = random_key_set(rng, n, stored + queried);
      Database db;
      db.n_qubits = n;
      for (int i = 0; i < stored; ++i)
        db.entries.push_back({.key = keys[static_cast<std::size_t>(i)]});
      QuerySet qs;
      for (int i = stored; i < stored + queried; ++i)
        qs.keys.push_back(keys[static_cast<std::size_t>(i)]);

      Circuit oracle = build_cs_oracle(db, qs);
      Circuit shuffled(n);
      std::vector<GateOp> ops = oracle.ops;
      std::shuffle(ops.begin(), ops.end(), rng);
      for (GateOp& op : ops) shuffled.append(std::move(op));
      result.oracle_order_invariance = std::max(
          result.oracle_order_invariance,
          max_abs_diff(circuit_unitary(oracle), circuit_unitary(shuffled)));
    }
  }

  result.pass = result.statevector_vs_dense <= kTolStateVsDense &&
                result.diffusion_vs_reflection <= kTolDiffusion &&
                result.mc_phase_decomposition <= kTolDecomposition &&
                result.oracle_order_invariance == 0.0;
  return result;
}

}  // namespace qvdb
