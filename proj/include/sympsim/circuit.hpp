#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sympsim/gates.hpp"
#include "sympsim/rng.hpp"

namespace sympsim {

struct PlacedGate {
  std::string gate_name;
  std::vector<double> params;
  std::vector<int> targets;
  TargetSpace target_space = TargetSpace::Qubit;

  bool operator==(const PlacedGate&) const = default;
};

struct Circuit {
  int n_qubits = 1;
  std::vector<PlacedGate> ops;
  bool measure_at_end = false;

  // Complex dimension N = 2^n_qubits; also the mode count.
  int dim() const { return 1 << n_qubits; }

  bool operator==(const Circuit&) const = default;
};

// Parses the line-oriented circuit text. All gates are resolved against the
// standard catalog and every target is validated, so a returned Circuit is
// runnable. Diagnostics carry line/column.
Circuit parse_circuit(const std::string& text);

// Canonical text form; parse(serialize(c)) == c structurally.
std::string serialize_circuit(const Circuit& c);

struct RunOptions {
  // Re-certify the symplecticity of every applied matrix (debugging aid;
  // costs an extra O(N^3) per gate).
  bool check_each_step = false;
  double step_check_tol = kDefaultTol;
};

ComplexState run_complex(const Circuit& c);
ComplexState run_complex(const Circuit& c, const ComplexState& psi0);
PhaseState run_real(const Circuit& c, const RunOptions& opts = {});
PhaseState run_real(const Circuit& c, const PhaseState& phi0,
                    const RunOptions& opts = {});

struct MeasurementResult {
  std::map<std::uint64_t, std::uint64_t> counts;
  double total_norm = 0.0;  // pre-normalization probability mass
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

// Samples basis outcomes with probability (q_k^2 + p_k^2) / total mass
// (equivalently |psi_k|^2 normalized). Deterministic given (state, shots,
// seed) and independent of `threads`: shot i draws from a counter-based
// stream keyed by (seed, i).
MeasurementResult measure(const ComplexState& state, std::uint64_t shots,
                          std::uint64_t seed, int threads = 1);
MeasurementResult measure(const PhaseState& state, std::uint64_t shots,
                          std::uint64_t seed, int threads = 1);

struct EquivalenceReport {
  double max_state_deviation = 0.0;
  std::vector<double> per_trial;
};

// Random unitary-only workload over the pool {H, X, RZ, CNOT, NOT-variant};
// the standard generator for equivalence and benchmark runs.
Circuit random_unitary_circuit(int n_qubits, int n_gates, rng::Sequence& gen);

// Runs both backends from random normalized initial states and reports the
// max-norm deviation between real_to_complex(run_real(...)) and
// run_complex(...). No global-phase alignment is applied: the two
// representations are phase-locked by construction.
EquivalenceReport equivalence_check(const Circuit& c, int trials,
                                    std::uint64_t seed);

}  // namespace sympsim
