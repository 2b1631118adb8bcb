#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace sympsim::rng {

// SplitMix64 finalizer; the mixing primitive behind the counter streams.
std::uint64_t mix64(std::uint64_t x);

// Counter-based stream: value i of the stream keyed by `seed` depends only on
// (seed, i). Shards of a sampling loop can therefore run in any order, or in
// parallel, and still produce bit-identical aggregates.
std::uint64_t stream_u64(std::uint64_t seed, std::uint64_t counter);
double stream_uniform01(std::uint64_t seed, std::uint64_t counter);  // [0, 1)

// Sequential generator used to construct workloads (random operators, states,
// circuits). Normal deviates come from an explicit Box-Muller so the emitted
// sequence is pinned by this code, not by the standard library in use.
class Sequence {
 public:
  explicit Sequence(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform01();
  double normal();
  std::complex<double> complex_normal() { return {normal(), normal()}; }
  int uniform_int(int lo, int hi);  // inclusive bounds
  Sequence fork() { return Sequence(next_u64()); }

 private:
  std::mt19937_64 engine_;
};

// Haar-distributed random unitary: QR of a Ginibre matrix with the R diagonal
// phase-normalized.
Eigen::MatrixXcd haar_unitary(int dim, Sequence& gen);

Eigen::MatrixXcd random_hermitian(int dim, Sequence& gen);

Eigen::VectorXcd random_unit_state(int dim, Sequence& gen);

}  // namespace sympsim::rng
