#include "sympsim/rng.hpp"

#include <cmath>
#include <numbers>

namespace sympsim::rng {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_u64(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t key = mix64(seed + 0x632be59bd9b4e019ULL);
  return mix64(key ^ mix64(counter));
}

namespace {
inline double bits_to_unit(std::uint64_t bits) {
  // Top 53 bits -> [0, 1) with full double resolution.
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}
}  // namespace

double stream_uniform01(std::uint64_t seed, std::uint64_t counter) {
  return bits_to_unit(stream_u64(seed, counter));
}

double Sequence::uniform01() { return bits_to_unit(next_u64()); }

double Sequence::normal() {
  const double u1 = 1.0 - uniform01();  // (0, 1]: keeps the log finite
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

int Sequence::uniform_int(int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next_u64() % span);
}

Eigen::MatrixXcd haar_unitary(int dim, Sequence& gen) {
  Eigen::MatrixXcd z(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) z(i, j) = gen.complex_normal();

  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
  const Eigen::MatrixXcd r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const std::complex<double> d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

Eigen::MatrixXcd random_hermitian(int dim, Sequence& gen) {
  Eigen::MatrixXcd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = gen.complex_normal();
  return 0.5 * (a + a.adjoint().eval());
}

Eigen::VectorXcd random_unit_state(int dim, Sequence& gen) {
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = gen.complex_normal();
  const double n = v.norm();
  if (n == 0.0) {
    v.setZero();
    v(0) = 1.0;
    return v;
  }
  return v / n;
}

}  // namespace sympsim::rng
