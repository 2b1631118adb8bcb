#pragma once

#include <Eigen/Dense>
#include <complex>

#include "sympsim/errors.hpp"

namespace sympsim {

// Default absolute max-norm tolerance for the group-membership predicates.
// Double-precision identity residuals on matrices up to 64x64 sit below
// 1e-13 in practice, so 1e-12 separates members from non-members cleanly.
inline constexpr double kDefaultTol = 1e-12;

struct PredicateResult {
  bool ok = false;
  double max_deviation = 0.0;
};

// State in the complex representation: amplitudes psi in C^N. Normalization
// is tracked (norm_squared) but not enforced; evolution outside the unitary
// image legitimately changes it.
struct ComplexState {
  Eigen::VectorXcd amplitudes;

  ComplexState() = default;
  explicit ComplexState(Eigen::VectorXcd a) : amplitudes(std::move(a)) {}

  int dim() const { return static_cast<int>(amplitudes.size()); }
  double norm_squared() const;

  static ComplexState ground(int dim);  // (1, 0, ..., 0)
};

// The same state in the real representation: (q, p) in R^{2N} with
// q_a = Re psi_a, p_a = Im psi_a. Stacked layout throughout the project:
// q occupies indices 0..N-1, p occupies N..2N-1.
struct PhaseState {
  Eigen::VectorXd q;
  Eigen::VectorXd p;

  PhaseState() = default;
  PhaseState(Eigen::VectorXd q_in, Eigen::VectorXd p_in);

  int dim() const { return static_cast<int>(q.size()); }
  double norm_squared() const;

  Eigen::VectorXd stacked() const;  // (q; p)
  static PhaseState from_stacked(const Eigen::VectorXd& x);
  static PhaseState ground(int dim);  // q = (1, 0, ..., 0), p = 0
};

// Hermitian matrix H together with its split H = K + iL into a real symmetric
// part K and a real skew-symmetric part L. K and L are symmetrized exactly on
// construction so downstream code can rely on bitwise (anti)symmetry, and
// `entries` is the reassembled K + iL (identical to the input whenever the
// input is exactly Hermitian).
class HermitianOperator {
 public:
  static HermitianOperator decompose(const Eigen::MatrixXcd& h,
                                     double tol = kDefaultTol);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  const Eigen::MatrixXd& k_part() const { return k_part_; }
  const Eigen::MatrixXd& l_part() const { return l_part_; }

 private:
  HermitianOperator(Eigen::MatrixXcd entries, Eigen::MatrixXd k,
                    Eigen::MatrixXd l)
      : entries_(std::move(entries)),
        k_part_(std::move(k)),
        l_part_(std::move(l)) {}

  Eigen::MatrixXcd entries_;
  Eigen::MatrixXd k_part_;
  Eigen::MatrixXd l_part_;
};

inline HermitianOperator decompose_hermitian(const Eigen::MatrixXcd& h,
                                             double tol = kDefaultTol) {
  return HermitianOperator::decompose(h, tol);
}

// Real 2N x 2N matrix certified against S^T J S = J at construction time.
class SymplecticMatrix {
 public:
  static SymplecticMatrix certified(Eigen::MatrixXd m,
                                    double tol = kDefaultTol);

  int half_dim() const { return half_dim_; }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double certification_deviation() const { return deviation_; }

  // Quadrant views, [[A, B], [C, D]].
  auto block_a() const { return entries_.topLeftCorner(half_dim_, half_dim_); }
  auto block_b() const { return entries_.topRightCorner(half_dim_, half_dim_); }
  auto block_c() const { return entries_.bottomLeftCorner(half_dim_, half_dim_); }
  auto block_d() const { return entries_.bottomRightCorner(half_dim_, half_dim_); }

 private:
  SymplecticMatrix(Eigen::MatrixXd m, int half_dim, double deviation)
      : entries_(std::move(m)), half_dim_(half_dim), deviation_(deviation) {}

  Eigen::MatrixXd entries_;
  int half_dim_;
  double deviation_;
};

// The standard symplectic form J = [[0, I], [-I, 0]] on R^{2N}.
Eigen::MatrixXd symplectic_form(int half_dim);

// --- state conversion -------------------------------------------------------

PhaseState complex_to_real_state(const ComplexState& psi);
ComplexState real_to_complex_state(const PhaseState& phi);

// --- the embedding U(N) -> Sp(2N, R) ----------------------------------------

// Real form of a complex linear map in the stacked (q; p) layout: for
// V = X + iY the block matrix [[X, -Y], [Y, X]] acts on (Re psi; Im psi)
// exactly as V acts on psi, since (X + iY)(q + ip) = (Xq - Yp) + i(Yq + Xp).
// No membership checks; see unitary_to_symplectic for the certified version.
Eigen::MatrixXd real_embedding(const Eigen::MatrixXcd& v);

// Certified embedding of a unitary: checks V'V = I, then certifies the real
// image against the symplectic condition. The image lands in Sp(2N) ∩ O(2N).
SymplecticMatrix unitary_to_symplectic(const Eigen::MatrixXcd& v,
                                       double tol = kDefaultTol);

// Inverse on embedding images: requires the block structure
// upper-left == lower-right and upper-right == -(lower-left), then returns
// X + iY with X the upper-left and Y the lower-left block.
Eigen::MatrixXcd symplectic_to_unitary(const SymplecticMatrix& s,
                                       double tol = kDefaultTol);

// --- group-membership predicates --------------------------------------------

PredicateResult is_symplectic(const Eigen::MatrixXd& s,
                              double tol = kDefaultTol);
PredicateResult is_orthogonal(const Eigen::MatrixXd& s,
                              double tol = kDefaultTol);
PredicateResult is_unitary(const Eigen::MatrixXcd& v, double tol = kDefaultTol);

// Extraction along U(N) = Sp(2N, R) ∩ O(2N, R): verifies both memberships and
// the commutation S J = J S they force, then returns the recovered unitary.
Eigen::MatrixXcd intersection_to_unitary(const Eigen::MatrixXd& s,
                                         double tol = kDefaultTol);

}  // namespace sympsim
