#include "sympsim/duality.hpp"

#include <string>
#include <utility>

namespace sympsim {

const char* errc_name(errc code) {
  switch (code) {
    case errc::not_hermitian: return "NotHermitian";
    case errc::not_unitary: return "NotUnitary";
    case errc::not_symplectic: return "NotSymplectic";
    case errc::not_embedding_image: return "NotEmbeddingImage";
    case errc::not_in_intersection: return "NotInIntersection";
    case errc::not_square: return "NotSquare";
    case errc::odd_dimension: return "OddDimension";
    case errc::dim_mismatch: return "DimMismatch";
    case errc::non_finite: return "NonFinite";
    case errc::inner_solve_diverged: return "InnerSolveDiverged";
    case errc::invalid_interval: return "InvalidInterval";
    case errc::target_out_of_range: return "TargetOutOfRange";
    case errc::duplicate_target: return "DuplicateTarget";
    case errc::mode_out_of_range: return "ModeOutOfRange";
    case errc::duplicate_mode: return "DuplicateMode";
    case errc::kind_mismatch: return "KindMismatch";
    case errc::syntax_error: return "SyntaxError";
    case errc::unknown_gate: return "UnknownGate";
    case errc::arity_mismatch: return "ArityMismatch";
    case errc::missing_header: return "MissingHeader";
    case errc::symplectic_gate_on_complex_backend:
      return "SymplecticGateOnComplexBackend";
    case errc::zero_norm_state: return "ZeroNormState";
    case errc::zero_shots: return "ZeroShots";
    case errc::io_error: return "IoError";
  }
  return "Unknown";
}

namespace {

// One shared accumulation helper so the complex- and real-side norms run the
// exact same arithmetic and the isometry holds bitwise.
inline double pair_term(double x, double y) { return x * x + y * y; }

void require_square(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols())
    throw Error(errc::not_square, "matrix is not square (" +
                                      std::to_string(m.rows()) + "x" +
                                      std::to_string(m.cols()) + ")");
}

void require_square(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols())
    throw Error(errc::not_square, "matrix is not square (" +
                                      std::to_string(m.rows()) + "x" +
                                      std::to_string(m.cols()) + ")");
}

// J * S without forming J: [[0, I], [-I, 0]] [[A, B], [C, D]] = [[C, D], [-A, -B]].
Eigen::MatrixXd j_times(const Eigen::MatrixXd& s) {
  const Eigen::Index n = s.rows() / 2;
  Eigen::MatrixXd out(s.rows(), s.cols());
  out.topRows(n) = s.bottomRows(n);
  out.bottomRows(n) = -s.topRows(n);
  return out;
}

// S * J: [[A, B], [C, D]] [[0, I], [-I, 0]] = [[-B, A], [-D, C]].
Eigen::MatrixXd times_j(const Eigen::MatrixXd& s) {
  const Eigen::Index n = s.cols() / 2;
  Eigen::MatrixXd out(s.rows(), s.cols());
  out.leftCols(n) = -s.rightCols(n);
  out.rightCols(n) = s.leftCols(n);
  return out;
}

}  // namespace

double ComplexState::norm_squared() const {
  double total = 0.0;
  for (Eigen::Index a = 0; a < amplitudes.size(); ++a)
    total += pair_term(amplitudes[a].real(), amplitudes[a].imag());
  return total;
}

ComplexState ComplexState::ground(int dim) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(0) = 1.0;
  return ComplexState(std::move(v));
}

PhaseState::PhaseState(Eigen::VectorXd q_in, Eigen::VectorXd p_in)
    : q(std::move(q_in)), p(std::move(p_in)) {
  if (q.size() != p.size())
    throw Error(errc::dim_mismatch,
                "phase state q and p must have equal length");
}

double PhaseState::norm_squared() const {
  double total = 0.0;
  for (Eigen::Index a = 0; a < q.size(); ++a) total += pair_term(q[a], p[a]);
  return total;
}

Eigen::VectorXd PhaseState::stacked() const {
  Eigen::VectorXd x(2 * q.size());
  x.head(q.size()) = q;
  x.tail(p.size()) = p;
  return x;
}

PhaseState PhaseState::from_stacked(const Eigen::VectorXd& x) {
  if (x.size() % 2 != 0)
    throw Error(errc::odd_dimension, "stacked vector must have even length");
  const Eigen::Index n = x.size() / 2;
  return PhaseState(x.head(n), x.tail(n));
}

PhaseState PhaseState::ground(int dim) {
  Eigen::VectorXd q = Eigen::VectorXd::Zero(dim);
  q(0) = 1.0;
  return PhaseState(std::move(q), Eigen::VectorXd::Zero(dim));
}

HermitianOperator HermitianOperator::decompose(const Eigen::MatrixXcd& h,
                                               double tol) {
  require_square(h);
  const double dev = (h - h.adjoint().eval()).cwiseAbs().maxCoeff();
  if (!(dev <= tol))
    throw Error(errc::not_hermitian,
                "matrix is not Hermitian within tolerance (max deviation " +
                    std::to_string(dev) + ")",
                dev);

  // Exact symmetrization: (x + x)/2 == x and (x - (-x))/2 == x in IEEE
  // arithmetic, so exactly Hermitian inputs pass through unchanged.
  Eigen::MatrixXd k = h.real();
  k = 0.5 * (k + k.transpose().eval());
  Eigen::MatrixXd l = h.imag();
  l = 0.5 * (l - l.transpose().eval());

  Eigen::MatrixXcd entries =
      k.cast<std::complex<double>>() +
      std::complex<double>(0.0, 1.0) * l.cast<std::complex<double>>();
  return HermitianOperator(std::move(entries), std::move(k), std::move(l));
}

SymplecticMatrix SymplecticMatrix::certified(Eigen::MatrixXd m, double tol) {
  const PredicateResult res = is_symplectic(m, tol);
  if (!res.ok)
    throw Error(errc::not_symplectic,
                "matrix fails the symplectic condition (max deviation " +
                    std::to_string(res.max_deviation) + ")",
                res.max_deviation);
  const int half = static_cast<int>(m.rows()) / 2;
  return SymplecticMatrix(std::move(m), half, res.max_deviation);
}

Eigen::MatrixXd symplectic_form(int half_dim) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * half_dim, 2 * half_dim);
  j.topRightCorner(half_dim, half_dim) =
      Eigen::MatrixXd::Identity(half_dim, half_dim);
  j.bottomLeftCorner(half_dim, half_dim) =
      -Eigen::MatrixXd::Identity(half_dim, half_dim);
  return j;
}

PhaseState complex_to_real_state(const ComplexState& psi) {
  return PhaseState(psi.amplitudes.real(), psi.amplitudes.imag());
}

ComplexState real_to_complex_state(const PhaseState& phi) {
  Eigen::VectorXcd v(phi.dim());
  for (Eigen::Index a = 0; a < v.size(); ++a)
    v[a] = std::complex<double>(phi.q[a], phi.p[a]);
  return ComplexState(std::move(v));
}

Eigen::MatrixXd real_embedding(const Eigen::MatrixXcd& v) {
  require_square(v);
  const Eigen::Index n = v.rows();
  Eigen::MatrixXd out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = v.real();
  out.topRightCorner(n, n) = -v.imag();
  out.bottomLeftCorner(n, n) = v.imag();
  out.bottomRightCorner(n, n) = v.real();
  return out;
}

SymplecticMatrix unitary_to_symplectic(const Eigen::MatrixXcd& v, double tol) {
  const PredicateResult u = is_unitary(v, tol);
  if (!u.ok)
    throw Error(errc::not_unitary,
                "matrix is not unitary within tolerance (max deviation " +
                    std::to_string(u.max_deviation) + ")",
                u.max_deviation);
  return SymplecticMatrix::certified(real_embedding(v), tol);
}

Eigen::MatrixXcd symplectic_to_unitary(const SymplecticMatrix& s, double tol) {
  const int n = s.half_dim();
  const double dev_diag = (s.block_a() - s.block_d()).cwiseAbs().maxCoeff();
  const double dev_off = (s.block_b() + s.block_c()).cwiseAbs().maxCoeff();
  const double dev = std::max(dev_diag, dev_off);
  if (!(dev <= tol))
    throw Error(errc::not_embedding_image,
                "matrix lacks the embedding block structure (max structural "
                "deviation " +
                    std::to_string(dev) + ")",
                dev);
  Eigen::MatrixXcd v(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      v(i, j) = std::complex<double>(s.block_a()(i, j), s.block_c()(i, j));
  return v;
}

PredicateResult is_symplectic(const Eigen::MatrixXd& s, double tol) {
  require_square(s);
  if (s.rows() % 2 != 0)
    throw Error(errc::odd_dimension,
                "symplectic condition requires even dimension, got " +
                    std::to_string(s.rows()));
  const Eigen::Index n = s.rows() / 2;
  Eigen::MatrixXd residual = s.transpose() * j_times(s);  // S^T J S
  residual.topRightCorner(n, n) -= Eigen::MatrixXd::Identity(n, n);
  residual.bottomLeftCorner(n, n) += Eigen::MatrixXd::Identity(n, n);
  const double dev = residual.cwiseAbs().maxCoeff();
  return {dev <= tol, dev};
}

PredicateResult is_orthogonal(const Eigen::MatrixXd& s, double tol) {
  require_square(s);
  const Eigen::MatrixXd residual =
      s.transpose() * s - Eigen::MatrixXd::Identity(s.rows(), s.cols());
  const double dev = residual.cwiseAbs().maxCoeff();
  return {dev <= tol, dev};
}

PredicateResult is_unitary(const Eigen::MatrixXcd& v, double tol) {
  require_square(v);
  const Eigen::MatrixXcd residual =
      v.adjoint() * v - Eigen::MatrixXcd::Identity(v.rows(), v.cols());
  const double dev = residual.cwiseAbs().maxCoeff();
  return {dev <= tol, dev};
}

Eigen::MatrixXcd intersection_to_unitary(const Eigen::MatrixXd& s, double tol) {
  const PredicateResult sp = is_symplectic(s, tol);
  if (!sp.ok)
    throw Error(errc::not_in_intersection,
                "symplectic condition failed (max deviation " +
                    std::to_string(sp.max_deviation) + ")",
                sp.max_deviation);
  const PredicateResult orth = is_orthogonal(s, tol);
  if (!orth.ok)
    throw Error(errc::not_in_intersection,
                "orthogonality condition failed (max deviation " +
                    std::to_string(orth.max_deviation) + ")",
                orth.max_deviation);

  // Membership in both groups forces commutation with the symplectic form,
  // which in turn forces the embedding block structure. Verified, not assumed.
  const double comm_dev = (j_times(s) - times_j(s)).cwiseAbs().maxCoeff();
  if (!(comm_dev <= tol))
    throw Error(errc::not_in_intersection,
                "commutation with the symplectic form failed (max deviation " +
                    std::to_string(comm_dev) + ")",
                comm_dev);

  const Eigen::Index n = s.rows() / 2;
  Eigen::MatrixXcd v(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      v(i, j) = std::complex<double>(s(i, j), s(n + i, j));

  const PredicateResult u = is_unitary(v, tol);
  if (!u.ok)
    throw Error(errc::not_in_intersection,
                "extracted block is not unitary (max deviation " +
                    std::to_string(u.max_deviation) + ")",
                u.max_deviation);
  return v;
}

}  // namespace sympsim
