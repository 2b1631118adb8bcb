#include "sympsim/dynamics.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>

namespace sympsim {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

double one_norm(const MatrixXcd& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

// Diagonal Pade approximant r_m(A) = (V - U)^{-1} (V + U) with
// U the odd and V the even part of the numerator polynomial.
MatrixXcd pade_low(const MatrixXcd& a, const double* b, int degree) {
  const Eigen::Index n = a.rows();
  const MatrixXcd ident = MatrixXcd::Identity(n, n);
  const MatrixXcd a2 = a * a;
  MatrixXcd u_poly = b[1] * ident;
  MatrixXcd v = b[0] * ident;
  MatrixXcd power = ident;  // a^{2k}
  for (int k = 1; 2 * k <= degree; ++k) {
    power = power * a2;
    u_poly += b[2 * k + 1] * power;
    v += b[2 * k] * power;
  }
  const MatrixXcd u = a * u_poly;
  return Eigen::PartialPivLU<MatrixXcd>(v - u).solve(v + u);
}

MatrixXcd pade13(const MatrixXcd& a) {
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  const Eigen::Index n = a.rows();
  const MatrixXcd ident = MatrixXcd::Identity(n, n);
  const MatrixXcd a2 = a * a;
  const MatrixXcd a4 = a2 * a2;
  const MatrixXcd a6 = a4 * a2;
  const MatrixXcd u =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
           b[3] * a2 + b[1] * ident);
  const MatrixXcd v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                      b[4] * a4 + b[2] * a2 + b[0] * ident;
  return Eigen::PartialPivLU<MatrixXcd>(v - u).solve(v + u);
}

// exp of a real matrix through the complex path; all intermediate values stay
// exactly real, so dropping the imaginary part is lossless.
MatrixXd real_matrix_exponential(const MatrixXd& m) {
  return matrix_exponential(m.cast<std::complex<double>>()).real();
}

}  // namespace

Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols())
    throw Error(errc::not_square, "matrix exponential requires a square matrix");
  if (!m.allFinite())
    throw Error(errc::non_finite, "matrix exponential of non-finite entries");

  static constexpr double b3[] = {120.0, 60.0, 12.0, 1.0};
  static constexpr double b5[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
  static constexpr double b7[] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                  25200.0,    1512.0,    56.0,      1.0};
  static constexpr double b9[] = {17643225600.0, 8821612800.0, 2075673600.0,
                                  302702400.0,   30270240.0,   2162160.0,
                                  110880.0,      3960.0,       90.0,
                                  1.0};
  static constexpr double theta3 = 1.495585217958292e-2;
  static constexpr double theta5 = 2.539398330063230e-1;
  static constexpr double theta7 = 9.504178996162932e-1;
  static constexpr double theta9 = 2.097847961257068e0;
  static constexpr double theta13 = 5.371920351148152e0;

  const double norm = one_norm(m);
  if (norm <= theta3) return pade_low(m, b3, 3);
  if (norm <= theta5) return pade_low(m, b5, 5);
  if (norm <= theta7) return pade_low(m, b7, 7);
  if (norm <= theta9) return pade_low(m, b9, 9);

  const int squarings =
      std::max(0, static_cast<int>(std::ceil(std::log2(norm / theta13))));
  MatrixXcd result = pade13(m / std::pow(2.0, squarings));
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

QuadraticHamiltonian::QuadraticHamiltonian(Eigen::MatrixXd k, Eigen::MatrixXd l,
                                           double tol) {
  if (k.rows() != k.cols() || l.rows() != l.cols() || k.rows() != l.rows())
    throw Error(errc::dim_mismatch,
                "quadratic Hamiltonian blocks must be square and equally sized");
  const double dev_sym = (k - k.transpose().eval()).cwiseAbs().maxCoeff();
  const double dev_skew = (l + l.transpose().eval()).cwiseAbs().maxCoeff();
  const double dev = std::max(dev_sym, dev_skew);
  if (!(dev <= tol))
    throw Error(errc::not_hermitian,
                "K must be symmetric and L skew-symmetric (max deviation " +
                    std::to_string(dev) + ")",
                dev);
  k_ = 0.5 * (k + k.transpose().eval());
  l_ = 0.5 * (l - l.transpose().eval());
}

QuadraticHamiltonian QuadraticHamiltonian::from_operator(
    const HermitianOperator& h) {
  // Parts are exactly (anti)symmetric already; tolerance is irrelevant here.
  return QuadraticHamiltonian(h.k_part(), h.l_part(), kDefaultTol);
}

Eigen::MatrixXd QuadraticHamiltonian::generator() const {
  const int n = dim();
  Eigen::MatrixXd m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = l_;
  m.topRightCorner(n, n) = k_;
  m.bottomLeftCorner(n, n) = -k_;
  m.bottomRightCorner(n, n) = l_;
  return m;
}

ComplexState evolve_complex(const HermitianOperator& h,
                            const ComplexState& psi0, double t) {
  if (h.dim() != psi0.dim())
    throw Error(errc::dim_mismatch, "operator dimension " +
                                        std::to_string(h.dim()) +
                                        " does not match state dimension " +
                                        std::to_string(psi0.dim()));
  const Eigen::MatrixXcd u =
      matrix_exponential(std::complex<double>(0.0, -t) * h.entries());
  return ComplexState(u * psi0.amplitudes);
}

Propagator make_propagator(const HermitianOperator& h, double t) {
  Eigen::MatrixXcd u =
      matrix_exponential(std::complex<double>(0.0, -t) * h.entries());
  SymplecticMatrix s = unitary_to_symplectic(u, kDefaultTol);
  return Propagator{t, std::move(u), std::move(s)};
}

PhaseState evolve_real_exact(const HermitianOperator& h, const PhaseState& phi0,
                             double t) {
  if (h.dim() != phi0.dim())
    throw Error(errc::dim_mismatch, "operator dimension " +
                                        std::to_string(h.dim()) +
                                        " does not match state dimension " +
                                        std::to_string(phi0.dim()));
  const Propagator prop = make_propagator(h, t);
  return PhaseState::from_stacked(prop.s_t.entries() * phi0.stacked());
}

double hsym(const QuadraticHamiltonian& hq, const PhaseState& phi) {
  if (hq.dim() != phi.dim())
    throw Error(errc::dim_mismatch, "Hamiltonian dimension " +
                                        std::to_string(hq.dim()) +
                                        " does not match state dimension " +
                                        std::to_string(phi.dim()));
  const double quad =
      phi.p.dot(hq.k() * phi.p) + phi.q.dot(hq.k() * phi.q);
  const double cross = phi.p.dot(hq.l() * phi.q);
  return 0.5 * quad + cross;
}

Eigen::MatrixXd midpoint_transfer_matrix(const QuadraticHamiltonian& hq,
                                         double dt) {
  const Eigen::Index n = 2 * hq.dim();
  const MatrixXd m = hq.generator();
  const MatrixXd ident = MatrixXd::Identity(n, n);
  return Eigen::PartialPivLU<MatrixXd>(ident - (0.5 * dt) * m)
      .solve(ident + (0.5 * dt) * m);
}

namespace {

// Sub-flow exponentials for the splitting M = M_K + M_L with
// M_K = [[0, K], [-K, 0]] (real image of -iK) and M_L = [[L, 0], [0, L]].
MatrixXd k_flow(const MatrixXd& k, double dt) {
  return real_embedding(
      matrix_exponential(std::complex<double>(0.0, -dt) *
                         k.cast<std::complex<double>>()));
}

MatrixXd l_flow(const MatrixXd& l, double dt) {
  const MatrixXd r = real_matrix_exponential(dt * l);
  const Eigen::Index n = l.rows();
  MatrixXd out = MatrixXd::Zero(2 * n, 2 * n);
  out.topLeftCorner(n, n) = r;
  out.bottomRightCorner(n, n) = r;
  return out;
}

}  // namespace

Eigen::MatrixXd strang_transfer_matrix(const QuadraticHamiltonian& hq,
                                       double dt) {
  const MatrixXd half_l = l_flow(hq.l(), 0.5 * dt);
  return half_l * k_flow(hq.k(), dt) * half_l;
}

std::vector<TrajectoryPoint> integrate(const HamiltonianSampler& sampler,
                                       const PhaseState& phi0, double t0,
                                       double t1, const IntegratorConfig& cfg) {
  if (!std::isfinite(t0) || !std::isfinite(t1) || !(t1 > t0))
    throw Error(errc::invalid_interval,
                "integration interval requires t1 > t0");
  if (!std::isfinite(cfg.dt) || !(cfg.dt > 0.0))
    throw Error(errc::invalid_interval, "step size dt must be positive");
  const int stride = cfg.sample_stride > 0 ? cfg.sample_stride : 1;

  const double span = t1 - t0;
  // Whole steps of dt plus one short closing step to land exactly on t1.
  long n_full = static_cast<long>(std::floor(span / cfg.dt + 1e-9));
  double tail = span - static_cast<double>(n_full) * cfg.dt;
  if (tail < cfg.dt * 1e-9) tail = 0.0;
  const long n_steps = n_full + (tail > 0.0 ? 1 : 0);

  VectorXd x = phi0.stacked();
  std::vector<TrajectoryPoint> traj;
  traj.reserve(static_cast<size_t>(n_steps / stride + 2));
  traj.push_back({t0, phi0});

  double t = t0;
  for (long step = 0; step < n_steps; ++step) {
    const double h = (step < n_full) ? cfg.dt : tail;
    const double t_mid = t + 0.5 * h;
    const QuadraticHamiltonian hq = sampler(t_mid);
    if (2 * hq.dim() != x.size())
      throw Error(errc::dim_mismatch,
                  "sampled Hamiltonian dimension does not match the state");

    if (cfg.method == IntegratorMethod::ImplicitMidpoint) {
      const MatrixXd m = hq.generator();
      const MatrixXd ident = MatrixXd::Identity(x.size(), x.size());
      x = Eigen::PartialPivLU<MatrixXd>(ident - (0.5 * h) * m)
              .solve((ident + (0.5 * h) * m) * x);
    } else {
      const MatrixXd half_l = l_flow(hq.l(), 0.5 * h);
      x = half_l * (k_flow(hq.k(), h) * (half_l * x));
    }
    if (!x.allFinite())
      throw Error(errc::inner_solve_diverged,
                  "integration step produced non-finite state at t = " +
                      std::to_string(t));

    t = (step + 1 == n_steps) ? t1 : t0 + static_cast<double>(step + 1) * cfg.dt;
    if ((step + 1) % stride == 0 || step + 1 == n_steps)
      traj.push_back({t, PhaseState::from_stacked(x)});
  }
  return traj;
}

}  // namespace sympsim
