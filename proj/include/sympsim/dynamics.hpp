#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "sympsim/duality.hpp"

namespace sympsim {

// exp(M) by scaling-and-squaring with diagonal Pade approximants
// (orders 3/5/7/9/13 selected by the 1-norm). For skew-Hermitian input the
// result is unitary to ~1e-14 at desk scale.
Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& m);

// Exact propagator of a time-independent Hamiltonian at time t, in both
// representations: u_t = exp(-iHt) and s_t its certified real image.
struct Propagator {
  double t = 0.0;
  Eigen::MatrixXcd u_t;
  SymplecticMatrix s_t;
};

// The quadratic generating Hamiltonian's coefficient blocks: K symmetric,
// L skew, both exactly so after construction.
class QuadraticHamiltonian {
 public:
  QuadraticHamiltonian(Eigen::MatrixXd k, Eigen::MatrixXd l,
                       double tol = kDefaultTol);
  static QuadraticHamiltonian from_operator(const HermitianOperator& h);

  int dim() const { return static_cast<int>(k_.rows()); }
  const Eigen::MatrixXd& k() const { return k_; }
  const Eigen::MatrixXd& l() const { return l_; }

  // Generator of the phase-space flow in stacked layout:
  // d/dt (q; p) = M (q; p) with M = [[L, K], [-K, L]], read off
  // q' = Lq + Kp, p' = -Kq + Lp. M is the real image of -iH.
  Eigen::MatrixXd generator() const;

 private:
  Eigen::MatrixXd k_;
  Eigen::MatrixXd l_;
};

enum class IntegratorMethod { ImplicitMidpoint, StrangSplitting };

struct IntegratorConfig {
  IntegratorMethod method = IntegratorMethod::ImplicitMidpoint;
  double dt = 1e-3;
  double newton_tol = 1e-12;  // reserved for nonlinear extensions
  int max_inner_iters = 50;   // reserved for nonlinear extensions
  int sample_stride = 1;      // keep every k-th step (endpoint always kept)
};

struct TrajectoryPoint {
  double t = 0.0;
  PhaseState state;
};

using HamiltonianSampler = std::function<QuadraticHamiltonian(double)>;

// psi(t) = exp(-iHt) psi(0).
ComplexState evolve_complex(const HermitianOperator& h, const ComplexState& psi0,
                            double t);

Propagator make_propagator(const HermitianOperator& h, double t);

// (q(t); p(t)) = S_t (q(0); p(0)) with S_t the propagator's real image.
// Agrees with evolve_complex through the state conversion.
PhaseState evolve_real_exact(const HermitianOperator& h, const PhaseState& phi0,
                             double t);

// Value of the generating Hamiltonian
//   H_sym(q, p) = 1/2 (p^T K p + q^T K q) + p^T L q,
// which equals 1/2 <psi, H psi> for psi = q + ip (the cross term enters
// unhalved; the identity is exact and is asserted in the tests).
double hsym(const QuadraticHamiltonian& hq, const PhaseState& phi);

// Integrates d/dt x = M(t) x over [t0, t1] with the configured one-step
// method. Both methods are symplectic for this linear Hamiltonian flow and
// second-order accurate; implicit midpoint reduces to one linear solve per
// step, Strang splitting to exact sub-flow exponentials frozen at the step
// midpoint.
std::vector<TrajectoryPoint> integrate(const HamiltonianSampler& sampler,
                                       const PhaseState& phi0, double t0,
                                       double t1, const IntegratorConfig& cfg);

// One-step transfer matrices, exposed for the symplecticity checks.
Eigen::MatrixXd midpoint_transfer_matrix(const QuadraticHamiltonian& hq,
                                         double dt);
Eigen::MatrixXd strang_transfer_matrix(const QuadraticHamiltonian& hq,
                                       double dt);

}  // namespace sympsim
