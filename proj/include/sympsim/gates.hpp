#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sympsim/duality.hpp"

namespace sympsim {

// Unitary gates preserve the state norm and act on both backends;
// SymplecticOnly gates are symplectic but not orthogonal (squeeze, shear) and
// exist only on the real backend.
enum class GateKind { Unitary, SymplecticOnly };

// Qubit gates target qubit indices of C^{2^n}; Mode gates target coordinate
// pairs (q_k, p_k) of single complex basis indices k.
enum class TargetSpace { Qubit, Mode };

struct Gate {
  std::string name;
  GateKind kind = GateKind::Unitary;
  TargetSpace space = TargetSpace::Qubit;
  std::vector<double> params;
  int arity = 1;
  // Qubit gates: 2^arity x 2^arity unitary. Mode gates of kind Unitary: the
  // arity x arity complex action on the targeted amplitudes (empty for
  // SymplecticOnly gates, which have no complex form).
  Eigen::MatrixXcd unitary;
  // Mode gates: 2*arity x 2*arity real matrix in the stacked layout of the
  // targeted modes. Empty for Qubit gates (their real form is derived by
  // embedding).
  Eigen::MatrixXd symplectic;
};

// The plane rotation by pi/2, [[0, 1], [-1, 0]]: a NOT variant that maps
// |0> to -|1> and squares to -I. Registered as NOTP alongside the
// conventional PAULI X.
Gate gate_notp();

// Single-mode phase-plane rotation R(theta) = [[cos, sin], [-sin, cos]];
// equivalently the phase e^{-i theta} on the targeted amplitude. Member of
// both Sp(2) and O(2) for every angle.
Gate gate_rotation(double theta);

Gate gate_cnot();
SymplecticMatrix cnot_symplectic();

// Strictly symplectic single-mode gates: in Sp(2) but outside O(2) for
// nonzero parameter. These witness that the symplectic gate set properly
// contains the unitary image.
Gate gate_squeeze(double r);  // diag(e^r, e^-r) on (q_k, p_k)
Gate gate_shear(double s);    // [[1, s], [0, 1]] on (q_k, p_k)

struct GateDef {
  int param_count = 0;
  int arity = 1;
  GateKind kind = GateKind::Unitary;
  TargetSpace space = TargetSpace::Qubit;
  std::function<Gate(const std::vector<double>&)> make;
};

// Immutable registry, built once. Contents: NOTP, X, Y, Z, H, S, T,
// RX/RY/RZ(theta), CNOT, ROT(theta), SQUEEZE(r), SHEAR(s).
class GateCatalog {
 public:
  static const GateCatalog& standard();

  const GateDef* find(const std::string& name) const;
  // Validates the parameter count; throws unknown_gate / arity_mismatch.
  Gate build(const std::string& name, const std::vector<double>& params) const;
  std::vector<std::string> names() const;

 private:
  GateCatalog() = default;
  std::map<std::string, GateDef> defs_;
};

// Full-system unitary acting as `g` on `targets` and as identity elsewhere.
// Basis convention: qubit 0 is the most significant bit of the basis index;
// targets[0] is the most significant bit of the gate's own index space.
Eigen::MatrixXcd embed_unitary(const Gate& g, const std::vector<int>& targets,
                               int n_qubits);

// 2N x 2N matrix acting as `g` on the selected (q_k, p_k) pairs and as
// identity on all others, in the stacked block layout. Accepts any Mode-space
// gate; Qubit-space gates are rejected with kind_mismatch.
SymplecticMatrix embed_symplectic(const Gate& g, const std::vector<int>& modes,
                                  int n_modes);

// Same embedding without certification; the executor's inner loop.
Eigen::MatrixXd embed_symplectic_raw(const Gate& g,
                                     const std::vector<int>& modes,
                                     int n_modes);

// Complex action of a Mode-space gate in the unitary image: N x N matrix
// acting as g.unitary on the targeted amplitudes.
Eigen::MatrixXcd embed_mode_unitary(const Gate& g,
                                    const std::vector<int>& modes, int n_modes);

}  // namespace sympsim
