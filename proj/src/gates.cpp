#include "sympsim/gates.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <utility>

namespace sympsim {

namespace {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;

void require_finite_params(const std::vector<double>& params,
                           const std::string& gate) {
  for (double v : params)
    if (!std::isfinite(v))
      throw Error(errc::non_finite, gate + ": non-finite parameter");
}

Gate unitary_gate(std::string name, std::vector<double> params, int arity,
                  MatrixXcd m) {
  Gate g;
  g.name = std::move(name);
  g.kind = GateKind::Unitary;
  g.space = TargetSpace::Qubit;
  g.params = std::move(params);
  g.arity = arity;
  g.unitary = std::move(m);
  return g;
}

Gate mode_gate(std::string name, std::vector<double> params, GateKind kind,
               MatrixXd sp, MatrixXcd u = {}) {
  Gate g;
  g.name = std::move(name);
  g.kind = kind;
  g.space = TargetSpace::Mode;
  g.params = std::move(params);
  g.arity = static_cast<int>(sp.rows()) / 2;
  g.symplectic = std::move(sp);
  g.unitary = std::move(u);
  return g;
}

MatrixXcd pauli_x() {
  MatrixXcd m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

MatrixXcd pauli_y() {
  MatrixXcd m(2, 2);
  m << cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0);
  return m;
}

MatrixXcd pauli_z() {
  MatrixXcd m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace

Gate gate_notp() {
  MatrixXcd m(2, 2);
  m << 0, 1, -1, 0;
  return unitary_gate("NOTP", {}, 1, std::move(m));
}

Gate gate_rotation(double theta) {
  if (!std::isfinite(theta))
    throw Error(errc::non_finite, "ROT: non-finite angle");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  MatrixXd sp(2, 2);
  sp << c, s, -s, c;
  MatrixXcd u(1, 1);
  u(0, 0) = cplx(c, -s);  // R(theta) is the real image of e^{-i theta}
  return mode_gate("ROT", {theta}, GateKind::Unitary, std::move(sp),
                   std::move(u));
}

Gate gate_cnot() {
  MatrixXcd m = MatrixXcd::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;  // |11> -> |10>, |10> -> |11>
  m(3, 2) = 1;
  return unitary_gate("CNOT", {}, 2, std::move(m));
}

SymplecticMatrix cnot_symplectic() {
  return unitary_to_symplectic(gate_cnot().unitary);
}

Gate gate_squeeze(double r) {
  if (!std::isfinite(r))
    throw Error(errc::non_finite, "SQUEEZE: non-finite parameter");
  MatrixXd sp(2, 2);
  sp << std::exp(r), 0, 0, std::exp(-r);
  return mode_gate("SQUEEZE", {r}, GateKind::SymplecticOnly, std::move(sp));
}

Gate gate_shear(double s) {
  if (!std::isfinite(s))
    throw Error(errc::non_finite, "SHEAR: non-finite parameter");
  MatrixXd sp(2, 2);
  sp << 1, s, 0, 1;
  return mode_gate("SHEAR", {s}, GateKind::SymplecticOnly, std::move(sp));
}

const GateCatalog& GateCatalog::standard() {
  static const GateCatalog catalog = [] {
    GateCatalog cat;
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

    auto fixed_1q = [](std::string name, MatrixXcd m) {
      return [name = std::move(name),
              m = std::move(m)](const std::vector<double>&) {
        return unitary_gate(name, {}, 1, m);
      };
    };

    cat.defs_["NOTP"] = {0, 1, GateKind::Unitary, TargetSpace::Qubit,
                         [](const std::vector<double>&) { return gate_notp(); }};
    cat.defs_["X"] = {0, 1, GateKind::Unitary, TargetSpace::Qubit,
                      fixed_1q("X", pauli_x())};
    cat.defs_["Y"] = {0, 1, GateKind::Unitary, TargetSpace::Qubit,
                      fixed_1q("Y", pauli_y())};
    cat.defs_["Z"] = {0, 1, GateKind::Unitary, TargetSpace::Qubit,
                      fixed_1q("Z", pauli_z())};

    MatrixXcd h(2, 2);
    h << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
    cat.defs_["H"] = {0, 1, GateKind::Unitary, TargetSpace::Qubit,
                      fixed_1q("H", std::move(h))};

    MatrixXcd s(2, 2);
    s << 1, 0, 0, cplx(0, 1);
    cat.defs_["S"] = {0, 1, GateKind::Unitary, TargetSpace::Qubit,
                      fixed_1q("S", std::move(s))};

    MatrixXcd t(2, 2);
    t << 1, 0, 0, std::polar(1.0, std::numbers::pi / 4);
    cat.defs_["T"] = {0, 1, GateKind::Unitary, TargetSpace::Qubit,
                      fixed_1q("T", std::move(t))};

    cat.defs_["RX"] = {1, 1, GateKind::Unitary, TargetSpace::Qubit,
                       [](const std::vector<double>& p) {
                         require_finite_params(p, "RX");
                         const double c = std::cos(p[0] / 2);
                         const double sn = std::sin(p[0] / 2);
                         MatrixXcd m(2, 2);
                         m << cplx(c, 0), cplx(0, -sn), cplx(0, -sn), cplx(c, 0);
                         return unitary_gate("RX", p, 1, std::move(m));
                       }};
    cat.defs_["RY"] = {1, 1, GateKind::Unitary, TargetSpace::Qubit,
                       [](const std::vector<double>& p) {
                         require_finite_params(p, "RY");
                         const double c = std::cos(p[0] / 2);
                         const double sn = std::sin(p[0] / 2);
                         MatrixXcd m(2, 2);
                         m << cplx(c, 0), cplx(-sn, 0), cplx(sn, 0), cplx(c, 0);
                         return unitary_gate("RY", p, 1, std::move(m));
                       }};
    cat.defs_["RZ"] = {1, 1, GateKind::Unitary, TargetSpace::Qubit,
                       [](const std::vector<double>& p) {
                         require_finite_params(p, "RZ");
                         MatrixXcd m = MatrixXcd::Zero(2, 2);
                         m(0, 0) = std::polar(1.0, -p[0] / 2);
                         m(1, 1) = std::polar(1.0, p[0] / 2);
                         return unitary_gate("RZ", p, 1, std::move(m));
                       }};

    cat.defs_["CNOT"] = {0, 2, GateKind::Unitary, TargetSpace::Qubit,
                         [](const std::vector<double>&) { return gate_cnot(); }};

    cat.defs_["ROT"] = {1, 1, GateKind::Unitary, TargetSpace::Mode,
                        [](const std::vector<double>& p) {
                          return gate_rotation(p[0]);
                        }};
    cat.defs_["SQUEEZE"] = {1, 1, GateKind::SymplecticOnly, TargetSpace::Mode,
                            [](const std::vector<double>& p) {
                              return gate_squeeze(p[0]);
                            }};
    cat.defs_["SHEAR"] = {1, 1, GateKind::SymplecticOnly, TargetSpace::Mode,
                          [](const std::vector<double>& p) {
                            return gate_shear(p[0]);
                          }};
    return cat;
  }();
  return catalog;
}

const GateDef* GateCatalog::find(const std::string& name) const {
  const auto it = defs_.find(name);
  return it == defs_.end() ? nullptr : &it->second;
}

Gate GateCatalog::build(const std::string& name,
                        const std::vector<double>& params) const {
  const GateDef* def = find(name);
  if (def == nullptr)
    throw Error(errc::unknown_gate, "unknown gate '" + name + "'");
  if (static_cast<int>(params.size()) != def->param_count)
    throw Error(errc::arity_mismatch,
                "gate " + name + " expects " +
                    std::to_string(def->param_count) + " parameter(s), got " +
                    std::to_string(params.size()));
  return def->make(params);
}

std::vector<std::string> GateCatalog::names() const {
  std::vector<std::string> out;
  out.reserve(defs_.size());
  for (const auto& [name, def] : defs_) out.push_back(name);
  return out;
}

namespace {

void validate_targets(const std::vector<int>& targets, int arity, int limit,
                      errc range_code, errc dup_code, const std::string& what) {
  if (static_cast<int>(targets.size()) != arity)
    throw Error(errc::arity_mismatch,
                "expected " + std::to_string(arity) + " " + what +
                    " target(s), got " + std::to_string(targets.size()));
  std::set<int> seen;
  for (int t : targets) {
    if (t < 0 || t >= limit)
      throw Error(range_code, what + " target " + std::to_string(t) +
                                  " out of range [0, " + std::to_string(limit) +
                                  ")");
    if (!seen.insert(t).second)
      throw Error(dup_code, "duplicate " + what + " target " +
                                std::to_string(t));
  }
}

}  // namespace

Eigen::MatrixXcd embed_unitary(const Gate& g, const std::vector<int>& targets,
                               int n_qubits) {
  if (g.space != TargetSpace::Qubit || g.kind != GateKind::Unitary)
    throw Error(errc::kind_mismatch,
                "gate " + g.name + " is not a qubit-space unitary");
  validate_targets(targets, g.arity, n_qubits, errc::target_out_of_range,
                   errc::duplicate_target, "qubit");

  const int dim = 1 << n_qubits;
  const int sub_dim = 1 << g.arity;
  MatrixXcd out = MatrixXcd::Zero(dim, dim);

  // Qubit 0 is the most significant bit of the basis index, so qubit t lives
  // at bit position n_qubits - 1 - t; targets[0] is the most significant bit
  // of the gate's own index space.
  std::vector<int> shift(targets.size());
  for (size_t k = 0; k < targets.size(); ++k)
    shift[k] = n_qubits - 1 - targets[k];

  for (int col = 0; col < dim; ++col) {
    int sub_col = 0;
    int base = col;
    for (size_t k = 0; k < targets.size(); ++k) {
      sub_col = (sub_col << 1) | ((col >> shift[k]) & 1);
      base &= ~(1 << shift[k]);
    }
    for (int sub_row = 0; sub_row < sub_dim; ++sub_row) {
      int row = base;
      for (size_t k = 0; k < targets.size(); ++k)
        row |= ((sub_row >> (targets.size() - 1 - k)) & 1) << shift[k];
      out(row, col) = g.unitary(sub_row, sub_col);
    }
  }
  return out;
}

Eigen::MatrixXd embed_symplectic_raw(const Gate& g,
                                     const std::vector<int>& modes,
                                     int n_modes) {
  if (g.space != TargetSpace::Mode || g.symplectic.size() == 0)
    throw Error(errc::kind_mismatch,
                "gate " + g.name + " is not a mode-space gate");
  validate_targets(modes, g.arity, n_modes, errc::mode_out_of_range,
                   errc::duplicate_mode, "mode");

  MatrixXd out = MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  const int m = g.arity;
  auto global = [&](int sub) {
    return sub < m ? modes[sub] : n_modes + modes[sub - m];
  };
  for (int a = 0; a < 2 * m; ++a)
    for (int b = 0; b < 2 * m; ++b) out(global(a), global(b)) = g.symplectic(a, b);
  return out;
}

SymplecticMatrix embed_symplectic(const Gate& g, const std::vector<int>& modes,
                                  int n_modes) {
  return SymplecticMatrix::certified(embed_symplectic_raw(g, modes, n_modes));
}

Eigen::MatrixXcd embed_mode_unitary(const Gate& g,
                                    const std::vector<int>& modes,
                                    int n_modes) {
  if (g.space != TargetSpace::Mode || g.kind != GateKind::Unitary ||
      g.unitary.size() == 0)
    throw Error(errc::kind_mismatch,
                "gate " + g.name + " has no complex-backend action");
  validate_targets(modes, g.arity, n_modes, errc::mode_out_of_range,
                   errc::duplicate_mode, "mode");

  MatrixXcd out = MatrixXcd::Identity(n_modes, n_modes);
  for (int i = 0; i < g.arity; ++i)
    for (int j = 0; j < g.arity; ++j) out(modes[i], modes[j]) = g.unitary(i, j);
  return out;
}

}  // namespace sympsim
