#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <optional>
#include <string>

#include "sympsim/duality.hpp"
#include "sympsim/dynamics.hpp"

namespace sympsim::io {

// Complex matrix files: {"dim": N, "re": [[...]], "im": [[...]]}, row-major;
// "im" may be omitted for real-valued matrices.
Eigen::MatrixXcd complex_matrix_from_json(const nlohmann::json& j);
nlohmann::json complex_matrix_to_json(const Eigen::MatrixXcd& m);

// Real matrix files: {"dim": 2N, "entries": [[...]]}, row-major.
Eigen::MatrixXd real_matrix_from_json(const nlohmann::json& j);
nlohmann::json real_matrix_to_json(const Eigen::MatrixXd& m);

// Input for the evolve command:
//   {"H": <complex matrix> | {"K": <real matrix>, "L": <real matrix>},
//    "psi0": {"re": [...], "im": [...]}   (or "phi0": {"q": [...], "p": [...]}),
//    "t0": ..., "t1": ..., "dt": ..., "method": "midpoint" | "strang"}
// psi0/phi0 default to the ground state; dt/method have CLI-side defaults.
struct EvolveInput {
  HermitianOperator h;
  PhaseState phi0;
  double t0 = 0.0;
  double t1 = 1.0;
  std::optional<double> dt;
  std::optional<IntegratorMethod> method;
};

EvolveInput evolve_input_from_json(const nlohmann::json& j);

// Serializes after verifying no NaN/Inf leaks into the output.
std::string dump_json_checked(const nlohmann::json& j, int indent = -1);

}  // namespace sympsim::io
