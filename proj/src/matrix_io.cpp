#include "sympsim/matrix_io.hpp"

#include <cmath>
#include <string>

namespace sympsim::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw Error(errc::io_error, msg);
}

double number_at(const json& j, const std::string& context) {
  if (!j.is_number()) fail(context + ": expected a number");
  return j.get<double>();
}

Eigen::MatrixXd grid_from_json(const json& j, int rows, int cols,
                               const std::string& field) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    fail("field '" + field + "' must be an array of " + std::to_string(rows) +
         " rows");
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      fail("field '" + field + "' row " + std::to_string(r) + " must have " +
           std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c)
      m(r, c) = number_at(row[c], "field '" + field + "'");
  }
  return m;
}

Eigen::VectorXd vector_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) fail("field '" + field + "' must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = number_at(j[i], "field '" + field + "'");
  return v;
}

int dim_field(const json& j) {
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    fail("matrix object requires an integer 'dim' field");
  const int dim = j["dim"].get<int>();
  if (dim < 1 || dim > 4096) fail("matrix 'dim' out of supported range");
  return dim;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json grid_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    out.push_back(vector_to_json(m.row(r)));
  return out;
}

bool all_finite(const json& j) {
  if (j.is_number_float()) return std::isfinite(j.get<double>());
  if (j.is_array() || j.is_object()) {
    for (const auto& item : j)
      if (!all_finite(item)) return false;
  }
  return true;
}

}  // namespace

Eigen::MatrixXcd complex_matrix_from_json(const json& j) {
  if (!j.is_object()) fail("complex matrix must be a JSON object");
  const int dim = dim_field(j);
  if (!j.contains("re")) fail("complex matrix requires a 're' field");
  const Eigen::MatrixXd re = grid_from_json(j["re"], dim, dim, "re");
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(dim, dim);
  if (j.contains("im")) im = grid_from_json(j["im"], dim, dim, "im");
  Eigen::MatrixXcd out(dim, dim);
  out.real() = re;
  out.imag() = im;
  return out;
}

json complex_matrix_to_json(const Eigen::MatrixXcd& m) {
  json out;
  out["dim"] = m.rows();
  out["re"] = grid_to_json(m.real());
  out["im"] = grid_to_json(m.imag());
  return out;
}

Eigen::MatrixXd real_matrix_from_json(const json& j) {
  if (!j.is_object()) fail("real matrix must be a JSON object");
  const int dim = dim_field(j);
  if (!j.contains("entries")) fail("real matrix requires an 'entries' field");
  return grid_from_json(j["entries"], dim, dim, "entries");
}

json real_matrix_to_json(const Eigen::MatrixXd& m) {
  json out;
  out["dim"] = m.rows();
  out["entries"] = grid_to_json(m);
  return out;
}

EvolveInput evolve_input_from_json(const json& j) {
  if (!j.is_object()) fail("evolve input must be a JSON object");
  if (!j.contains("H")) fail("evolve input requires an 'H' field");

  const json& h_field = j["H"];
  Eigen::MatrixXcd h_matrix;
  if (h_field.is_object() && (h_field.contains("K") || h_field.contains("L"))) {
    // Real split spelling: H = K + iL with K given and L optional (zero).
    if (!h_field.contains("K")) fail("'H' with a split spelling requires 'K'");
    const Eigen::MatrixXd k = real_matrix_from_json(h_field["K"]);
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(k.rows(), k.cols());
    if (h_field.contains("L")) l = real_matrix_from_json(h_field["L"]);
    if (l.rows() != k.rows()) fail("'K' and 'L' dimensions differ");
    h_matrix.resize(k.rows(), k.cols());
    h_matrix.real() = k;
    h_matrix.imag() = l;
  } else {
    h_matrix = complex_matrix_from_json(h_field);
  }

  HermitianOperator h = decompose_hermitian(h_matrix, 1e-9);
  const int dim = h.dim();

  PhaseState phi0 = PhaseState::ground(dim);
  if (j.contains("psi0")) {
    const json& s = j["psi0"];
    if (!s.is_object() || !s.contains("re")) fail("'psi0' requires 're'");
    const Eigen::VectorXd re = vector_from_json(s["re"], "psi0.re");
    Eigen::VectorXd im = Eigen::VectorXd::Zero(re.size());
    if (s.contains("im")) im = vector_from_json(s["im"], "psi0.im");
    if (re.size() != dim || im.size() != dim)
      fail("'psi0' length does not match the operator dimension");
    phi0 = PhaseState(re, im);
  } else if (j.contains("phi0")) {
    const json& s = j["phi0"];
    if (!s.is_object() || !s.contains("q") || !s.contains("p"))
      fail("'phi0' requires 'q' and 'p'");
    const Eigen::VectorXd q = vector_from_json(s["q"], "phi0.q");
    const Eigen::VectorXd p = vector_from_json(s["p"], "phi0.p");
    if (q.size() != dim || p.size() != dim)
      fail("'phi0' length does not match the operator dimension");
    phi0 = PhaseState(q, p);
  }

  EvolveInput input{std::move(h), std::move(phi0), 0.0, 1.0, {}, {}};
  if (!j.contains("t0") || !j.contains("t1"))
    fail("evolve input requires 't0' and 't1'");
  input.t0 = number_at(j["t0"], "t0");
  input.t1 = number_at(j["t1"], "t1");
  if (j.contains("dt")) input.dt = number_at(j["dt"], "dt");
  if (j.contains("method")) {
    const std::string m = j["method"].get<std::string>();
    if (m == "midpoint")
      input.method = IntegratorMethod::ImplicitMidpoint;
    else if (m == "strang")
      input.method = IntegratorMethod::StrangSplitting;
    else
      fail("unknown method '" + m + "' (expected 'midpoint' or 'strang')");
  }
  return input;
}

std::string dump_json_checked(const json& j, int indent) {
  if (!all_finite(j))
    throw Error(errc::non_finite, "refusing to serialize NaN/Inf");
  return j.dump(indent);
}

}  // namespace sympsim::io
