#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "sympsim/matrix_io.hpp"

using json = nlohmann::json;
using namespace sympsim;

TEST_CASE("matrix files: complex round trip, optional imaginary part") {
  const json j = {{"dim", 2},
                  {"re", {{0.0, 1.0}, {1.0, 0.0}}},
                  {"im", {{0.0, -0.5}, {0.5, 0.0}}}};
  const Eigen::MatrixXcd m = io::complex_matrix_from_json(j);
  CHECK(m(0, 1) == std::complex<double>(1.0, -0.5));
  CHECK(m(1, 0) == std::complex<double>(1.0, 0.5));

  const Eigen::MatrixXcd back =
      io::complex_matrix_from_json(io::complex_matrix_to_json(m));
  CHECK(back == m);

  const json real_only = {{"dim", 1}, {"re", {{3.25}}}};
  CHECK(io::complex_matrix_from_json(real_only)(0, 0) ==
        std::complex<double>(3.25, 0.0));
}

TEST_CASE("matrix files: real matrices and validation failures") {
  const json j = {{"dim", 2}, {"entries", {{1.0, 2.0}, {3.0, 4.0}}}};
  const Eigen::MatrixXd m = io::real_matrix_from_json(j);
  CHECK(m(1, 0) == 3.0);
  CHECK(io::real_matrix_from_json(io::real_matrix_to_json(m)) == m);

  CHECK_THROWS_AS(io::real_matrix_from_json(json{{"dim", 2}}), Error);
  CHECK_THROWS_AS(
      io::real_matrix_from_json(json{{"dim", 2}, {"entries", {{1.0}}}}),
      Error);
  CHECK_THROWS_AS(io::complex_matrix_from_json(json{{"re", {{1.0}}}}), Error);
  CHECK_THROWS_AS(io::complex_matrix_from_json(
                      json{{"dim", 0}, {"re", json::array()}}),
                  Error);
  CHECK_THROWS_AS(io::complex_matrix_from_json(
                      json{{"dim", 1}, {"re", {{"text"}}}}),
                  Error);
}

TEST_CASE("evolve input: complex spelling with explicit state") {
  const json j = {{"H", {{"dim", 2}, {"re", {{0.0, 1.0}, {1.0, 0.0}}}}},
                  {"psi0", {{"re", {0.6, 0.8}}, {"im", {0.0, 0.0}}}},
                  {"t0", 0.0},
                  {"t1", 2.0},
                  {"dt", 0.01},
                  {"method", "strang"}};
  const io::EvolveInput input = io::evolve_input_from_json(j);
  CHECK(input.h.dim() == 2);
  CHECK(input.phi0.q[0] == 0.6);
  CHECK(input.t1 == 2.0);
  CHECK(input.dt.value() == 0.01);
  CHECK(input.method.value() == IntegratorMethod::StrangSplitting);
}

TEST_CASE("evolve input: split spelling, defaults, and failures") {
  const json j = {{"H", {{"K", {{"dim", 2}, {"entries", {{1.0, 0.0}, {0.0, -1.0}}}}}}},
                  {"t0", 0.0},
                  {"t1", 1.0}};
  const io::EvolveInput input = io::evolve_input_from_json(j);
  CHECK(input.h.l_part() == Eigen::MatrixXd::Zero(2, 2));
  CHECK(input.phi0.q[0] == 1.0);  // ground state default
  CHECK(!input.dt.has_value());
  CHECK(!input.method.has_value());

  // phi0 spelling
  const json j2 = {{"H", {{"dim", 1}, {"re", {{1.0}}}}},
                   {"phi0", {{"q", {0.5}}, {"p", {-0.5}}}},
                   {"t0", 0.0},
                   {"t1", 1.0}};
  CHECK(io::evolve_input_from_json(j2).phi0.p[0] == -0.5);

  CHECK_THROWS_AS(io::evolve_input_from_json(json{{"t0", 0.0}, {"t1", 1.0}}),
                  Error);  // missing H
  const json bad_method = {{"H", {{"dim", 1}, {"re", {{1.0}}}}},
                           {"t0", 0.0},
                           {"t1", 1.0},
                           {"method", "rk4"}};
  CHECK_THROWS_AS(io::evolve_input_from_json(bad_method), Error);
  const json not_hermitian = {{"H", {{"dim", 2}, {"re", {{0.0, 1.0}, {0.0, 0.0}}}}},
                              {"t0", 0.0},
                              {"t1", 1.0}};
  CHECK_THROWS_AS(io::evolve_input_from_json(not_hermitian), Error);
}

TEST_CASE("json output guard: refuses NaN and infinities") {
  CHECK(io::dump_json_checked(json{{"x", 1.0}}) == "{\"x\":1.0}");
  CHECK_THROWS_AS(
      io::dump_json_checked(json{{"x", std::nan("")}}),
      Error);
  json nested;
  nested["a"]["b"] = {1.0, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(io::dump_json_checked(nested), Error);
}
