#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sympsim/gates.hpp"
#include "sympsim/rng.hpp"
#include "test_support.hpp"

using namespace sympsim;
using test_support::apply_gate_bitwise;
using test_support::max_diff;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("NOTP: golden matrices, exact entries") {
  const Gate g = gate_notp();
  Eigen::MatrixXcd expected(2, 2);
  expected << 0, 1, -1, 0;
  CHECK(g.unitary == expected);
  CHECK(is_unitary(g.unitary).ok);

  // Its symplectic image, entry for entry.
  const SymplecticMatrix s = unitary_to_symplectic(g.unitary);
  Eigen::MatrixXd golden(4, 4);
  golden << 0, 1, 0, 0,
           -1, 0, 0, 0,
            0, 0, 0, 1,
            0, 0, -1, 0;
  CHECK(s.entries() == golden);

  // Applying it twice flips the sign of the state, not the identity.
  CHECK(Eigen::MatrixXcd(g.unitary * g.unitary) ==
        Eigen::MatrixXcd(-Eigen::MatrixXcd::Identity(2, 2)));
}

TEST_CASE("rotation: identity at zero, quarter turn equals NOTP") {
  CHECK(gate_rotation(0.0).symplectic == Eigen::MatrixXd::Identity(2, 2));

  const Gate quarter = gate_rotation(kPi / 2);
  Eigen::MatrixXd notp_plane(2, 2);
  notp_plane << 0, 1, -1, 0;
  // cos(pi/2) is one ulp away from zero in binary floating point.
  CHECK(max_diff(quarter.symplectic, notp_plane) <= 1e-16);
}

TEST_CASE("rotation: angle addition and group membership") {
  rng::Sequence gen(201);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = 6.0 * gen.uniform01() - 3.0;
    const double b = 6.0 * gen.uniform01() - 3.0;
    const Eigen::MatrixXd prod =
        gate_rotation(a).symplectic * gate_rotation(b).symplectic;
    CHECK(max_diff(prod, gate_rotation(a + b).symplectic) <= 1e-12);
    CHECK(is_symplectic(gate_rotation(a).symplectic).ok);
    CHECK(is_orthogonal(gate_rotation(a).symplectic).ok);
  }
  CHECK_THROWS_AS(gate_rotation(std::nan("")), Error);
}

TEST_CASE("rotation: real plane matrix is the image of its complex phase") {
  rng::Sequence gen(202);
  for (int trial = 0; trial < 10; ++trial) {
    const double theta = 6.0 * gen.uniform01() - 3.0;
    const Gate g = gate_rotation(theta);
    CHECK(g.kind == GateKind::Unitary);
    CHECK(g.symplectic == real_embedding(g.unitary));
  }
}

TEST_CASE("CNOT: permutation action and block-diagonal image") {
  const Gate g = gate_cnot();
  Eigen::VectorXcd basis10 = Eigen::VectorXcd::Zero(4);
  basis10[2] = 1.0;
  const Eigen::VectorXcd mapped = g.unitary * basis10;
  CHECK(mapped[3] == std::complex<double>(1, 0));

  const SymplecticMatrix s = cnot_symplectic();
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(8, 8);
  expected.topLeftCorner(4, 4) = g.unitary.real();
  expected.bottomRightCorner(4, 4) = g.unitary.real();
  CHECK(s.entries() == expected);
  CHECK(is_symplectic(s.entries()).ok);
  CHECK(is_orthogonal(s.entries()).ok);
}

TEST_CASE("CNOT: symplectic image acts like the complex gate on 20 states") {
  rng::Sequence gen(203);
  const SymplecticMatrix s = cnot_symplectic();
  const Gate g = gate_cnot();
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexState psi(rng::random_unit_state(4, gen));
    const PhaseState expected =
        complex_to_real_state(ComplexState(g.unitary * psi.amplitudes));
    const Eigen::VectorXd actual =
        s.entries() * complex_to_real_state(psi).stacked();
    CHECK((actual - expected.stacked()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("squeeze and shear: strict inclusion witnesses") {
  const Gate sq = gate_squeeze(1.0);
  CHECK(is_symplectic(sq.symplectic).ok);
  CHECK(!is_orthogonal(sq.symplectic).ok);
  CHECK(sq.kind == GateKind::SymplecticOnly);

  const Gate sh = gate_shear(0.7);
  CHECK(is_symplectic(sh.symplectic).ok);
  CHECK(!is_orthogonal(sh.symplectic).ok);
  // det = 1 exactly: triangular with unit diagonal.
  CHECK(sh.symplectic.determinant() == 1.0);

  // Boundary case: zero parameter collapses to the identity, which is
  // orthogonal again.
  CHECK(gate_squeeze(0.0).symplectic == Eigen::MatrixXd::Identity(2, 2));
  CHECK(is_orthogonal(gate_squeeze(0.0).symplectic).ok);

  CHECK_THROWS_AS(gate_squeeze(std::numeric_limits<double>::infinity()), Error);
  CHECK_THROWS_AS(gate_shear(std::nan("")), Error);
}

TEST_CASE("squeeze: norm scaling on a single mode pair") {
  // Unit phase-plane state (q, p) = (1, 0): squeeze(r) scales the norm
  // by e^r; rotations leave it fixed.
  const Eigen::Vector2d plane_state(1.0, 0.0);
  const Eigen::Vector2d squeezed = gate_squeeze(1.0).symplectic * plane_state;
  CHECK(squeezed[0] == std::exp(1.0));
  CHECK(squeezed.norm() == std::exp(1.0));

  rng::Sequence gen(204);
  for (int trial = 0; trial < 10; ++trial) {
    const double r = 2.0 * gen.uniform01() - 1.0;
    const double theta = 6.0 * gen.uniform01() - 3.0;
    CHECK((gate_squeeze(r).symplectic * plane_state).norm() ==
          doctest::Approx(std::exp(r)).epsilon(1e-14));
    CHECK((gate_rotation(theta).symplectic * plane_state).norm() ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("embed_unitary: X on the most significant qubit permutes halves") {
  const Gate x = GateCatalog::standard().build("X", {});
  const Eigen::MatrixXcd e = embed_unitary(x, {0}, 2);
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected(2, 0) = 1;
  expected(3, 1) = 1;
  expected(0, 2) = 1;
  expected(1, 3) = 1;
  CHECK(e == expected);
}

TEST_CASE("embed_unitary: embedding into its own size is the gate itself") {
  const Gate cnot = gate_cnot();
  CHECK(embed_unitary(cnot, {0, 1}, 2) == cnot.unitary);
  const Gate h = GateCatalog::standard().build("H", {});
  CHECK(embed_unitary(h, {0}, 1) == h.unitary);
}

TEST_CASE("embed_unitary: agrees with the bitwise state-rewrite oracle") {
  rng::Sequence gen(205);
  const Gate cnot = gate_cnot();
  for (const std::vector<int>& targets :
       {std::vector<int>{0, 1}, {0, 2}, {2, 0}, {1, 2}}) {
    const Eigen::MatrixXcd e = embed_unitary(cnot, targets, 3);
    for (int basis = 0; basis < 8; ++basis) {
      Eigen::VectorXcd in = Eigen::VectorXcd::Zero(8);
      in[basis] = 1.0;
      const Eigen::VectorXcd direct = e * in;
      const Eigen::VectorXcd oracle =
          apply_gate_bitwise(cnot.unitary, targets, 3, in);
      CHECK((direct - oracle).cwiseAbs().maxCoeff() == 0.0);
    }
  }

  // Random single-qubit embeddings against the oracle on random states.
  for (int trial = 0; trial < 20; ++trial) {
    const double theta = 6.0 * gen.uniform01() - 3.0;
    const Gate rz = GateCatalog::standard().build("RZ", {theta});
    const int n = gen.uniform_int(1, 5);
    const int target = gen.uniform_int(0, n - 1);
    const Eigen::VectorXcd psi = rng::random_unit_state(1 << n, gen);
    const Eigen::VectorXcd direct = embed_unitary(rz, {target}, n) * psi;
    const Eigen::VectorXcd oracle =
        apply_gate_bitwise(rz.unitary, {target}, n, psi);
    CHECK((direct - oracle).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("embed_unitary: validation errors") {
  const Gate x = GateCatalog::standard().build("X", {});
  const Gate cnot = gate_cnot();
  CHECK_THROWS_AS(embed_unitary(x, {3}, 2), Error);          // out of range
  CHECK_THROWS_AS(embed_unitary(cnot, {1, 1}, 3), Error);    // duplicate
  CHECK_THROWS_AS(embed_unitary(cnot, {0}, 3), Error);       // arity
  CHECK_THROWS_AS(embed_unitary(gate_squeeze(1.0), {0}, 2), Error);  // kind

  try {
    embed_unitary(x, {5}, 3);
    FAIL("expected target_out_of_range");
  } catch (const Error& e) {
    CHECK(e.code() == errc::target_out_of_range);
  }
}

TEST_CASE("embed_symplectic: squeeze on mode 0 of two modes") {
  const Gate sq = gate_squeeze(0.5);
  const SymplecticMatrix e = embed_symplectic(sq, {0}, 2);
  Eigen::MatrixXd expected = Eigen::MatrixXd::Identity(4, 4);
  expected(0, 0) = std::exp(0.5);   // q_0
  expected(2, 2) = std::exp(-0.5);  // p_0 lives at index N + 0
  CHECK(e.entries() == expected);
}

TEST_CASE("embed_symplectic: identity gate embeds to the identity") {
  const SymplecticMatrix e = embed_symplectic(gate_rotation(0.0), {1}, 3);
  CHECK(e.entries() == Eigen::MatrixXd::Identity(6, 6));
}

TEST_CASE("embed_symplectic: stays symplectic across random placements") {
  rng::Sequence gen(206);
  for (int trial = 0; trial < 50; ++trial) {
    const int n_modes = gen.uniform_int(1, 6);
    const int mode = gen.uniform_int(0, n_modes - 1);
    const double param = 2.0 * gen.uniform01() - 1.0;
    Gate g;
    switch (gen.uniform_int(0, 2)) {
      case 0: g = gate_squeeze(param); break;
      case 1: g = gate_shear(param); break;
      default: g = gate_rotation(param); break;
    }
    const SymplecticMatrix e = embed_symplectic(g, {mode}, n_modes);
    CHECK(is_symplectic(e.entries()).max_deviation <= 1e-12);
  }
}

TEST_CASE("embed_symplectic: validation errors") {
  const Gate sq = gate_squeeze(1.0);
  try {
    embed_symplectic(sq, {4}, 3);
    FAIL("expected mode_out_of_range");
  } catch (const Error& e) {
    CHECK(e.code() == errc::mode_out_of_range);
  }
  CHECK_THROWS_AS(embed_symplectic(gate_cnot(), {0}, 2), Error);  // kind
}

TEST_CASE("embed_mode_unitary: diagonal phase for the rotation") {
  const double theta = 0.9;
  const Eigen::MatrixXcd e = embed_mode_unitary(gate_rotation(theta), {2}, 4);
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Identity(4, 4);
  expected(2, 2) = std::polar(1.0, -theta);
  CHECK((e - expected).cwiseAbs().maxCoeff() <= 1e-16);
  CHECK_THROWS_AS(embed_mode_unitary(gate_squeeze(1.0), {0}, 2), Error);
}

TEST_CASE("catalog: contents, rebuild determinism, and kind invariants") {
  const GateCatalog& cat = GateCatalog::standard();
  for (const char* name : {"NOTP", "X", "Y", "Z", "H", "S", "T", "RX", "RY",
                           "RZ", "CNOT", "ROT", "SQUEEZE", "SHEAR"})
    CHECK(cat.find(name) != nullptr);

  rng::Sequence gen(207);
  for (const std::string& name : cat.names()) {
    const GateDef* def = cat.find(name);
    std::vector<double> params;
    for (int i = 0; i < def->param_count; ++i)
      params.push_back(gen.uniform01() + 0.1);  // nonzero, generic

    const Gate a = cat.build(name, params);
    const Gate b = cat.build(a.name, a.params);  // name + params round trip
    CHECK(a.name == name);
    CHECK(a.unitary == b.unitary);
    CHECK(a.symplectic == b.symplectic);

    if (a.kind == GateKind::Unitary) {
      CHECK(is_unitary(a.unitary, 1e-12).ok);
    } else {
      CHECK(is_symplectic(a.symplectic, 1e-12).ok);
      CHECK(!is_orthogonal(a.symplectic, 1e-12).ok);
    }
    if (a.space == TargetSpace::Mode)
      CHECK(is_symplectic(a.symplectic, 1e-12).ok);
  }

  CHECK_THROWS_AS(cat.build("NOPE", {}), Error);
  CHECK_THROWS_AS(cat.build("RZ", {}), Error);        // missing parameter
  CHECK_THROWS_AS(cat.build("X", {0.5}), Error);      // unexpected parameter
}
