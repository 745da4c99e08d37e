#include <catch2/catch_amalgamated.hpp>

#include "qlectra/qgate.hpp"
#include "oracles.hpp"

using namespace qlectra;

TEST_CASE("gate constructors") {
  SECTION("everything constructed is unitary") {
    for (const GateMatrix& g : {gate_x(), gate_y(), gate_z(), gate_h(), gate_phase(0.37),
                                gate_cnot(), gate_csign(), gate_toffoli(), gate_u_kj(3, 1)})
      CHECK(is_unitary(g.mat, 1e-9));
  }
  SECTION("U_{k,j} at distance 1 is diag(1,1,1,i)") {
    GateMatrix u = gate_u_kj(2, 1);
    CHECK(std::abs(u.mat(3, 3) - cxd(0, 1)) < 1e-12);
    CHECK(std::abs(u.mat(0, 0) - cxd(1, 0)) < 1e-12);
    CHECK_THROWS_AS(gate_u_kj(1, 1), error);
  }
  SECTION("Lambda_0 phase is the identity") {
    CHECK((gate_phase(0.0).mat - Mat::Identity(2, 2)).norm() < 1e-15);
  }
  SECTION("H is an involution") {
    CHECK((gate_h().mat * gate_h().mat - Mat::Identity(2, 2)).norm() < 1e-12);
  }
  SECTION("CSign is the 1-controlled diag(1,-1)") {
    Circuit c = controlled(unitary_gate((Mat(2, 2) << 1, 0, 0, -1).finished()), 1);
    CHECK((unitary_of(c).mat - gate_csign().mat).norm() < 1e-12);
  }
}

TEST_CASE("gate application") {
  SECTION("CNOT flips the target when the control is set") {
    Ket psi = apply(Ket::basis({2, 2}, 2), gate_cnot(), {0, 1}); // |10> -> |11>
    CHECK(std::abs(psi.amps(3) - cxd(1, 0)) < 1e-12);
  }
  SECTION("H |0> is the balanced superposition") {
    Ket psi = apply(Ket::basis({2}, 0), gate_h(), {0});
    CHECK(std::abs(psi.amps(0) - cxd(1 / std::sqrt(2.0), 0)) < 1e-12);
    CHECK(std::abs(psi.amps(1) - cxd(1 / std::sqrt(2.0), 0)) < 1e-12);
  }
  SECTION("g then g^+ restores the state; norm preserved") {
    rng::Stream rs(21);
    Ket psi = oracles::random_ket({2, 3, 2}, rs);
    GateMatrix g = unitary_gate(oracles::random_unitary(6, rs));
    Ket fwd = apply(psi, g, {1, 2});
    CHECK(fwd.norm() == Catch::Approx(1.0).margin(1e-9));
    Ket back = apply(fwd, g.adjoint(), {1, 2});
    CHECK((back.amps - psi.amps).norm() < 1e-9);
  }
  SECTION("application is linear") {
    rng::Stream rs(22);
    Ket a = oracles::random_ket({2, 2}, rs), b = oracles::random_ket({2, 2}, rs);
    cxd alpha(0.3, -0.2), beta(0.5, 0.1);
    GateMatrix g = unitary_gate(oracles::random_unitary(2, rs));
    Ket mix({2, 2}, alpha * a.amps + beta * b.amps);
    Vec lhs = apply(mix, g, {1}).amps;
    Vec rhs = alpha * apply(a, g, {1}).amps + beta * apply(b, g, {1}).amps;
    CHECK((lhs - rhs).norm() < 1e-12);
  }
  SECTION("mismatched targets rejected") {
    CHECK_THROWS_AS(apply(Ket::basis({2, 2}, 0), gate_cnot(), {0}), error);
    CHECK_THROWS_AS(apply(Ket::basis({2, 2}, 0), gate_cnot(), {1, 1}), error);
  }
  SECTION("non-adjacent and reversed targets work") {
    // CNOT with control qubit 2, target qubit 0 on a 3-qubit register
    Ket psi = apply(Ket::basis({2, 2, 2}, 1), gate_cnot(), {2, 0}); // |001> -> |101>
    CHECK(std::abs(psi.amps(5) - cxd(1, 0)) < 1e-12);
  }
}

TEST_CASE("gate roots") {
  SECTION("root of identity") {
    GateMatrix v = gate_root(unitary_gate(Mat::Identity(2, 2)));
    CHECK((v.mat - Mat::Identity(2, 2)).norm() < 1e-9);
  }
  SECTION("root of X against the closed form") {
    GateMatrix v = gate_root(gate_x());
    Mat expect(2, 2);
    expect << cxd(0.5, 0.5), cxd(0.5, -0.5), cxd(0.5, -0.5), cxd(0.5, 0.5);
    CHECK((v.mat * v.mat - gate_x().mat).norm() < 1e-9);
    CHECK((v.mat - expect).norm() < 1e-9);
  }
  SECTION("random unitaries: V^2 = U, V unitary") {
    rng::Stream rs(23);
    for (int rep = 0; rep < 20; ++rep) {
      GateMatrix u = unitary_gate(oracles::random_unitary(2, rs));
      GateMatrix v = gate_root(u);
      CHECK(is_unitary(v.mat, 1e-9));
      CHECK((v.mat * v.mat - u.mat).norm() < 1e-9);
    }
  }
}

TEST_CASE("controlled gates") {
  SECTION("Lambda_2 X equals the Toffoli matrix") {
    Circuit c = controlled(gate_x(), 2);
    CHECK((unitary_of(c).mat - gate_toffoli().mat).norm() < 1e-9);
  }
  SECTION("Lambda_2 U equals the direct block construction for random U") {
    rng::Stream rs(24);
    for (int rep = 0; rep < 50; ++rep) {
      GateMatrix u = unitary_gate(oracles::random_unitary(2, rs));
      Mat expect = Mat::Identity(8, 8);
      expect.block(6, 6, 2, 2) = u.mat;
      CHECK((unitary_of(controlled(u, 2)).mat - expect).norm() < 1e-9);
    }
  }
  SECTION("Lambda_2 U acts as U exactly on the |11> control branch") {
    rng::Stream rs(25);
    GateMatrix u = unitary_gate(oracles::random_unitary(2, rs));
    Ket phi = oracles::random_ket({2}, rs);
    Ket in = tensor(tensor(Ket::basis({2}, 1), Ket::basis({2}, 1)), phi);
    Ket out = run(controlled(u, 2), in);
    Vec expect = tensor(tensor(Ket::basis({2}, 1), Ket::basis({2}, 1)),
                        Ket({2}, (u.mat * phi.amps).eval()))
                     .amps;
    CHECK((out.amps - expect).norm() < 1e-9);
  }
  SECTION("unsupported control count") {
    CHECK_THROWS_AS(controlled(gate_x(), 3), error);
  }
}

TEST_CASE("u_seq") {
  SECTION("counter 0 leaves the target alone") {
    GateMatrix us = u_seq(gate_x(), 2);
    // column of |x=0, a=0> is itself
    Vec col = us.mat.col(0);
    CHECK(std::abs(col(0) - cxd(1, 0)) < 1e-12);
  }
  SECTION("a = 3 applies U^3") {
    rng::Stream rs(26);
    GateMatrix u = unitary_gate(oracles::random_unitary(2, rs));
    GateMatrix us = u_seq(u, 2);
    Ket x = oracles::random_ket({2}, rs);
    Vec in = tensor(x, Ket::basis({2, 2}, 3)).amps;
    Vec out = us.mat * in;
    Mat u3 = u.mat * u.mat * u.mat;
    Vec expect = tensor(Ket({2}, (u3 * x.amps).eval()), Ket::basis({2, 2}, 3)).amps;
    CHECK((out - expect).norm() < 1e-9);
    CHECK(is_unitary(us.mat, 1e-9));
  }
}

TEST_CASE("circuits") {
  SECTION("empty circuit is the identity") {
    Circuit c({2, 2});
    CHECK((unitary_of(c).mat - Mat::Identity(4, 4)).norm() < 1e-12);
  }
  SECTION("run equals the assembled matrix product on random 3-step circuits") {
    rng::Stream rs(27);
    Circuit c({2, 2});
    Mat total = Mat::Identity(4, 4);
    GateMatrix g1 = unitary_gate(oracles::random_unitary(2, rs));
    GateMatrix g2 = unitary_gate(oracles::random_unitary(4, rs));
    GateMatrix g3 = unitary_gate(oracles::random_unitary(2, rs));
    c.add(g1, {0}).add(g2, {0, 1}).add(g3, {1});
    total = kron(g1.mat, Mat::Identity(2, 2));
    total = g2.mat * total;
    total = kron(Mat::Identity(2, 2), g3.mat) * total;
    Ket psi = oracles::random_ket({2, 2}, rs);
    CHECK((run(c, psi).amps - total * psi.amps).norm() < 1e-9);
    CHECK((unitary_of(c).mat - total).norm() < 1e-9);
  }
  SECTION("teleportation pre-measurement algebra (A,B,C order)") {
    // (|00>+|11>) (x) (l|0>+m|1>)  --CNOT(C->A), H(C)-->  the 8-amplitude
    // expansion  l(000+001+110+111) + m(100-101+010-011), all over 2
    cxd l(0.8, 0.1), m(0.0, 0.0);
    m = std::sqrt(cxd(1.0, 0) - l * l);
    Vec cq(2);
    cq << l, m;
    Ket in = tensor(epr_pair(), Ket({2}, cq));
    Circuit c({2, 2, 2});
    c.add(gate_cnot(), {2, 0}); // control C, target A
    c.add(gate_h(), {2});
    Ket out = run(c, in);
    Vec expect(8);
    cxd half(0.5, 0);
    expect << l * half, l * half, m * half, -m * half, m * half, -m * half, l * half, l * half;
    CHECK((out.amps - expect).norm() < 1e-9);
  }
  SECTION("one-qubit gates fit the 4-parameter unitary family") {
    auto fit_residual = [](const Mat& u) {
      cxd det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
      double alpha = std::arg(det) / 2.0;
      Mat su = std::polar(1.0, -alpha) * u;
      double theta = std::atan2(std::abs(su(0, 1)), std::abs(su(0, 0)));
      double phi = std::abs(su(0, 0)) > 1e-9 ? std::arg(su(0, 0)) : 0.0;
      double xi = std::abs(su(0, 1)) > 1e-9 ? std::arg(su(0, 1)) : 0.0;
      Mat rebuilt(2, 2);
      rebuilt << std::polar(std::cos(theta), phi), std::polar(std::sin(theta), xi),
          -std::polar(std::sin(theta), -xi), std::polar(std::cos(theta), -phi);
      rebuilt *= std::polar(1.0, alpha);
      return (u - rebuilt).norm();
    };
    for (const GateMatrix& g : {gate_x(), gate_y(), gate_z(), gate_h(), gate_phase(1.234)})
      CHECK(fit_residual(g.mat) < 1e-8);
    rng::Stream rs(28);
    for (int rep = 0; rep < 10; ++rep)
      CHECK(fit_residual(oracles::random_unitary(2, rs)) < 1e-8);
  }
}
