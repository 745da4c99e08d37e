#include <catch2/catch_amalgamated.hpp>

#include "qlectra/qopen.hpp"
#include "oracles.hpp"

using namespace qlectra;

namespace {
// index of |n photons, atom m> on a [n_max+1, 2] register
long long nm(int n, int m) { return 2 * n + m; }
} // namespace

TEST_CASE("jaynes-cummings Hamiltonian") {
  SECTION("one-excitation block is [[w, g],[g, w]]") {
    CavityModel model(1.0, {1e-3}, 3, true);
    Hamiltonian h = jc_hamiltonian(model);
    CHECK(std::abs(h.mat(nm(1, 0), nm(1, 0)) - cxd(1.0, 0)) < 1e-12);
    CHECK(std::abs(h.mat(nm(0, 1), nm(0, 1)) - cxd(1.0, 0)) < 1e-12);
    CHECK(std::abs(h.mat(nm(1, 0), nm(0, 1)) - cxd(1e-3, 0)) < 1e-15);
    // two-excitation coupling picks up the sqrt(2)
    CHECK(std::abs(h.mat(nm(2, 0), nm(1, 1)) - cxd(1e-3 * std::sqrt(2.0), 0)) < 1e-15);
  }
  SECTION("g = 0 gives the free diagonal Hamiltonian") {
    CavityModel model(1.0, {0.0}, 2, true);
    Hamiltonian h = jc_hamiltonian(model);
    CHECK((h.mat - Mat(h.mat.diagonal().asDiagonal())).norm() < 1e-12);
  }
  SECTION("RWA form commutes with the excitation number") {
    CavityModel model(1.0, {1e-3, 5e-4}, 3, true);
    Hamiltonian h = jc_hamiltonian(model);
    Mat nhat = excitation_number(model.dims());
    CHECK((h.mat * nhat - nhat * h.mat).norm() < 1e-10);
  }
  SECTION("full coupling does not") {
    CavityModel model(1.0, {1e-3}, 3, false);
    Hamiltonian h = jc_hamiltonian(model);
    Mat nhat = excitation_number(model.dims());
    CHECK((h.mat * nhat - nhat * h.mat).norm() > 1e-6);
  }
  SECTION("RWA bound enforced; marginal band flagged") {
    CHECK_THROWS_AS(CavityModel(1.0, {0.5}, 2, true), error);
    CHECK(CavityModel(1.0, {5e-3}, 2, true).rwa_marginal());
    CHECK_FALSE(CavityModel(1.0, {5e-4}, 2, true).rwa_marginal());
  }
  SECTION("full vs RWA trajectories agree to O(g/w) over one Rabi period") {
    const double g = 1e-3, w = 1.0;
    CavityModel rwa(w, {g}, 5, true), full(w, {g}, 5, false);
    Ket psi0 = Ket::basis(rwa.dims(), nm(1, 0));
    double tau = kPi / g;
    Trajectory tr_rwa = rabi_trajectory(jc_hamiltonian(rwa), psi0, tau, tau / 400);
    Trajectory tr_full = rabi_trajectory(jc_hamiltonian(full), psi0, tau, tau / 400);
    double worst = 0;
    for (size_t i = 0; i < tr_rwa.states.size(); ++i) {
      RVec pa = tr_rwa.states[i].amps.cwiseAbs2();
      RVec pb = tr_full.states[i].amps.cwiseAbs2();
      worst = std::max(worst, (pa - pb).cwiseAbs().maxCoeff());
    }
    CHECK(worst <= 10 * g / w);
  }
}

TEST_CASE("tavis-cummings-hubbard network") {
  SECTION("single cavity reduces to the plain model") {
    CavityModel c(1.0, {1e-3}, 2, true);
    CavityNetwork net({c}, {});
    CHECK((tch_hamiltonian(net).mat - jc_hamiltonian(c).mat).norm() < 1e-12);
  }
  SECTION("photon hops between empty cavities with period pi/mu") {
    double mu = 0.05;
    CavityModel empty(1.0, {}, 2, true);
    CavityNetwork net({empty, empty}, {{0, 1, mu}});
    Hamiltonian h = tch_hamiltonian(net);
    // |1 photon, 0> on dims [3, 3]
    Ket psi0 = Ket::basis({3, 3}, 3);
    Trajectory traj = rabi_trajectory(h, psi0, kPi / mu, kPi / mu / 200);
    for (size_t i = 0; i < traj.times.size(); ++i) {
      double expect = std::pow(std::cos(mu * traj.times[i]), 2);
      double have = std::norm(traj.states[i].amps(3));
      CHECK(have == Catch::Approx(expect).margin(1e-9));
    }
  }
  SECTION("excitation expectation is conserved along trajectories") {
    CavityModel c(1.0, {1e-3}, 2, true);
    CavityNetwork net({c, c}, {{0, 1, 2e-3}});
    Hamiltonian h = tch_hamiltonian(net);
    Mat nhat = excitation_number(net.dims());
    rng::Stream rs(111);
    Ket psi0 = oracles::random_ket(net.dims(), rs);
    Trajectory traj = rabi_trajectory(h, psi0, 2000.0, 100.0);
    double first = (psi0.amps.adjoint() * nhat * psi0.amps)(0).real();
    for (const Ket& s : traj.states) {
      double val = (s.amps.adjoint() * nhat * s.amps)(0).real();
      CHECK(val == Catch::Approx(first).margin(1e-9));
    }
  }
  SECTION("oversized networks rejected") {
    CavityModel big(1.0, {1e-3, 1e-3, 1e-3}, 15, true);
    CHECK_THROWS_AS(tch_hamiltonian(CavityNetwork({big, big}, {})), error);
  }
}

TEST_CASE("rabi oscillations") {
  const double g = 1e-3, w = 1.0;
  CavityModel model(w, {g}, 3, true);
  Hamiltonian h = jc_hamiltonian(model);
  const double tau1 = kPi / g;

  SECTION("half period swaps |1,0> into -i|0,1> modulo the free phase") {
    Trajectory traj = rabi_trajectory(h, Ket::basis(model.dims(), nm(1, 0)), tau1 / 2, tau1 / 2);
    cxd amp = traj.final_state().amps(nm(0, 1));
    cxd frame = std::polar(1.0, w * tau1 / 2); // undo exp(-i w t) of the block
    CHECK(std::abs(amp * frame - cxd(0, -1)) < 1e-6);
  }
  SECTION("|2,0> returns with a minus sign after tau2") {
    double tau2 = kPi / (g * std::sqrt(2.0));
    Trajectory traj = rabi_trajectory(h, Ket::basis(model.dims(), nm(2, 0)), tau2, tau2);
    cxd amp = traj.final_state().amps(nm(2, 0));
    cxd frame = std::polar(1.0, 2 * w * tau2);
    CHECK(std::abs(amp * frame - cxd(-1, 0)) < 1e-6);
  }
  SECTION("g = 0 freezes the populations") {
    CavityModel frozen(w, {0.0}, 3, true);
    Trajectory traj =
        rabi_trajectory(jc_hamiltonian(frozen), Ket::basis(model.dims(), nm(1, 0)), 10.0, 1.0);
    for (const Ket& s : traj.states)
      CHECK(std::norm(s.amps(nm(1, 0))) == Catch::Approx(1.0).margin(1e-12));
  }
  SECTION("block dynamics match the 2x2 closed form for n = 1..3") {
    CavityModel deep(w, {g}, 4, true);
    Hamiltonian hd = jc_hamiltonian(deep);
    for (int n = 1; n <= 3; ++n) {
      Ket psi0 = Ket::basis(deep.dims(), nm(n, 0));
      Trajectory traj = rabi_trajectory(hd, psi0, tau1, tau1 / 100);
      for (size_t i = 0; i < traj.times.size(); ++i) {
        double gn = g * std::sqrt(static_cast<double>(n));
        double p_up = std::pow(std::cos(gn * traj.times[i]), 2);
        CHECK(std::norm(traj.states[i].amps(nm(n, 0))) == Catch::Approx(p_up).margin(1e-8));
        CHECK(std::norm(traj.states[i].amps(nm(n - 1, 1))) ==
              Catch::Approx(1 - p_up).margin(1e-8));
      }
    }
  }
}

TEST_CASE("lindblad integration") {
  SECTION("amplitude damping decays as exp(-gamma t)") {
    double gamma = 1.0;
    Mat h = Mat::Zero(2, 2);
    LindbladModel model(h, {{atom_lowering(), gamma}});
    Mat rho0 = Mat::Zero(2, 2);
    rho0(1, 1) = 1;
    double dt = 1e-3 / gamma;
    LindbladTrajectory traj = lindblad_evolve(model, DensityOp({2}, rho0), 5.0, dt, 100);
    for (size_t i = 0; i < traj.times.size(); ++i) {
      double expect = std::exp(-gamma * traj.times[i]);
      CHECK(traj.states[i].mat(1, 1).real() == Catch::Approx(expect).margin(1e-3));
      CHECK(traj.states[i].trace_real() == Catch::Approx(1.0).margin(1e-6));
      CHECK(traj.states[i].mat(0, 0).real() >= -1e-6);
      CHECK(traj.states[i].mat(1, 1).real() <= 1.0 + 1e-6);
    }
  }
  SECTION("gamma = 0 reduces to unitary density dynamics") {
    Mat h(2, 2);
    h << 0.3, cxd(0.1, -0.05), cxd(0.1, 0.05), -0.2;
    LindbladModel model(h, {{atom_lowering(), 0.0}});
    rng::Stream rs(121);
    Ket psi = oracles::random_ket({2}, rs);
    DensityOp rho0 = density_of(psi);
    double total = 2.0, dt = 1e-4;
    LindbladTrajectory traj = lindblad_evolve(model, rho0, total, dt, 1 << 30);
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Vec ph(2);
    for (int i = 0; i < 2; ++i) ph(i) = std::polar(1.0, -es.eigenvalues()(i) * total);
    Mat u = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    Mat expect = u * rho0.mat * u.adjoint();
    CHECK((traj.final_state().mat - expect).norm() < 5 * dt);
  }
  SECTION("halving dt halves the deviation from the analytic decay") {
    double gamma = 1.0;
    LindbladModel model(Mat(Mat::Zero(2, 2)), {{atom_lowering(), gamma}});
    Mat rho0 = Mat::Zero(2, 2);
    rho0(1, 1) = 1;
    std::vector<double> dts = {4e-3, 2e-3, 1e-3, 5e-4};
    std::vector<double> errs;
    for (double dt : dts) {
      LindbladTrajectory traj = lindblad_evolve(model, DensityOp({2}, rho0), 2.0, dt, 1 << 30);
      errs.push_back(std::abs(traj.final_state().mat(1, 1).real() - std::exp(-2.0)));
    }
    double slope = std::log(errs.front() / errs.back()) / std::log(dts.front() / dts.back());
    CHECK(slope == Catch::Approx(1.0).margin(0.1));
  }
  SECTION("coarse steps rejected, marginal steps flagged") {
    LindbladModel model(Mat(Mat::Zero(2, 2)), {{atom_lowering(), 1.0}});
    Mat rho0 = Mat::Identity(2, 2) / 2;
    CHECK_THROWS_AS(lindblad_evolve(model, DensityOp({2}, rho0), 10.0, 1.0), error);
    CHECK(lindblad_evolve(model, DensityOp({2}, rho0), 1.0, 0.2).coarse_step_warning);
    CHECK_FALSE(lindblad_evolve(model, DensityOp({2}, rho0), 1.0, 0.01).coarse_step_warning);
  }
}

TEST_CASE("cocsign timing search") {
  SECTION("(4, 6) wins at n_cap = 10") {
    CoCSignTiming t = cocsign_timings(0.1, 10);
    CHECK(t.n1 == 4);
    CHECK(t.n2 == 6);
    CHECK(t.error == Catch::Approx(0.0147186).margin(1e-6));
  }
  SECTION("loose tolerance accepts the smallest pair") {
    CoCSignTiming t = cocsign_timings(1.2, 1);
    CHECK(t.n1 == 1);
    CHECK(t.n2 == 1);
  }
  SECTION("best error never worsens as the cap grows, and eventually improves") {
    double e10 = cocsign_timings(1.0, 10).error;
    double e50 = cocsign_timings(1.0, 50).error;
    double e200 = cocsign_timings(1.0, 200).error;
    CHECK(e50 <= e10);
    CHECK(e200 < e10);
    CHECK(e200 < 0.01);
  }
  SECTION("unreachable tolerance reported") {
    CHECK_THROWS_AS(cocsign_timings(1e-9, 3), error);
  }
}

TEST_CASE("cocsign gate simulation") {
  CoCSignResult r = cocsign_simulate(4, 6, 1.0, 1000.0, 2);
  double tol = kPi * (r.commensuration_error + 10.0 / 1000.0);

  SECTION("calibrated phase table is (0, 0, pi, 0)") {
    CHECK(r.calibrated_phase[0] == 0.0);
    CHECK(r.calibrated_phase[1] == 0.0);
    CHECK(r.calibrated_phase[3] == 0.0);
    CHECK(std::abs(std::abs(r.calibrated_phase[2]) - kPi) <= tol);
  }
  SECTION("the 00 and 11 branches pick up equal raw phases") {
    double diff = std::abs(r.raw_phase[0] - r.raw_phase[3]);
    diff = std::min(diff, 2 * kPi - diff);
    CHECK(diff <= tol);
  }
  SECTION("every branch ends in a clean configuration") {
    CHECK(r.max_leakage < 0.02);
    // at this cutoff the top level is the working two-photon level, so the
    // guard check lives in the acceptance run at n_max = 3
    // all four final configurations distinct (the gate is diagonal in the
    // time-evolved logical encoding)
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        CHECK(r.final_index[a] != r.final_index[b]);
  }
  SECTION("ratio guard") {
    CHECK_THROWS_AS(cocsign_simulate(4, 6, 1.0, 50.0), error);
  }
}

TEST_CASE("randomized decoupling") {
  SECTION("zero coupling accrues zero phase") {
    rng::Stream rs(131);
    DecouplingResult r = randomized_decoupling(Mat(Mat::Zero(3, 3)), 0, 1, 100, 1.0, 1e-3, rs);
    for (double p : r.two_qubit_phase) CHECK(p == 0.0);
    CHECK(r.residual_error == 0.0);
  }
  SECTION("3 qubits, uniform coupling: mean residual below 0.05 rad") {
    Mat d = Mat::Zero(3, 3);
    for (int p = 0; p < 3; ++p)
      for (int q = p + 1; q < 3; ++q) d(p, q) = 1.0;
    double mean = 0;
    const int seeds = 50;
    for (int s = 0; s < seeds; ++s) {
      rng::Stream rs(500 + s);
      mean += randomized_decoupling(d, 0, 1, 1000, 1.0, 5e-4, rs).residual_error / seeds;
    }
    CHECK(mean < 0.05);
  }
  SECTION("non-separated pair duty settles at a quarter of the horizon") {
    Mat d = Mat::Zero(4, 4);
    d(2, 3) = 1.0;
    double mean = 0;
    const int seeds = 40;
    for (int s = 0; s < seeds; ++s) {
      rng::Stream rs(300 + s);
      DecouplingResult r = randomized_decoupling(d, 0, 1, 2000, 1.0, 2.5e-4, rs);
      mean += (r.two_qubit_phase[0] + 0.25) / seeds; // phase = duty - T/4 here
    }
    CHECK(mean == Catch::Approx(0.25).margin(0.02));
  }
  SECTION("residual error scales like 1/sqrt(M) at fixed flip probability") {
    Mat d = Mat::Zero(3, 3);
    for (int p = 0; p < 3; ++p)
      for (int q = p + 1; q < 3; ++q) d(p, q) = 1.0;
    std::vector<long long> ms = {250, 1000, 4000, 16000};
    std::vector<double> errs;
    for (long long m : ms) {
      double dt = 1.0 / static_cast<double>(m);
      double mean = 0;
      const int seeds = 40;
      for (int s = 0; s < seeds; ++s) {
        rng::Stream rs(900 + s);
        mean += randomized_decoupling(d, 0, 1, 0.25 / dt, 1.0, dt, rs).residual_error / seeds;
      }
      errs.push_back(mean);
      CHECK(mean <= 2.0 / std::sqrt(static_cast<double>(m)));
    }
    double slope = std::log(errs.back() / errs.front()) /
                   std::log(static_cast<double>(ms.back()) / static_cast<double>(ms.front()));
    CHECK(slope == Catch::Approx(-0.5).margin(0.1));
  }
  SECTION("excessive flip density rejected") {
    rng::Stream rs(132);
    CHECK_THROWS_AS(randomized_decoupling(Mat(Mat::Zero(3, 3)), 0, 1, 1000, 1.0, 1e-3, rs),
                    error);
  }
}

TEST_CASE("periodic decoupling") {
  SECTION("binary periods cancel exactly on aligned horizons") {
    Mat d = Mat::Zero(4, 4);
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) d(p, q) = 0.7;
    DecouplingResult r = periodic_decoupling(d, 0, 1, 1.0, 1.0 / 4096);
    CHECK(r.residual_error < 1e-9);
    CHECK(r.slowdown_factor == 4.0); // two flipped qubits, periods 1 and 2
    for (long long b = 0; b < 16; ++b) {
      int bj = static_cast<int>((b >> 3) & 1), bk = static_cast<int>((b >> 2) & 1);
      CHECK(r.two_qubit_phase[b] == Catch::Approx(0.7 * bj * bk).margin(1e-9));
    }
  }
  SECTION("misaligned horizons leave only a boundary-sized residual") {
    Mat d = Mat::Zero(3, 3);
    d(0, 2) = d(1, 2) = d(0, 1) = 1.0;
    DecouplingResult r = periodic_decoupling(d, 0, 1, 1.0, 1.0 / 4001);
    CHECK(r.residual_error < 5e-3);
  }
}

TEST_CASE("cnot from a diagonal interaction") {
  SECTION("(0,0,0,1): n = 22, m = 3") {
    DiagonalCnotResult r = cnot_from_diagonal({0, 0, 0, 1}, 0.05, 100);
    CHECK(r.n == 22);
    CHECK(r.m == 3);
    CHECK(r.phase_error == Catch::Approx(0.0088514).margin(1e-6));
    CHECK(r.operator_error <= 2 * r.phase_error);
  }
  SECTION("dE = pi yields an exact CNOT at n = 1") {
    DiagonalCnotResult r = cnot_from_diagonal({0, 0, 0, kPi}, 1e-9, 5);
    CHECK(r.n == 1);
    CHECK(r.operator_error < 1e-12);
  }
  SECTION("assembled gate flips |10> to |11> within the bound") {
    DiagonalCnotResult r = cnot_from_diagonal({0, 0, 0, 1}, 0.05, 100);
    Vec in = Vec::Zero(4);
    in(2) = 1;
    Vec out = r.assembled * in;
    Vec expect = Vec::Zero(4);
    expect(3) = 1;
    CHECK((out - expect).norm() <= 2 * r.phase_error);
  }
  SECTION("degenerate dE rejected; unreachable accuracy reported") {
    CHECK_THROWS_AS(cnot_from_diagonal({1, 1, 1, 1}, 0.1, 10), error);
    CHECK_THROWS_AS(cnot_from_diagonal({0, 0, 0, 1}, 1e-9, 3), error);
  }
}
