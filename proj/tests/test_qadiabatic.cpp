#include <catch2/catch_amalgamated.hpp>

#include "qlectra/qadiabatic.hpp"
#include "oracles.hpp"

using namespace qlectra;

TEST_CASE("time-dependent evolution") {
  SECTION("constant H = -sigma_x rotates |0> as cos t |0> + i sin t |1>") {
    Hamiltonian h0(Mat(-gate_x().mat));
    TDHamiltonian td{h0, h0, Schedule::linear(1.3)};
    Trajectory traj = evolve_td(td, Ket::basis({2}, 0), 0.01, 10);
    for (size_t k = 0; k < traj.times.size(); ++k) {
      double t = traj.times[k];
      CHECK(std::abs(traj.states[k].amps(0) - cxd(std::cos(t), 0)) < 1e-9);
      CHECK(std::abs(traj.states[k].amps(1) - cxd(0, std::sin(t))) < 1e-9);
    }
  }
  SECTION("H = 0 leaves the state alone") {
    Hamiltonian zero(Mat(Mat::Zero(4, 4)));
    TDHamiltonian td{zero, zero, Schedule::linear(2.0)};
    rng::Stream rs(91);
    Ket psi = oracles::random_ket({2, 2}, rs);
    Trajectory traj = evolve_td(td, psi, 0.1);
    CHECK((traj.final_state().amps - psi.amps).norm() < 1e-12);
  }
  SECTION("commuting H0, H1: accumulated phase matches the closed-form integral") {
    // diagonal A, B commute at all times; the phase on |j> is
    // exp(-i [ (1-sbar) A_jj + sbar B_jj ] T) with sbar the schedule average
    Mat a = Mat::Zero(2, 2), b = Mat::Zero(2, 2);
    a(0, 0) = 0.7; a(1, 1) = -0.2;
    b(0, 0) = -0.4; b(1, 1) = 1.1;
    double total = 2.0;
    TDHamiltonian td{Hamiltonian(a), Hamiltonian(b), Schedule::linear(total)};
    Vec v(2);
    v << std::sqrt(0.5), std::sqrt(0.5);
    Trajectory traj = evolve_td(td, Ket({2}, v), 1e-4, 1 << 30);
    double sbar = 0.5;
    for (int j = 0; j < 2; ++j) {
      double phase = -((1 - sbar) * a(j, j).real() + sbar * b(j, j).real()) * total;
      cxd expect = std::polar(std::sqrt(0.5), phase);
      CHECK(std::abs(traj.final_state().amps(j) - expect) < 1e-6);
    }
  }
  SECTION("norm drift stays tiny over the full horizon") {
    TDHamiltonian td{grover_h0(3), grover_h1(3, 5), Schedule::linear(30)};
    Trajectory traj = evolve_td(td, Ket::uniform({2, 2, 2}), 30.0 / 2000);
    for (const Ket& k : traj.states)
      CHECK(std::abs(k.norm() - 1.0) < 1e-9);
  }
}

TEST_CASE("search-instance gap") {
  CHECK(grover_gap(0, 64) == Catch::Approx(1.0).margin(1e-15));
  CHECK(grover_gap(1, 64) == Catch::Approx(1.0).margin(1e-15));
  CHECK(grover_gap(0.5, 64) == Catch::Approx(0.125).margin(1e-15));

  SECTION("formula matches the eigensolver on a 100-point grid, N = 64") {
    Hamiltonian h0 = grover_h0(6), h1 = grover_h1(6, 17);
    for (int k = 0; k <= 100; ++k) {
      double s = k / 100.0;
      Mat h = (1 - s) * h0.mat + s * h1.mat;
      Eigen::SelfAdjointEigenSolver<Mat> es(h);
      double g = es.eigenvalues()(1) - es.eigenvalues()(0);
      CHECK(g == Catch::Approx(grover_gap(s, 64)).margin(1e-8));
    }
  }
}

TEST_CASE("roland-cerf schedule") {
  SECTION("total time at N = 4, eps = 1 is 4 pi / (3 sqrt 3)") {
    Schedule s = roland_cerf_schedule(4, 1.0);
    CHECK(s.total_time() == Catch::Approx(4 * kPi / (3 * std::sqrt(3.0))).margin(1e-9));
  }
  SECTION("midpoint symmetry: t(1/2) = T/2") {
    Schedule s = roland_cerf_schedule(16, 0.3);
    CHECK(s.rc_time_of(0.5) == Catch::Approx(s.total_time() / 2).margin(1e-12));
    CHECK(s.s_at(s.total_time() / 2) == Catch::Approx(0.5).margin(1e-9));
  }
  SECTION("bisection inverts t(s) to high accuracy") {
    Schedule s = roland_cerf_schedule(64, 0.2);
    for (double frac : {0.1, 0.25, 0.5, 0.9}) {
      double sv = s.s_at(frac * s.total_time());
      CHECK(s.rc_time_of(sv) == Catch::Approx(frac * s.total_time()).margin(1e-8));
    }
  }
  SECTION("large N limit: T eps / (pi sqrt N / 2) -> 1") {
    Schedule s = roland_cerf_schedule(1024, 0.1);
    double ratio = s.total_time() * 0.1 / (kPi * std::sqrt(1024.0) / 2);
    CHECK(std::abs(ratio - 1.0) < 0.05);
  }
}

TEST_CASE("adiabatic search") {
  SECTION("N = 2: both schedules succeed at eps = 0.1") {
    Schedule rc = roland_cerf_schedule(2, 0.1);
    CHECK(adiabatic_grover(1, 1, rc) > 0.9);
    CHECK(adiabatic_grover(1, 1, Schedule::linear(rc.total_time())) > 0.9);
  }
  SECTION("N = 16, equal T: Roland-Cerf beats linear") {
    Schedule rc = roland_cerf_schedule(16, 0.2);
    double p_rc = adiabatic_grover(4, 11, rc);
    double p_lin = adiabatic_grover(4, 11, Schedule::linear(rc.total_time()));
    CHECK(p_rc >= p_lin);
    CHECK(p_rc >= 1 - 0.2 * 0.2 - 0.05);
  }
  SECTION("the initial state is the ground state of H(0)") {
    Eigen::SelfAdjointEigenSolver<Mat> es(grover_h0(4).mat);
    Vec ground = es.eigenvectors().col(0);
    Vec uniform = Ket::uniform({2, 2, 2, 2}).amps;
    CHECK(std::abs(std::abs(ground.dot(uniform)) - 1.0) < 1e-9);
  }
  SECTION("cutting T four-fold below pi sqrt(N)/(2 eps) hurts the success rate") {
    Schedule rc = roland_cerf_schedule(16, 0.2);
    double p_full = adiabatic_grover(4, 3, rc);
    double t_short = kPi * 4.0 / (2 * 0.2) / 4.0;
    double p_short = adiabatic_grover(4, 3, Schedule::linear(t_short));
    CHECK(p_short < p_full);
  }
}

TEST_CASE("continuous-time search") {
  SECTION("N = 4: peak near pi/gap with gap ~ 2 sin(alpha/2)") {
    ContinuousGroverResult r = continuous_grover(2, 1);
    double alpha = 0.5;
    double gap_formula = 2 * std::sin(alpha / 2);
    CHECK(r.peak_value >= 0.99);
    CHECK(std::abs(r.peak_time - kPi / gap_formula) / (kPi / gap_formula) < 0.05);
  }
  SECTION("dynamics confined to span{|~0>, |w>}") {
    const long long nn = 4, w = 2;
    Mat h = Mat::Constant(nn, nn, cxd(0.5 / nn, 0));
    h(w, w) += 0.5;
    Vec uni = Vec::Constant(nn, cxd(0.5, 0));
    Vec sol = Vec::Zero(nn);
    sol(w) = 1;
    Vec e1 = uni;
    Vec e2 = sol - e1.dot(sol) * e1;
    e2 /= e2.norm();
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    for (double t : {0.7, 2.9, 5.3}) {
      Vec phases(nn);
      for (long long i = 0; i < nn; ++i)
        phases(i) = std::polar(1.0, -es.eigenvalues()(i) * t);
      Vec psi = es.eigenvectors() * (phases.asDiagonal() * (es.eigenvectors().adjoint() * uni));
      Vec resid = psi - e1.dot(psi) * e1 - e2.dot(psi) * e2;
      CHECK(resid.norm() < 1e-9);
    }
  }
  SECTION("peak time scales as sqrt(N): log-log slope 0.5") {
    double t4 = continuous_grover(2, 1).peak_time;
    double t16 = continuous_grover(4, 7).peak_time;
    double t64 = continuous_grover(6, 33).peak_time;
    double slope = std::log(t64 / t4) / std::log(64.0 / 4.0);
    CHECK(slope == Catch::Approx(0.5).margin(0.05));
    double slope2 = std::log(t16 / t4) / std::log(16.0 / 4.0);
    CHECK(slope2 == Catch::Approx(0.5).margin(0.05));
  }
}

TEST_CASE("driver Hamiltonian") {
  SECTION("n = 1 eigenvalues are {0, 1}") {
    Eigen::SelfAdjointEigenSolver<Mat> es(build_driver(1).mat);
    CHECK(es.eigenvalues()(0) == Catch::Approx(0.0).margin(1e-12));
    CHECK(es.eigenvalues()(1) == Catch::Approx(1.0).margin(1e-12));
  }
  SECTION("annihilates the uniform state") {
    for (int n : {1, 2, 4})
      CHECK((build_driver(n).mat * Ket::uniform(std::vector<int>(n, 2)).amps).norm() < 1e-9);
  }
  SECTION("spectrum 0..n with binomial multiplicities") {
    const int n = 4;
    Eigen::SelfAdjointEigenSolver<Mat> es(build_driver(n).mat);
    std::vector<int> mult(n + 1, 0);
    for (int i = 0; i < 16; ++i) {
      double ev = es.eigenvalues()(i);
      int k = static_cast<int>(std::lround(ev));
      CHECK(std::abs(ev - k) < 1e-9);
      mult[k]++;
    }
    std::vector<int> binom = {1, 4, 6, 4, 1};
    CHECK(mult == binom);
  }
}

TEST_CASE("problem Hamiltonians") {
  SECTION("two-bit disagree: diag(1,0,0,1)") {
    Hamiltonian h = build_problem(ProblemSpec::disagree2());
    Vec d = h.mat.diagonal();
    CHECK(d(0) == cxd(1, 0));
    CHECK(d(1) == cxd(0, 0));
    CHECK(d(2) == cxd(0, 0));
    CHECK(d(3) == cxd(1, 0));
    auto gs = ProblemSpec::disagree2().ground_states();
    CHECK(gs == std::vector<long long>{1, 2});
  }
  SECTION("single exact-cover clause selects weight-1 assignments") {
    ProblemSpec p = ProblemSpec::exact_cover(3, {{{1, 2, 3}}});
    auto gs = p.ground_states();
    CHECK(gs == std::vector<long long>{1, 2, 4});
    for (long long g : gs) CHECK(p.cost(g) == 0.0);
    CHECK(p.cost(0) == 1.0);
    CHECK(p.cost(7) == 4.0);
  }
  SECTION("sat3 ground states are exactly the satisfying assignments") {
    // (x1 | x2 | x3) & (!x1 | x2 | !x3)
    ProblemSpec p = ProblemSpec::sat3(3, {{{1, 2, 3}}, {{-1, 2, -3}}});
    for (long long idx = 0; idx < 8; ++idx) {
      bool x1 = (idx >> 2) & 1, x2 = (idx >> 1) & 1, x3 = idx & 1;
      int unsat = (!(x1 || x2 || x3) ? 1 : 0) + (!(!x1 || x2 || !x3) ? 1 : 0);
      CHECK(p.cost(idx) == static_cast<double>(unsat));
    }
    auto gs = p.ground_states();
    for (long long g : gs) CHECK(p.cost(g) == 0.0);
  }
  SECTION("ising with h = 0, J12 = 1: antiparallel ground pair at energy -1") {
    ProblemSpec p = ProblemSpec::ising({0, 0}, {{0, 1, 1.0}});
    auto gs = p.ground_states();
    CHECK(gs == std::vector<long long>{1, 2});
    CHECK(p.cost(1) == -1.0);
    CHECK(p.cost(0) == 1.0);
  }
  SECTION("random instances: brute-force minima coincide with the diagonal minimum") {
    rng::Stream rs(97);
    for (int rep = 0; rep < 5; ++rep) {
      int n = 5;
      std::vector<double> fields(n);
      for (auto& f : fields) f = 2 * rs.uniform() - 1;
      std::vector<std::tuple<int, int, double>> coup;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (rs.bernoulli(0.5)) coup.emplace_back(i, j, 2 * rs.uniform() - 1);
      ProblemSpec p = ProblemSpec::ising(fields, coup);
      Hamiltonian h = build_problem(p);
      double min_diag = 1e300;
      for (long long i = 0; i < h.dim; ++i)
        min_diag = std::min(min_diag, h.mat(i, i).real());
      for (long long g : p.ground_states())
        CHECK(h.mat(g, g).real() == Catch::Approx(min_diag).margin(1e-12));
    }
  }
  SECTION("literal out of range rejected") {
    CHECK_THROWS_AS(ProblemSpec::sat3(2, {{{1, 2, 3}}}), error);
  }
}

TEST_CASE("annealing") {
  SECTION("G == 0: populations frozen under the diagonal target") {
    Hamiltonian h_tar = build_problem(ProblemSpec::disagree2());
    Hamiltonian h_d = build_driver(2);
    rng::Stream rs(98);
    Ket psi0 = oracles::random_ket({2, 2}, rs);
    Trajectory traj = anneal(h_tar, h_d, {{0.0, 0.0}, {10.0, 0.0}}, psi0, 0.01);
    RVec before = psi0.amps.cwiseAbs2();
    RVec after = traj.final_state().amps.cwiseAbs2();
    CHECK((before - after).norm() < 1e-9);
  }
  SECTION("disagree-2 instance reaches the ground subspace") {
    ProblemSpec spec = ProblemSpec::disagree2();
    Hamiltonian h_tar = build_problem(spec);
    Hamiltonian h_d = build_driver(2);
    double total = 200;
    std::vector<std::pair<double, double>> g_table;
    for (int k = 0; k <= 100; ++k) {
      double t = total * k / 100.0;
      g_table.emplace_back(t, 10.0 * (1.0 - t / total));
    }
    Trajectory traj = anneal(h_tar, h_d, g_table, Ket::uniform({2, 2}), total / 4000);
    CHECK(ground_subspace_population(spec, traj.final_state()) >= 0.9);
  }
  SECTION("slower annealing never hurts on this instance") {
    ProblemSpec spec = ProblemSpec::disagree2();
    Hamiltonian h_tar = build_problem(spec);
    Hamiltonian h_d = build_driver(2);
    double prev = -1;
    for (double total : {50.0, 100.0, 200.0}) {
      std::vector<std::pair<double, double>> g_table;
      for (int k = 0; k <= 100; ++k) {
        double t = total * k / 100.0;
        g_table.emplace_back(t, 10.0 * (1.0 - t / total));
      }
      Trajectory traj = anneal(h_tar, h_d, g_table, Ket::uniform({2, 2}), total / 4000);
      double pop = ground_subspace_population(spec, traj.final_state());
      CHECK(pop >= prev - 1e-6);
      prev = pop;
    }
  }
  SECTION("increasing G rejected") {
    Hamiltonian h_tar = build_problem(ProblemSpec::disagree2());
    CHECK_THROWS_AS(
        anneal(h_tar, build_driver(2), {{0.0, 1.0}, {1.0, 2.0}}, Ket::uniform({2, 2}), 0.1),
        error);
  }
}

TEST_CASE("adiabaticity margin") {
  std::vector<double> sample_times;
  SECTION("constant Hamiltonian has margin zero") {
    Hamiltonian h = grover_h0(2);
    TDHamiltonian td{h, h, Schedule::linear(5.0)};
    for (int k = 1; k < 20; ++k) sample_times.push_back(5.0 * k / 20);
    CHECK(adiabaticity_margin(td, sample_times) < 1e-9);
  }
  SECTION("linear schedule on N = 16 search: margin ~ N / T") {
    double total = 50;
    TDHamiltonian td{grover_h0(4), grover_h1(4, 9), Schedule::linear(total)};
    for (int k = 0; k <= 400; ++k) sample_times.push_back(total * k / 400);
    double margin = adiabaticity_margin(td, sample_times);
    // at s = 1/2 the matrix element is ~1 and g^2 = 1/N
    CHECK(margin == Catch::Approx(16.0 / total).epsilon(0.15));
  }
  SECTION("Roland-Cerf margin stays below eps everywhere") {
    double eps = 0.2;
    Schedule rc = roland_cerf_schedule(16, eps);
    TDHamiltonian td{grover_h0(4), grover_h1(4, 9), rc};
    for (int k = 1; k < 300; ++k) sample_times.push_back(rc.total_time() * k / 300);
    CHECK(adiabaticity_margin(td, sample_times) <= eps * 1.05);
  }
  SECTION("degenerate gap detected") {
    Mat flat = Mat::Zero(4, 4);
    TDHamiltonian td{Hamiltonian(flat), Hamiltonian(flat), Schedule::linear(1.0)};
    CHECK_THROWS_AS(adiabaticity_margin(td, {0.5}), error);
  }
}
