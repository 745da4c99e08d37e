// Named experiments with parameter schemas, deterministic seeding and
// structured result emission. The CLI is a thin shell over this registry.
#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "qlectra/io.hpp"
#include "qlectra/qadiabatic.hpp"
#include "qlectra/qalgo.hpp"
#include "qlectra/qgate.hpp"
#include "qlectra/qopen.hpp"
#include "qlectra/qproto.hpp"
#include "qlectra/qstate.hpp"
#include "qlectra/rng.hpp"

namespace qlectra::cli {

struct ParamSpec {
  enum class Type { integer, real, boolean, text };

  ParamSpec(std::string k, Type t, std::string dflt, bool req = false)
      : key(std::move(k)), type(t), default_value(std::move(dflt)), required(req) {}

  std::string key;
  Type type;
  std::string default_value; // ignored when required
  bool required;
};

struct Params {
  std::map<std::string, std::string> values;

  long long get_int(const std::string& k) const { return std::stoll(values.at(k)); }
  double get_real(const std::string& k) const { return std::stod(values.at(k)); }
  bool get_bool(const std::string& k) const {
    const std::string& v = values.at(k);
    return v == "1" || v == "true" || v == "yes";
  }
  const std::string& get_text(const std::string& k) const { return values.at(k); }
};

struct Series {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Report {
  std::string name;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> params; // resolved values
  std::vector<std::pair<std::string, double>> metrics;
  Series series;
  double wall_time_s = 0;

  void metric(const std::string& k, double v) { metrics.emplace_back(k, v); }
};

struct ExperimentConfig {
  std::string name;
  Params params;
  std::uint64_t seed = 0;
  std::string out_path;     // empty: stdout
  std::string format = "json"; // json | csv | jsonl
};

struct ExperimentDef {
  std::string name;
  std::string description;
  std::vector<ParamSpec> schema;
  std::function<void(const Params&, rng::Stream&, Report&)> body;
};

// --- worker pool ------------------------------------------------------------------

inline int worker_count() {
  if (const char* env = std::getenv("QLECTRA_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, n) on up to worker_count() threads. Results must be
// written into per-index slots by the caller; the reduction order is then
// fixed by index, keeping aggregates identical for any worker count.
template <typename Fn>
inline void parallel_for(long long n, Fn&& fn) {
  int workers = std::min<long long>(worker_count(), n);
  if (workers <= 1) {
    for (long long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (long long i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// --- the registry ----------------------------------------------------------------

namespace detail {

inline void run_grover_exp(const Params& p, rng::Stream& rs, Report& rep) {
  int n = static_cast<int>(p.get_int("n"));
  long long l = p.get_int("l");
  long long target = p.get_int("target");
  if (target < 0) target = (1LL << n) - 1;
  long long t = target;
  BooleanOracle f(n, [t, l](long long x) { return x >= t && x < t + l; });
  GroverReport g = grover(f, n, l, &rs);
  rep.metric("iterations", g.iterations);
  rep.metric("success_prob", g.success_prob);
  rep.metric("oracle_calls", static_cast<double>(g.oracle_calls));
  rep.metric("measured", static_cast<double>(g.measured));
}

inline void run_grover_adiabatic(const Params& p, rng::Stream&, Report& rep) {
  int n = static_cast<int>(p.get_int("n"));
  long long marked = p.get_int("marked");
  double eps = p.get_real("eps");
  Schedule rc = roland_cerf_schedule(static_cast<double>(1LL << n), eps);
  bool linear = p.get_text("schedule") == "linear";
  Schedule sched = linear ? Schedule::linear(rc.total_time()) : rc;
  double prob = adiabatic_grover(n, marked, sched);
  rep.metric("success_prob", prob);
  rep.metric("total_time", sched.total_time());
  rep.metric("adiabatic_bound", 1 - eps * eps);
}

inline void run_grover_continuous(const Params& p, rng::Stream&, Report& rep) {
  int n = static_cast<int>(p.get_int("n"));
  ContinuousGroverResult r = continuous_grover(n, p.get_int("marked"));
  rep.metric("peak_time", r.peak_time);
  rep.metric("peak_value", r.peak_value);
  rep.metric("gap", r.gap);
  rep.metric("expected_peak_time", kPi / r.gap);
}

inline void run_qft_exp(const Params& p, rng::Stream&, Report& rep) {
  int n = static_cast<int>(p.get_int("n"));
  Mat full = unitary_of(qft(n)).mat;
  rep.metric("full_matches_dft", (full - dft_matrix(n)).norm());
  rep.series.columns = {"cutoff", "gate_count", "error_vs_full"};
  for (int d = 1; d <= n; ++d) {
    Circuit c = qft(n, d);
    double err = (unitary_of(c).mat - full).norm();
    rep.series.rows.push_back({static_cast<double>(d),
                               static_cast<double>(c.size() - 1), err});
  }
}

inline void run_phase_estimate(const Params& p, rng::Stream& rs, Report& rep) {
  int bits = static_cast<int>(p.get_int("bits"));
  long long numer = p.get_int("numer");
  long long denom = 1LL << bits;
  require(numer >= 0 && numer < denom, errc::schema_violation, "numer out of range");
  Mat u = Mat::Identity(2, 2);
  u(1, 1) = std::polar(1.0, 2 * kPi * static_cast<double>(numer) / static_cast<double>(denom));
  long long trials = p.get_int("trials");
  long long hits = 0, last = -1;
  for (long long i = 0; i < trials; ++i) {
    last = phase_estimate(unitary_gate(u), Ket::basis({2}, 1), bits, rs);
    if (last == numer) ++hits;
  }
  rep.metric("measured", static_cast<double>(last));
  rep.metric("hit_rate", static_cast<double>(hits) / static_cast<double>(trials));
}

inline void run_shor(const Params& p, rng::Stream& rs, Report& rep) {
  long long q = p.get_int("q");
  auto [a, b] = shor_factor(q, rs, static_cast<int>(p.get_int("attempts")));
  rep.metric("factor_small", static_cast<double>(std::min(a, b)));
  rep.metric("factor_large", static_cast<double>(std::max(a, b)));
  rep.metric("product", static_cast<double>(a * b));
}

inline void run_zalka(const Params& p, rng::Stream&, Report& rep) {
  int n = static_cast<int>(p.get_int("n"));
  double t = p.get_real("t");
  long long steps = p.get_int("steps");
  long long nn = 1LL << n;
  double root_n = std::sqrt(static_cast<double>(nn));
  double center = root_n / 2;
  double omega = p.get_real("omega");
  PotentialGrid grid =
      p.get_text("potential_file").empty()
          ? PotentialGrid::from_function(
                n,
                [center, omega](double x) {
                  return 0.5 * omega * omega * (x - center) * (x - center);
                },
                p.get_real("mass"))
          : io::potential_from_csv_file(p.get_text("potential_file"), n, p.get_real("mass"));
  Vec a(nn);
  for (long long k = 0; k < nn; ++k) {
    double x = static_cast<double>(k) / root_n;
    a(k) = std::exp(-0.5 * (x - center) * (x - center));
  }
  a /= a.norm();
  Ket psi0(std::vector<int>(n, 2), a);
  Ket prop = zalka_wiesner(grid, psi0, t, t / static_cast<double>(steps));
  Vec exact = exact_propagator(grid, t) * psi0.amps;
  rep.metric("fidelity", std::abs(exact.dot(prop.amps)));
  rep.metric("norm_drift", std::abs(prop.norm() - 1.0));
  rep.series.columns = {"steps", "error_vs_exact"};
  for (long long s : {steps / 8, steps / 4, steps / 2, steps}) {
    if (s < 1) continue;
    Ket run = zalka_wiesner(grid, psi0, t, t / static_cast<double>(s));
    rep.series.rows.push_back({static_cast<double>(s), (run.amps - exact).norm()});
  }
}

inline void run_anneal(const Params& p, rng::Stream&, Report& rep) {
  ProblemSpec spec = p.get_text("problem_file").empty()
                         ? ProblemSpec::disagree2()
                         : io::problem_from_file(p.get_text("problem_file"));
  Hamiltonian h_tar = build_problem(spec);
  Hamiltonian h_d = build_driver(spec.n);
  double total = p.get_real("t");
  double g0 = p.get_real("g0");
  std::vector<std::pair<double, double>> g_table;
  for (int k = 0; k <= 100; ++k) {
    double t = total * k / 100.0;
    g_table.emplace_back(t, g0 * (1.0 - t / total));
  }
  long long steps = p.get_int("steps");
  Trajectory traj = anneal(h_tar, h_d, g_table, Ket::uniform(std::vector<int>(spec.n, 2)),
                           total / static_cast<double>(steps),
                           static_cast<int>(steps / 50));
  rep.metric("ground_population", ground_subspace_population(spec, traj.final_state()));
  rep.metric("ground_count", static_cast<double>(spec.ground_states().size()));
  rep.series.columns = {"t", "ground_population"};
  for (size_t i = 0; i < traj.times.size(); ++i)
    rep.series.rows.push_back(
        {traj.times[i], ground_subspace_population(spec, traj.states[i])});
}

inline void run_lindblad(const Params& p, rng::Stream&, Report& rep) {
  double gamma = p.get_real("gamma");
  double total = p.get_real("t");
  double dt = p.get_real("dt");
  LindbladModel model(Mat(Mat::Zero(2, 2)), {{atom_lowering(), gamma}});
  Mat rho0 = Mat::Zero(2, 2);
  rho0(1, 1) = 1;
  LindbladTrajectory traj = lindblad_evolve(model, DensityOp({2}, rho0), total, dt,
                                            std::max<int>(1, static_cast<int>(total / dt / 100)));
  double worst = 0, trace_dev = 0;
  rep.series.columns = {"t", "p_excited", "analytic"};
  for (size_t i = 0; i < traj.times.size(); ++i) {
    double have = traj.states[i].mat(1, 1).real();
    double want = std::exp(-gamma * traj.times[i]);
    worst = std::max(worst, std::abs(have - want));
    trace_dev = std::max(trace_dev, std::abs(traj.states[i].trace_real() - 1.0));
    rep.series.rows.push_back({traj.times[i], have, want});
  }
  rep.metric("max_error_vs_analytic", worst);
  rep.metric("max_trace_deviation", trace_dev);
}

inline void run_rabi(const Params& p, rng::Stream&, Report& rep) {
  int photons = static_cast<int>(p.get_int("photons"));
  double g = p.get_real("g");
  CavityModel model = [&] {
    if (p.get_text("cavity_file").empty())
      return CavityModel(p.get_real("omega"), {g}, photons + 1, true);
    std::ifstream in(p.get_text("cavity_file"));
    require(in.good(), errc::io_failure, "cannot open cavity file");
    nlohmann::json j;
    in >> j;
    return io::cavity_from_json(j);
  }();
  require(model.n_max >= photons + 1, errc::cutoff_too_small,
          "cutoff below the requested photon block");
  require(model.atoms() == 1, errc::schema_violation, "rabi runs on a one-atom cavity");
  g = model.g.at(0);
  Hamiltonian h = jc_hamiltonian(model);
  double tau = kPi / (g * std::sqrt(static_cast<double>(photons)));
  double total = p.get_real("periods") * tau;
  long long samples = p.get_int("samples");
  Ket psi0 = Ket::basis(model.dims(), 2LL * photons);
  Trajectory traj = rabi_trajectory(h, psi0, total, total / static_cast<double>(samples));
  rep.series.columns = {"t", "p_n0", "p_n1m1"};
  double sum_dev = 0;
  for (size_t i = 0; i < traj.times.size(); ++i) {
    double up = std::norm(traj.states[i].amps(2LL * photons));
    double down = std::norm(traj.states[i].amps(2LL * (photons - 1) + 1));
    sum_dev = std::max(sum_dev, std::abs(up + down - 1.0));
    rep.series.rows.push_back({traj.times[i], up, down});
  }
  rep.metric("max_population_sum_dev", sum_dev);
  rep.metric("rabi_period", tau);
  rep.metric("cutoff_occupancy", cutoff_occupancy(traj));
  require_cutoff_clear(traj);
}

inline void run_cocsign(const Params& p, rng::Stream&, Report& rep) {
  CoCSignTiming t = cocsign_timings(p.get_real("tol"), static_cast<int>(p.get_int("n_cap")));
  CoCSignResult r = cocsign_simulate(t.n1, t.n2, 1.0, p.get_real("nu_over_g"),
                                     static_cast<int>(p.get_int("n_max")));
  rep.metric("n1", t.n1);
  rep.metric("n2", t.n2);
  rep.metric("commensuration_error", t.error);
  rep.metric("phase_00", r.calibrated_phase[0]);
  rep.metric("phase_01", r.calibrated_phase[1]);
  rep.metric("phase_10", r.calibrated_phase[2]);
  rep.metric("phase_11", r.calibrated_phase[3]);
  rep.metric("raw_phase_00", r.raw_phase[0]);
  rep.metric("raw_phase_01", r.raw_phase[1]);
  rep.metric("raw_phase_10", r.raw_phase[2]);
  rep.metric("raw_phase_11", r.raw_phase[3]);
  rep.metric("max_leakage", r.max_leakage);
  rep.metric("guard_occupancy", r.guard_occupancy);
}

inline void run_decouple(const Params& p, rng::Stream& rs, Report& rep) {
  int n = static_cast<int>(p.get_int("n"));
  Mat d = Mat::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) d(a, b) = p.get_real("coupling");
  double total = p.get_real("t");
  long long steps = p.get_int("steps");
  DecouplingResult r =
      p.get_text("mode") == "periodic"
          ? periodic_decoupling(d, 0, 1, total, total / static_cast<double>(steps))
          : randomized_decoupling(d, 0, 1, p.get_real("lambda"), total,
                                  total / static_cast<double>(steps), rs);
  rep.metric("residual_error", r.residual_error);
  rep.metric("slowdown_factor", r.slowdown_factor);
  rep.series.columns = {"basis_string", "two_qubit_phase"};
  for (size_t b = 0; b < r.two_qubit_phase.size(); ++b)
    rep.series.rows.push_back({static_cast<double>(b), r.two_qubit_phase[b]});
}

inline void run_teleport(const Params& p, rng::Stream& rs, Report& rep) {
  long long trials = p.get_int("trials");
  double min_f = 1.0, mean_f = 0;
  for (long long i = 0; i < trials; ++i) {
    double u = rs.uniform() * 2 * kPi, v = rs.uniform() * 2 * kPi;
    double t = rs.uniform() * kPi / 2;
    cxd lambda = std::polar(std::cos(t), u), mu = std::polar(std::sin(t), v);
    Vec msg(2);
    msg << lambda, mu;
    TeleportResult r = teleport(lambda, mu, rs);
    double f = fidelity(Ket({2}, msg), r.bob);
    min_f = std::min(min_f, f);
    mean_f += f / static_cast<double>(trials);
  }
  rep.metric("min_fidelity", min_f);
  rep.metric("mean_fidelity", mean_f);
}

inline void run_bb84(const Params& p, rng::Stream& rs, Report& rep) {
  BB84Result r = bb84(static_cast<int>(p.get_int("bits")), p.get_bool("eve"),
                      p.get_real("check_fraction"), rs);
  rep.metric("qber", r.qber);
  rep.metric("sifted_bits", static_cast<double>(r.sifted_alice.size()));
  rep.metric("disclosed_bits", static_cast<double>(r.disclosed));
  rep.metric("eve_detected", r.eve_detected ? 1.0 : 0.0);
}

inline void run_chsh(const Params& p, rng::Stream& rs, Report& rep) {
  long long shots = p.get_int("shots");
  const long long batch = 1000;
  long long batches = (shots + batch - 1) / batch;
  struct Acc {
    double sum = 0, sum_sq = 0;
    long long n = 0;
  };
  std::vector<Acc> accs(batches);
  bool record = p.get_bool("record_trials");
  std::vector<std::vector<ChshTrial>> recs(record ? batches : 0);
  parallel_for(batches, [&](long long b) {
    rng::Stream sub = rs.substream(static_cast<std::uint64_t>(b));
    long long want = std::min(batch, shots - b * batch);
    std::vector<ChshTrial> trials;
    ChshEstimate e = chsh_sample(want, sub, record ? &trials : nullptr);
    double var = e.stderr_of_mean * e.stderr_of_mean * static_cast<double>(want);
    accs[b].sum = e.estimate * static_cast<double>(want);
    accs[b].sum_sq = (var + e.estimate * e.estimate) * static_cast<double>(want);
    accs[b].n = want;
    if (record) recs[b] = std::move(trials);
  });
  double sum = 0, sum_sq = 0;
  long long n = 0;
  for (const Acc& a : accs) {
    sum += a.sum;
    sum_sq += a.sum_sq;
    n += a.n;
  }
  double mean = sum / static_cast<double>(n);
  double var = sum_sq / static_cast<double>(n) - mean * mean;
  double stderr_mean = std::sqrt(std::max(0.0, var) / static_cast<double>(n));
  rep.metric("exact", chsh_exact());
  rep.metric("estimate", mean);
  rep.metric("stderr", stderr_mean);
  rep.metric("classical_bound", 0.5);
  rep.metric("classical_mixture_exact", chsh_exact_for(classical_epr_mixture()));
  if (record) {
    rep.series.columns = {"setting_a", "setting_b", "outcome_a", "outcome_b"};
    for (const auto& rv : recs)
      for (const auto& t : rv)
        rep.series.rows.push_back({static_cast<double>(t.setting_a),
                                   static_cast<double>(t.setting_b),
                                   static_cast<double>(t.outcome_a),
                                   static_cast<double>(t.outcome_b)});
  }
}

inline void run_polymer(const Params& p, rng::Stream& rs, Report& rep) {
  long long trials = p.get_int("trials");
  bool classical = p.get_text("control") == "classical";
  PolymerControl control =
      classical
          ? PolymerControl::classical(
                PolymerStrategy::from_index(static_cast<int>(p.get_int("strategy"))))
          : PolymerControl::epr();
  const long long batch = 1000;
  long long batches = (trials + batch - 1) / batch;
  std::vector<double> glued(batches, 0);
  bool record = p.get_bool("record_trials");
  std::vector<std::vector<PolymerTrialRecord>> recs(record ? batches : 0);
  parallel_for(batches, [&](long long b) {
    rng::Stream sub = rs.substream(static_cast<std::uint64_t>(b));
    long long want = std::min(batch, trials - b * batch);
    std::vector<PolymerTrialRecord> local;
    double frac = polymer_run(want, control, sub, record ? &local : nullptr);
    glued[b] = frac * static_cast<double>(want);
    if (record) recs[b] = std::move(local);
  });
  double total_glued = 0;
  for (double gl : glued) total_glued += gl;
  rep.metric("glue_fraction", total_glued / static_cast<double>(trials));
  rep.metric("quantum_expected", 0.5 * (1 + std::sqrt(2.0) / 2));
  double best = 0;
  for (int idx = 0; idx < 16; ++idx)
    best = std::max(best, polymer_classical_expected(PolymerStrategy::from_index(idx)));
  rep.metric("classical_best", best);
  if (record) {
    rep.series.columns = {"trial", "type1", "type2", "shift1", "shift2", "glued"};
    long long i = 0;
    for (const auto& rv : recs)
      for (const auto& t : rv)
        rep.series.rows.push_back({static_cast<double>(i++), static_cast<double>(t.type1),
                                   static_cast<double>(t.type2), static_cast<double>(t.shift1),
                                   static_cast<double>(t.shift2), t.glued ? 1.0 : 0.0});
  }
}

inline void run_granular(const Params& p, rng::Stream&, Report& rep) {
  int n = static_cast<int>(p.get_int("n"));
  double eps = p.get_real("eps");
  long long target = p.get_int("target");
  long long nn = 1LL << n;
  if (target < 0) target = nn - 1;
  Mat oracle_sign = Mat::Identity(nn, nn);
  oracle_sign(target, target) = -1;
  Mat g = diffusion(n) * oracle_sign;
  int standard = grover_iterations(n, 1);
  Ket psi = Ket::uniform(std::vector<int>(n, 2));
  int used = 0;
  for (int k = 0; k < 4 * standard + 4; ++k) {
    psi = granular_evolve(psi, g, eps);
    ++used;
    if (std::abs(std::norm(psi.amps(target)) - 1.0) < 1e-12) break;
  }
  rep.metric("granular_iterations", used);
  rep.metric("standard_iterations", standard);
  rep.metric("final_target_prob", std::norm(psi.amps(target)));
}

inline void run_quanta(const Params& p, rng::Stream&, Report& rep) {
  double eps = p.get_real("eps");
  Ket plus = Ket::uniform({2});
  QuantaSet q = amplitude_quantization(gate_h().mat, plus, eps);
  Vec target = Vec::Zero(2);
  target(0) = 1;
  rep.metric("theta_fin_error", (q.theta_fin({2}).amps - target).norm());
  rep.metric("theta_in_error", (q.theta_in({2}).amps - plus.amps).norm());
  double worst_ratio = 1;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double lhs = static_cast<double>(q.n_of(i, j)) * eps * eps;
      double rhs = abs1(plus.amps(j)) * abs1(gate_h().mat(i, j));
      worst_ratio = std::max(worst_ratio, std::max(lhs / rhs, rhs / lhs));
    }
  rep.metric("agreement_worst_ratio", worst_ratio);
  rep.metric("condition_q", q.condition_q() ? 1.0 : 0.0);
  rep.metric("quanta_total", static_cast<double>(q.total));
}

inline void run_complexity(const Params& p, rng::Stream&, Report& rep) {
  const std::string& kind = p.get_text("state");
  int n = static_cast<int>(p.get_int("n"));
  long long nn = 1LL << n;
  Ket psi = Ket::basis(std::vector<int>(n, 2), 0);
  if (kind == "ghz") {
    Vec a = Vec::Zero(nn);
    a(0) = a(nn - 1) = 1 / std::sqrt(2.0);
    psi = Ket(std::vector<int>(n, 2), a);
  } else if (kind == "epr-pairs") {
    psi = epr_pair();
    for (int k = 2; k < n; k += 2) psi = tensor(psi, epr_pair());
  } else if (kind == "grover-step") {
    double t = grover_angle(n, 1) * 3;
    Vec a = Vec::Constant(nn, cxd(std::cos(t) / std::sqrt(static_cast<double>(nn - 1)), 0));
    a(nn - 1) = std::sin(t);
    psi = Ket(std::vector<int>(n, 2), a);
  } else if (kind == "product") {
    psi = Ket::uniform(std::vector<int>(n, 2));
  } else {
    fail(errc::schema_violation, "unknown state kind: " + kind);
  }
  rep.metric("naive", naive_complexity(psi));
  rep.metric("quantum", quantum_complexity(psi));
}

inline void run_phonons(const Params& p, rng::Stream&, Report& rep) {
  int n = static_cast<int>(p.get_int("sites"));
  double mass = p.get_real("mass"), k = p.get_real("k");
  RVec w = oscillator_chain_spectrum(n, mass, k);
  Mat force = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    force(i, i) = 2 * k / mass;
    force(i, (i + 1) % n) = -k / mass;
    force(i, (i + n - 1) % n) = -k / mass;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(force);
  std::vector<double> formula(w.data(), w.data() + n);
  std::sort(formula.begin(), formula.end());
  double worst = 0;
  for (int i = 0; i < n; ++i)
    worst = std::max(worst,
                     std::abs(std::sqrt(std::max(0.0, es.eigenvalues()(i))) - formula[i]));
  rep.metric("max_dev_vs_eigensolve", worst);
  rep.series.columns = {"q", "omega"};
  for (int q = 0; q < n; ++q)
    rep.series.rows.push_back({static_cast<double>(q), w(q)});
}

} // namespace detail

inline const std::vector<ExperimentDef>& registry() {
  using T = ParamSpec::Type;
  static const std::vector<ExperimentDef> defs = {
      {"grover", "amplitude-amplification search with a known solution count",
       {{"n", T::integer, "3"}, {"l", T::integer, "1"}, {"target", T::integer, "-1"}},
       detail::run_grover_exp},
      {"grover-adiabatic", "interpolated-Hamiltonian search",
       {{"n", T::integer, "4"},
        {"marked", T::integer, "1"},
        {"eps", T::real, "0.2"},
        {"schedule", T::text, "roland-cerf"}},
       detail::run_grover_adiabatic},
      {"grover-continuous", "fixed two-projector search Hamiltonian",
       {{"n", T::integer, "2"}, {"marked", T::integer, "1"}},
       detail::run_grover_continuous},
      {"qft", "gate-array Fourier transform and its truncations",
       {{"n", T::integer, "5"}},
       detail::run_qft_exp},
      {"phase-estimate", "eigenfrequency readout of a diagonal unitary",
       {{"bits", T::integer, "3"}, {"numer", T::integer, "5"}, {"trials", T::integer, "100"}},
       detail::run_phase_estimate},
      {"shor", "order-finding factorization",
       {{"q", T::integer, "15"}, {"attempts", T::integer, "20"}},
       detail::run_shor},
      {"zalka", "split-step Schrodinger propagation on a qubit grid",
       {{"n", T::integer, "6"},
        {"t", T::real, "1.0"},
        {"steps", T::integer, "1000"},
        {"mass", T::real, "1.0"},
        {"omega", T::real, "1.0"},
        {"potential_file", T::text, ""}},
       detail::run_zalka},
      {"anneal", "quantum annealing with a decaying driver",
       {{"t", T::real, "200"},
        {"g0", T::real, "10"},
        {"steps", T::integer, "4000"},
        {"problem_file", T::text, ""}},
       detail::run_anneal},
      {"lindblad", "amplitude-damping master equation",
       {{"gamma", T::real, "1.0"}, {"t", T::real, "5.0"}, {"dt", T::real, "0.001"}},
       detail::run_lindblad},
      {"rabi", "vacuum and excited Rabi oscillations",
       {{"photons", T::integer, "1"},
        {"g", T::real, "0.001"},
        {"omega", T::real, "1.0"},
        {"periods", T::real, "1.0"},
        {"samples", T::integer, "200"},
        {"cavity_file", T::text, ""}},
       detail::run_rabi},
      {"cocsign", "entangling phase gate on asynchronous cavity excitations",
       {{"tol", T::real, "0.1"},
        {"n_cap", T::integer, "10"},
        {"nu_over_g", T::real, "1000"},
        {"n_max", T::integer, "3"}},
       detail::run_cocsign},
      {"decouple", "suppression of an always-on diagonal coupling",
       {{"mode", T::text, "random"},
        {"n", T::integer, "3"},
        {"coupling", T::real, "1.0"},
        {"lambda", T::real, "1000"},
        {"t", T::real, "1.0"},
        {"steps", T::integer, "2000"}},
       detail::run_decouple},
      {"teleport", "three-qubit teleportation fidelity",
       {{"trials", T::integer, "100"}},
       detail::run_teleport},
      {"bb84", "key distribution with an optional intercept-resend attack",
       {{"bits", T::integer, "1024"},
        {"eve", T::boolean, "false"},
        {"check_fraction", T::real, "0.5"}},
       detail::run_bb84},
      {"chsh", "four-setting correlation experiment on EPR pairs",
       {{"shots", T::integer, "100000"}, {"record_trials", T::boolean, "false"}},
       detail::run_chsh},
      {"polymer", "remote two-site assembly with EPR or classical control",
       {{"trials", T::integer, "100000"},
        {"control", T::text, "epr"},
        {"strategy", T::integer, "0"},
        {"record_trials", T::boolean, "false"}},
       detail::run_polymer},
      {"granular", "search with grained amplitudes",
       {{"n", T::integer, "6"}, {"eps", T::real, "0.12"}, {"target", T::integer, "-1"}},
       detail::run_granular},
      {"quanta", "amplitude quantization of the balanced-state instance",
       {{"eps", T::real, "0.001"}},
       detail::run_quanta},
      {"complexity", "entangled tensor-divisor sizes",
       {{"state", T::text, "ghz"}, {"n", T::integer, "4"}},
       detail::run_complexity},
      {"phonons", "normal-mode spectrum of the cyclic oscillator chain",
       {{"sites", T::integer, "64"}, {"mass", T::real, "1.0"}, {"k", T::real, "1.0"}},
       detail::run_phonons},
  };
  return defs;
}

inline const ExperimentDef& find_experiment(const std::string& name) {
  for (const auto& def : registry())
    if (def.name == name) return def;
  fail(errc::unknown_experiment, "unknown experiment: " + name);
}

// Fills defaults, rejects unknown keys and missing required parameters.
inline Params resolve_params(const ExperimentDef& def, const Params& given) {
  Params out;
  for (const auto& spec : def.schema) {
    auto it = given.values.find(spec.key);
    if (it != given.values.end()) {
      out.values[spec.key] = it->second;
    } else {
      require(!spec.required, errc::schema_violation, "missing parameter: " + spec.key);
      out.values[spec.key] = spec.default_value;
    }
  }
  for (const auto& [k, v] : given.values)
    require(out.values.count(k) > 0, errc::schema_violation, "unknown parameter: " + k);
  return out;
}

inline Report run_experiment(const ExperimentConfig& cfg) {
  const ExperimentDef& def = find_experiment(cfg.name);
  Params resolved = resolve_params(def, cfg.params);
  Report rep;
  rep.name = cfg.name;
  rep.seed = cfg.seed;
  rep.params = resolved.values;
  rng::Stream rs(cfg.seed);
  auto t0 = std::chrono::steady_clock::now();
  def.body(resolved, rs, rep);
  rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require(!rep.metrics.empty(), errc::schema_violation, "experiment produced no metrics");
  return rep;
}

// --- emission ------------------------------------------------------------------------

inline std::string escape_json(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

// Reports are rendered by hand so float formatting is pinned at 17 significant
// digits and the metric block is byte-stable across runs.
inline std::string emit_json(const Report& rep) {
  std::string out = "{\n  \"schema\": 1,\n";
  out += "  \"name\": \"" + escape_json(rep.name) + "\",\n";
  out += "  \"seed\": " + std::to_string(rep.seed) + ",\n";
  out += "  \"params\": {";
  bool first = true;
  for (const auto& [k, v] : rep.params) {
    out += first ? "" : ", ";
    out += "\"" + escape_json(k) + "\": \"" + escape_json(v) + "\"";
    first = false;
  }
  out += "},\n  \"metrics\": {";
  first = true;
  for (const auto& [k, v] : rep.metrics) {
    out += first ? "" : ", ";
    out += "\"" + escape_json(k) + "\": " + io::fmt17(v);
    first = false;
  }
  out += "}";
  if (!rep.series.columns.empty()) {
    out += ",\n  \"series\": {\"columns\": [";
    for (size_t i = 0; i < rep.series.columns.size(); ++i)
      out += (i ? ", " : "") + ("\"" + escape_json(rep.series.columns[i]) + "\"");
    out += "], \"rows\": [";
    for (size_t r = 0; r < rep.series.rows.size(); ++r) {
      out += r ? ", [" : "[";
      for (size_t c = 0; c < rep.series.rows[r].size(); ++c)
        out += (c ? ", " : "") + io::fmt17(rep.series.rows[r][c]);
      out += "]";
    }
    out += "]}";
  }
  out += ",\n  \"wall_time_s\": " + io::fmt17(rep.wall_time_s) + "\n}\n";
  return out;
}

inline std::string emit_csv(const Report& rep) {
  std::string out;
  if (!rep.series.columns.empty()) {
    for (size_t i = 0; i < rep.series.columns.size(); ++i)
      out += (i ? "," : "") + rep.series.columns[i];
    out += "\n";
    for (const auto& row : rep.series.rows) {
      for (size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + io::fmt17(row[c]);
      out += "\n";
    }
    return out;
  }
  for (size_t i = 0; i < rep.metrics.size(); ++i)
    out += (i ? "," : "") + rep.metrics[i].first;
  out += "\n";
  for (size_t i = 0; i < rep.metrics.size(); ++i)
    out += (i ? "," : "") + io::fmt17(rep.metrics[i].second);
  out += "\n";
  return out;
}

// JSON-lines: one object per series row.
inline std::string emit_jsonl(const Report& rep) {
  std::string out;
  for (const auto& row : rep.series.rows) {
    out += "{";
    for (size_t c = 0; c < row.size() && c < rep.series.columns.size(); ++c) {
      out += c ? ", " : "";
      out += "\"" + escape_json(rep.series.columns[c]) + "\": " + io::fmt17(row[c]);
    }
    out += "}\n";
  }
  return out;
}

inline std::string emit(const Report& rep, const std::string& format) {
  if (format == "json") return emit_json(rep);
  if (format == "csv") return emit_csv(rep);
  if (format == "jsonl") return emit_jsonl(rep);
  fail(errc::schema_violation, "unknown format: " + format);
}

// Atomic write: a temporary sibling is renamed over the target.
inline void write_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), errc::io_failure, "cannot open for writing: " + tmp);
    out << content;
    require(out.good(), errc::io_failure, "write failed: " + tmp);
  }
  require(std::rename(tmp.c_str(), path.c_str()) == 0, errc::io_failure,
          "rename failed: " + path);
}

} // namespace qlectra::cli
