// Cavity QED models (single cavity and coupled networks), Rabi dynamics,
// Lindblad master-equation integration, the coCSign gate timing search and
// simulation, decoupling of an always-on diagonal coupling, and CNOT from a
// fixed diagonal interaction.
#pragma once

#include <array>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "qlectra/common.hpp"
#include "qlectra/qadiabatic.hpp"
#include "qlectra/qgate.hpp"
#include "qlectra/qstate.hpp"
#include "qlectra/rng.hpp"

namespace qlectra {

// Single-mode cavity with one or more two-level atoms. Register layout is
// [photon mode (n_max+1), atom_1 (2), ..., atom_k (2)], photon first.
struct CavityModel {
  double omega = 1.0;
  std::vector<double> g;
  int n_max = 3;
  bool rwa = true;

  CavityModel(double w, std::vector<double> couplings, int cutoff, bool rwa_flag)
      : omega(w), g(std::move(couplings)), n_max(cutoff), rwa(rwa_flag) {
    require(omega > 0, errc::bad_params, "omega must be positive");
    require(n_max >= 1, errc::bad_params, "photon cutoff must be >= 1");
    double gmax = 0;
    for (double gi : g) {
      require(gi >= 0, errc::bad_params, "couplings must be non-negative");
      gmax = std::max(gmax, gi);
    }
    require(!rwa || gmax / omega <= 1e-2, errc::bad_params,
            "rotating-wave approximation needs g/omega <= 1e-2");
  }

  // true when g/omega exceeds the recommended 1e-3 band
  bool rwa_marginal() const {
    double gmax = 0;
    for (double gi : g) gmax = std::max(gmax, gi);
    return rwa && gmax / omega > 1e-3;
  }

  int atoms() const { return static_cast<int>(g.size()); }
  std::vector<int> dims() const {
    std::vector<int> d{n_max + 1};
    d.insert(d.end(), g.size(), 2);
    return d;
  }
};

struct CavityNetwork {
  std::vector<CavityModel> cavities;
  std::vector<std::tuple<int, int, double>> hops; // (i, j, mu), mu >= 0

  CavityNetwork(std::vector<CavityModel> cav, std::vector<std::tuple<int, int, double>> h)
      : cavities(std::move(cav)), hops(std::move(h)) {
    for (auto& [i, j, mu] : hops) {
      if (i > j) std::swap(i, j);
      require(i >= 0 && j < static_cast<int>(cavities.size()) && i != j,
              errc::index_out_of_range, "hop index out of range");
      require(mu >= 0, errc::bad_params, "hop strength must be non-negative");
    }
  }

  std::vector<int> dims() const {
    std::vector<int> d;
    for (const auto& c : cavities) {
      auto cd = c.dims();
      d.insert(d.end(), cd.begin(), cd.end());
    }
    return d;
  }
};

// --- elementary mode/atom operators -------------------------------------------

inline Mat annihilator(int n_max) {
  Mat a = Mat::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline Mat atom_lowering() {
  Mat s = Mat::Zero(2, 2);
  s(0, 1) = 1;
  return s;
}

namespace detail {
inline Mat embed(const Mat& op, int pos, const std::vector<int>& dims) {
  Mat out = Mat::Identity(1, 1);
  for (int i = 0; i < static_cast<int>(dims.size()); ++i)
    out = kron(out, i == pos ? op : Mat::Identity(dims[i], dims[i])).eval();
  return out;
}
} // namespace detail

// Total excitation operator a^+a + sum_j sigma_j^+ sigma_j on a cavity register.
inline Mat excitation_number(const std::vector<int>& dims) {
  Mat total = Mat::Zero(product_dim(dims), product_dim(dims));
  for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
    Mat num = Mat::Zero(dims[i], dims[i]);
    for (int k = 0; k < dims[i]; ++k) num(k, k) = k;
    total += detail::embed(num, i, dims);
  }
  return total;
}

// Jaynes-Cummings (one atom) or Tavis-Cummings (several atoms) Hamiltonian.
// The RWA form keeps only the excitation-conserving coupling a^+ sigma + a sigma^+;
// the full form couples (a^+ + a)(sigma^+ + sigma). Vacuum energy omitted.
inline Hamiltonian jc_hamiltonian(const CavityModel& model) {
  auto dims = model.dims();
  Mat a = detail::embed(annihilator(model.n_max), 0, dims);
  Mat h = model.omega * (a.adjoint() * a);
  for (int j = 0; j < model.atoms(); ++j) {
    Mat s = detail::embed(atom_lowering(), 1 + j, dims);
    h += model.omega * (s.adjoint() * s);
    if (model.rwa)
      h += model.g[j] * (a.adjoint() * s + a * s.adjoint());
    else
      h += model.g[j] * ((a.adjoint() + a) * (s.adjoint() + s));
  }
  return Hamiltonian(((h + h.adjoint()) / 2.0).eval());
}

inline Hamiltonian tch_hamiltonian(const CavityNetwork& net) {
  auto dims = net.dims();
  require(product_dim(dims) <= 4096, errc::dimension_overflow,
          "network register exceeds the desk-scale limit");
  long long nn = product_dim(dims);
  Mat h = Mat::Zero(nn, nn);
  // positions of each cavity's photon mode inside the concatenated register
  std::vector<int> photon_pos;
  int pos = 0;
  for (const auto& c : net.cavities) {
    photon_pos.push_back(pos);
    Mat a = detail::embed(annihilator(c.n_max), pos, dims);
    h += c.omega * (a.adjoint() * a);
    for (int j = 0; j < c.atoms(); ++j) {
      Mat s = detail::embed(atom_lowering(), pos + 1 + j, dims);
      h += c.omega * (s.adjoint() * s);
      if (c.rwa)
        h += c.g[j] * (a.adjoint() * s + a * s.adjoint());
      else
        h += c.g[j] * ((a.adjoint() + a) * (s.adjoint() + s));
    }
    pos += 1 + c.atoms();
  }
  for (const auto& [i, j, mu] : net.hops) {
    Mat ai = detail::embed(annihilator(net.cavities[i].n_max), photon_pos[i], dims);
    Mat aj = detail::embed(annihilator(net.cavities[j].n_max), photon_pos[j], dims);
    h += mu * (ai.adjoint() * aj + ai * aj.adjoint());
  }
  return Hamiltonian(((h + h.adjoint()) / 2.0).eval());
}

// Exact trajectory under a constant Hamiltonian, sampled every dt.
inline Trajectory rabi_trajectory(const Hamiltonian& h, const Ket& psi0, double total,
                                  double dt) {
  require(dt > 0 && total >= dt, errc::bad_time_step, "need dt > 0 and T >= dt");
  Eigen::SelfAdjointEigenSolver<Mat> es(h.mat);
  Vec coeff = es.eigenvectors().adjoint() * psi0.amps;
  Trajectory traj;
  long long steps = std::llround(total / dt);
  for (long long k = 0; k <= steps; ++k) {
    double t = static_cast<double>(k) * dt;
    Vec phased(coeff.size());
    for (long long i = 0; i < coeff.size(); ++i)
      phased(i) = coeff(i) * std::polar(1.0, -es.eigenvalues()(i) * t);
    traj.times.push_back(t);
    traj.states.emplace_back(psi0.dims, (es.eigenvectors() * phased).eval());
  }
  return traj;
}

// Leakage into the top photon level along a trajectory; the cutoff must keep
// this negligible for the model to be trusted. require_cutoff_clear turns an
// excessive occupancy into an error after the fact.
inline double cutoff_occupancy(const Trajectory& traj, int photon_pos = 0) {
  double worst = 0;
  for (const Ket& psi : traj.states) {
    auto strides = strides_of(psi.dims);
    int top = psi.dims[photon_pos] - 1;
    double occ = 0;
    std::vector<int> digits;
    for (long long i = 0; i < psi.dim(); ++i) {
      decompose_index(i, psi.dims, digits);
      if (digits[photon_pos] == top) occ += std::norm(psi.amps(i));
    }
    worst = std::max(worst, occ);
  }
  return worst;
}

inline void require_cutoff_clear(const Trajectory& traj, int photon_pos = 0,
                                 double threshold = 1e-6) {
  double occ = cutoff_occupancy(traj, photon_pos);
  require(occ <= threshold, errc::cutoff_too_small,
          "top photon level populated beyond tolerance: " + std::to_string(occ));
}

// --- Lindblad master equation -----------------------------------------------------

struct LindbladModel {
  Mat h;
  std::vector<std::pair<Mat, double>> factors; // (A_j, gamma_j)

  LindbladModel(Mat hamiltonian, std::vector<std::pair<Mat, double>> f)
      : h(std::move(hamiltonian)), factors(std::move(f)) {
    for (const auto& [a, gamma] : factors) {
      require(gamma >= 0, errc::bad_params, "decoherence rates must be non-negative");
      require(a.rows() == h.rows() && a.cols() == h.cols(), errc::dimension_mismatch,
              "decoherence factor dimension mismatch");
    }
  }

  Mat superop(const Mat& rho) const {
    Mat out = Mat::Zero(rho.rows(), rho.cols());
    for (const auto& [a, gamma] : factors) {
      Mat ada = a.adjoint() * a;
      out += gamma * (a * rho * a.adjoint() - 0.5 * (ada * rho + rho * ada));
    }
    return out;
  }
};

struct LindbladTrajectory {
  std::vector<double> times;
  std::vector<DensityOp> states;
  bool coarse_step_warning = false;

  const DensityOp& final_state() const { return states.back(); }
};

// Two-step Euler scheme: a unitary half using [H, rho], then the dissipator.
// Each step re-Hermitizes and renormalizes the trace; every 20 steps small
// negative eigenvalues are clamped and the spectrum rescaled.
inline LindbladTrajectory lindblad_evolve(const LindbladModel& model, const DensityOp& rho0,
                                          double total, double dt, int store_stride = 1) {
  require(dt > 0 && total >= dt, errc::bad_time_step, "need dt > 0 and T >= dt");
  double scale = model.h.norm();
  for (const auto& [a, gamma] : model.factors) scale = std::max(scale, gamma);
  LindbladTrajectory traj;
  traj.coarse_step_warning = dt * scale > 0.1;
  require(dt * scale <= 0.5, errc::bad_time_step,
          "dt too coarse for the Euler scheme");

  Mat rho = rho0.mat;
  long long steps = std::llround(total / dt);
  traj.times.push_back(0);
  traj.states.push_back(rho0);
  const cxd inv_i_hbar(0, -1); // 1/(i hbar), hbar = 1
  for (long long k = 0; k < steps; ++k) {
    Mat tilde = rho + inv_i_hbar * (model.h * rho - rho * model.h) * dt;
    rho = tilde + model.superop(tilde) * dt;
    // repair: Hermitize and renormalize the trace
    rho = ((rho + rho.adjoint()) / 2.0).eval();
    rho /= rho.trace().real();
    if ((k + 1) % 20 == 0) {
      Eigen::SelfAdjointEigenSolver<Mat> es(rho);
      RVec ev = es.eigenvalues();
      bool dirty = false;
      for (long long i = 0; i < ev.size(); ++i)
        if (ev(i) < 0) { ev(i) = 0; dirty = true; }
      if (dirty) {
        ev /= ev.sum();
        rho = es.eigenvectors() * ev.cast<cxd>().asDiagonal() * es.eigenvectors().adjoint();
      }
    }
    if ((k + 1) % store_stride == 0 || k + 1 == steps) {
      traj.times.push_back(static_cast<double>(k + 1) * dt);
      traj.states.emplace_back(rho0.dims, rho);
    }
  }
  return traj;
}

// --- coCSign timing and simulation ---------------------------------------------

struct CoCSignTiming {
  int n1 = 0, n2 = 0;
  double error = 0; // |2 n2 tau2 - 2 n1 tau1 - tau1/2| in units of tau1
};

// Search for Rabi-period counts with 2 n2 tau2 ~ 2 n1 tau1 + tau1 / 2.
inline CoCSignTiming cocsign_timings(double tol, int n_cap) {
  require(tol > 0 && n_cap >= 1, errc::bad_params, "need tol > 0 and n_cap >= 1");
  CoCSignTiming best;
  best.error = 1e300;
  for (int n1 = 1; n1 <= n_cap; ++n1)
    for (int n2 = 1; n2 <= n_cap; ++n2) {
      double err = std::abs(2.0 * n2 / std::sqrt(2.0) - 2.0 * n1 - 0.5);
      if (err < best.error) best = {n1, n2, err};
    }
  require(best.error <= tol, errc::not_found, "no commensurate pair within the cap");
  return best;
}

struct CoCSignResult {
  std::array<double, 4> raw_phase{};        // arg of the dominant amplitude per input
  std::array<double, 4> calibrated_phase{}; // after removing single-qubit frames
  std::array<long long, 4> final_index{};
  double max_leakage = 0; // 1 - |dominant amplitude|^2, worst case
  double commensuration_error = 0;
  double guard_occupancy = 0; // population of the guard photon level
};

// Full three-cavity simulation of the asynchronous-excitation gate: launch the
// x photon into the central cavity, the y photon half a Rabi period later, let
// the nonlinearity act for 2 n2 tau2, then extract in the same order. Every
// logical branch carries total excitation 2, so the free part of the
// Hamiltonian contributes a common phase and the dynamics is integrated in the
// interaction frame. Phases are reported raw and in the calibrated gauge with
// single-qubit frames removed (local phase frames are calibration in any
// hardware use); the entangling invariant lands on the |10> branch.
inline CoCSignResult cocsign_simulate(int n1, int n2, double g, double nu, int n_max = 3) {
  require(nu / g >= 100, errc::bad_ratio, "need nu >> g (at least 100x)");
  require(n1 >= 1 && n2 >= 1 && g > 0, errc::bad_params, "bad gate parameters");
  require(n_max >= 2, errc::cutoff_too_small, "gate populates two photons");

  // register: cavity x (photon, atom), central c, cavity y
  std::vector<int> dims{n_max + 1, 2, n_max + 1, 2, n_max + 1, 2};
  long long nn = product_dim(dims);

  Mat ax = detail::embed(annihilator(n_max), 0, dims);
  Mat sx = detail::embed(atom_lowering(), 1, dims);
  Mat ac = detail::embed(annihilator(n_max), 2, dims);
  Mat sc = detail::embed(atom_lowering(), 3, dims);
  Mat ay = detail::embed(annihilator(n_max), 4, dims);
  Mat sy = detail::embed(atom_lowering(), 5, dims);

  Mat h_int = g * (ax.adjoint() * sx + ax * sx.adjoint()) +
              g * (ac.adjoint() * sc + ac * sc.adjoint()) +
              g * (ay.adjoint() * sy + ay * sy.adjoint());
  Mat hop_x = nu * (ax.adjoint() * ac + ax * ac.adjoint());
  Mat hop_y = nu * (ay.adjoint() * ac + ay * ac.adjoint());

  const double tau1 = kPi / g;
  const double tau2 = kPi / (g * std::sqrt(2.0));
  const double dtau = kPi / (2.0 * nu); // photon transfer window

  struct Segment {
    const Mat* h;
    double duration;
  };
  Mat h_with_x = h_int + hop_x;
  Mat h_with_y = h_int + hop_y;
  const double dwell = 2.0 * n2 * tau2;
  std::vector<Segment> timeline = {
      {&h_with_x, dtau},            // launch x
      {&h_int, tau1 / 2 - dtau},    // wait for the y photon to appear
      {&h_with_y, dtau},            // launch y
      {&h_int, dwell - dtau},       // nonlinear dwell
      {&h_with_x, dtau},            // extract x
      {&h_int, tau1 / 2 - dtau},    // half period spacing
      {&h_with_y, dtau},            // extract y
  };

  // one eigendecomposition per distinct Hamiltonian, reused across durations
  std::map<const Mat*, Eigen::SelfAdjointEigenSolver<Mat>> solvers;
  for (const Mat* h : {&h_int, &h_with_x, &h_with_y}) solvers.emplace(h, *h);
  std::vector<Mat> props;
  for (const auto& seg : timeline) {
    const auto& es = solvers.at(seg.h);
    Vec phases(nn);
    for (long long i = 0; i < nn; ++i)
      phases(i) = std::polar(1.0, -es.eigenvalues()(i) * seg.duration);
    props.push_back(es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint());
  }

  auto logical_ket = [&](int x, int y) {
    // |0>_L = excited atom, empty mode; |1>_L = one photon, ground atom
    std::vector<int> digits{x ? 1 : 0, x ? 0 : 1, 0, 0, y ? 1 : 0, y ? 0 : 1};
    return compose_index(digits, strides_of(dims));
  };

  CoCSignResult out;
  out.commensuration_error = std::abs(2.0 * n2 / std::sqrt(2.0) - 2.0 * n1 - 0.5);
  Mat guard_proj = Mat::Zero(nn, nn);
  {
    std::vector<int> digits;
    for (long long i = 0; i < nn; ++i) {
      decompose_index(i, dims, digits);
      if (digits[0] == n_max || digits[2] == n_max || digits[4] == n_max)
        guard_proj(i, i) = 1;
    }
  }

  std::array<long long, 4> expected_index{};
  for (int b = 0; b < 4; ++b) {
    int x = (b >> 1) & 1, y = b & 1;
    Vec psi = Vec::Zero(nn);
    psi(logical_ket(x, y)) = 1.0;
    for (const Mat& u : props) psi = u * psi;

    long long arg_max = 0;
    for (long long i = 1; i < nn; ++i)
      if (std::norm(psi(i)) > std::norm(psi(arg_max))) arg_max = i;
    out.final_index[b] = arg_max;
    out.raw_phase[b] = std::arg(psi(arg_max));
    out.max_leakage = std::max(out.max_leakage, 1.0 - std::norm(psi(arg_max)));
    out.guard_occupancy = std::max(out.guard_occupancy, (psi.adjoint() * guard_proj * psi)(0).real());
    expected_index[b] = arg_max;
  }

  // remove single-qubit phase frames: fix the gauge so the 00, 01 and 11
  // branches sit at zero; the leftover entangling phase lands on 10
  auto wrap = [](double x) {
    while (x > kPi) x -= 2 * kPi;
    while (x <= -kPi) x += 2 * kPi;
    return x;
  };
  const double p00 = out.raw_phase[0], p01 = out.raw_phase[1];
  const double p10 = out.raw_phase[2], p11 = out.raw_phase[3];
  out.calibrated_phase = {0.0, 0.0, wrap(-(p00 - p01 - p10 + p11)), 0.0};
  return out;
}

// --- decoupling of an always-on diagonal coupling ---------------------------------

struct DecouplingResult {
  std::vector<double> two_qubit_phase; // residual phase per basis string
  double residual_error = 0;           // worst |residual - d_jk T b_j b_k|
  double slowdown_factor = 1;          // periodic variant: largest flip period / dt
};

namespace detail {
// Shared bookkeeping: given per-step flip parities of every qubit, accumulate
// the joint duty times of every pair and assemble the per-string phases.
class PhaseLedger {
public:
  PhaseLedger(int n) : n_(n), duty_(n * n) {}

  void accumulate(const std::vector<int>& parity, double dt) {
    for (int p = 0; p < n_; ++p)
      for (int q = p + 1; q < n_; ++q)
        duty_[p * n_ + q][parity[p]][parity[q]] += dt;
  }

  // phase accrued on basis string b under coupling d (upper triangular)
  double phase_of(long long b, const Mat& d) const {
    double total = 0;
    for (int p = 0; p < n_; ++p)
      for (int q = p + 1; q < n_; ++q) {
        int bp = static_cast<int>((b >> (n_ - 1 - p)) & 1);
        int bq = static_cast<int>((b >> (n_ - 1 - q)) & 1);
        total += d(p, q).real() * duty_[p * n_ + q][1 ^ bp][1 ^ bq];
      }
    return total;
  }

private:
  int n_;
  struct Quad {
    double m[2][2] = {{0, 0}, {0, 0}};
    double (&operator[](int i))[2] { return m[i]; }
    const double (&operator[](int i) const)[2] { return m[i]; }
  };
  std::vector<Quad> duty_;
};

inline DecouplingResult decoupling_report(int n, int j, int k, double total,
                                          const Mat& d, const PhaseLedger& ledger) {
  DecouplingResult out;
  long long nn = 1LL << n;
  out.two_qubit_phase.resize(nn);
  for (long long b = 0; b < nn; ++b) {
    double phi = ledger.phase_of(b, d);
    // subtract the single-qubit-compensable prediction
    double comp = 0;
    int bj = static_cast<int>((b >> (n - 1 - j)) & 1);
    int bk = static_cast<int>((b >> (n - 1 - k)) & 1);
    for (int p = 0; p < n; ++p) {
      if (p == j || p == k) continue;
      double dpj = p < j ? d(p, j).real() : d(j, p).real();
      double dpk = p < k ? d(p, k).real() : d(k, p).real();
      comp += total / 2.0 * (dpj * bj + dpk * bk);
      for (int q = p + 1; q < n; ++q) {
        if (q == j || q == k) continue;
        comp += total / 4.0 * d(p, q).real();
      }
    }
    double residual = phi - comp;
    out.two_qubit_phase[b] = residual;
    double djk = j < k ? d(j, k).real() : d(k, j).real();
    out.residual_error = std::max(out.residual_error,
                                  std::abs(residual - djk * total * bj * bk));
  }
  return out;
}
} // namespace detail

// Randomized decoupling: every qubit except the separated pair (j, k) is
// flipped at Poisson times of density lambda; the diagonal coupling d then
// averages to single-qubit terms plus the preserved d_jk interaction, with a
// residual of order T / sqrt(T / dt).
inline DecouplingResult randomized_decoupling(const Mat& d, int j, int k, double lambda,
                                              double total, double dt, rng::Stream& rs) {
  int n = static_cast<int>(d.rows());
  require(j != k && j >= 0 && k >= 0 && j < n && k < n, errc::index_out_of_range,
          "separated pair out of range");
  require(lambda * dt <= 0.5, errc::bad_density, "lambda dt must stay below 1/2");
  require(dt > 0 && total >= dt, errc::bad_time_step, "need dt > 0 and T >= dt");

  detail::PhaseLedger ledger(n);
  std::vector<int> parity(n, 0);
  long long steps = std::llround(total / dt);
  for (long long s = 0; s < steps; ++s) {
    for (int p = 0; p < n; ++p) {
      if (p == j || p == k) continue;
      if (rs.bernoulli(lambda * dt)) parity[p] ^= 1;
    }
    ledger.accumulate(parity, dt);
  }
  return detail::decoupling_report(n, j, k, total, d, ledger);
}

// Periodic variant: qubit p flips whenever the step index is a multiple of
// 2^p (binary periods make the pairwise duty factors average exactly).
inline DecouplingResult periodic_decoupling(const Mat& d, int j, int k, double total,
                                            double dt) {
  int n = static_cast<int>(d.rows());
  require(j != k && j >= 0 && k >= 0 && j < n && k < n, errc::index_out_of_range,
          "separated pair out of range");
  require(dt > 0 && total >= dt, errc::bad_time_step, "need dt > 0 and T >= dt");

  detail::PhaseLedger ledger(n);
  std::vector<int> parity(n, 0);
  std::vector<long long> period(n, 0);
  long long m = 1;
  for (int p = 0; p < n; ++p) {
    if (p == j || p == k) continue;
    period[p] = m;
    m <<= 1;
  }
  long long steps = std::llround(total / dt);
  for (long long s = 0; s < steps; ++s) {
    for (int p = 0; p < n; ++p)
      if (period[p] > 0 && s % period[p] == 0 && s > 0) parity[p] ^= 1;
    ledger.accumulate(parity, dt);
  }
  DecouplingResult out = detail::decoupling_report(n, j, k, total, d, ledger);
  out.slowdown_factor = static_cast<double>(m);
  return out;
}

// --- CNOT from a fixed diagonal interaction ----------------------------------------

struct DiagonalCnotResult {
  int n = 0, m = 0;
  double phase_error = 0; // |dE n - pi (2m+1)|
  Mat assembled;          // (I x H) (E (A x B))^n (I x H)
  double operator_error = 0;
};

// Powers of U = E (A x B) = diag(1,1,1,e^{i dE}) approximate the CSign block,
// and Hadamard conjugation turns it into CNOT.
inline DiagonalCnotResult cnot_from_diagonal(const std::array<double, 4>& e, double eps,
                                             int n_cap) {
  double de = e[0] - e[1] - e[2] + e[3];
  require(std::abs(de) > 1e-12, errc::bad_params, "dE must be nonzero");
  DiagonalCnotResult best;
  best.phase_error = 1e300;
  for (int n = 1; n <= n_cap; ++n) {
    int m = static_cast<int>(std::lround((std::abs(de) * n / kPi - 1) / 2));
    for (int mm : {m - 1, m, m + 1}) {
      if (mm < 0) continue;
      double err = std::abs(std::abs(de) * n - kPi * (2 * mm + 1));
      if (err < best.phase_error) {
        best.phase_error = err;
        best.n = n;
        best.m = mm;
      }
    }
  }
  require(best.phase_error <= eps, errc::not_found,
          "no power approximates the phase flip within eps");

  Mat ee = Mat::Zero(4, 4);
  for (int i = 0; i < 4; ++i) ee(i, i) = std::polar(1.0, e[i]);
  Mat a = Mat::Identity(2, 2);
  a(1, 1) = std::polar(1.0, e[0] - e[2]);
  Mat b = Mat::Zero(2, 2);
  b(0, 0) = std::polar(1.0, -e[0]);
  b(1, 1) = std::polar(1.0, -e[1]);
  Mat u = ee * kron(a, b);
  Mat un = Mat::Identity(4, 4);
  int reps = best.n;
  Mat base = de > 0 ? u : Mat(u.adjoint()); // negative dE runs the inverse power
  for (int i = 0; i < reps; ++i) un = (un * base).eval();
  Mat ih = kron(Mat::Identity(2, 2), gate_h().mat);
  best.assembled = ih * un * ih;
  best.operator_error = (best.assembled - gate_cnot().mat).norm();
  return best;
}

} // namespace qlectra
