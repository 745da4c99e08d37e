// Time-dependent Hamiltonian evolution, adiabatic search with linear and
// Roland-Cerf schedules, the continuous-time search Hamiltonian, problem
// Hamiltonian builders and quantum annealing.
#pragma once

#include <array>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

#include "qlectra/common.hpp"
#include "qlectra/qgate.hpp"
#include "qlectra/qstate.hpp"

namespace qlectra {

struct Hamiltonian {
  long long dim = 0;
  Mat mat;

  Hamiltonian() = default;
  explicit Hamiltonian(Mat m) : dim(m.rows()), mat(std::move(m)) {
    require(mat.rows() == mat.cols(), errc::bad_params, "Hamiltonian must be square");
    require((mat - mat.adjoint()).norm() <= 1e-9 * std::max(1.0, mat.norm()),
            errc::bad_params, "Hamiltonian must be Hermitian");
  }
};

// Interpolation schedule s(t) with s(0) = 0, s(T) = 1, monotone.
class Schedule {
public:
  enum class Kind { linear, roland_cerf, tabulated };

  static Schedule linear(double total_time) {
    Schedule s;
    s.kind_ = Kind::linear;
    s.total_ = total_time;
    return s;
  }

  // Local-adiabatic slowdown ds/dt = eps g^2(s) integrated in closed form;
  // s(t) is recovered by bisection.
  static Schedule roland_cerf(double n_states, double eps) {
    require(n_states >= 2 && eps > 0, errc::bad_params, "need N >= 2 and eps > 0");
    Schedule s;
    s.kind_ = Kind::roland_cerf;
    s.rc_n_ = n_states;
    s.rc_eps_ = eps;
    s.total_ = s.rc_time_of(1.0);
    return s;
  }

  static Schedule tabulated(std::vector<std::pair<double, double>> pts) {
    require(pts.size() >= 2, errc::bad_schedule, "need at least two (t, s) points");
    for (size_t i = 1; i < pts.size(); ++i)
      require(pts[i].first > pts[i - 1].first && pts[i].second >= pts[i - 1].second,
              errc::bad_schedule, "tabulated schedule must be monotone");
    require(std::abs(pts.front().second) < 1e-12 && std::abs(pts.back().second - 1.0) < 1e-12,
            errc::bad_schedule, "schedule must run from s=0 to s=1");
    Schedule s;
    s.kind_ = Kind::tabulated;
    s.table_ = std::move(pts);
    s.total_ = s.table_.back().first;
    return s;
  }

  double total_time() const { return total_; }

  double s_at(double t) const {
    if (t <= 0) return 0;
    if (t >= total_) return 1;
    switch (kind_) {
      case Kind::linear:
        return t / total_;
      case Kind::roland_cerf: {
        double lo = 0, hi = 1;
        while (hi - lo > 1e-12) {
          double mid = (lo + hi) / 2;
          (rc_time_of(mid) < t ? lo : hi) = mid;
        }
        return (lo + hi) / 2;
      }
      case Kind::tabulated: {
        auto it = std::upper_bound(table_.begin(), table_.end(), t,
                                   [](double x, const auto& p) { return x < p.first; });
        auto hi = it == table_.end() ? table_.end() - 1 : it;
        auto lo = hi - 1;
        double w = (t - lo->first) / (hi->first - lo->first);
        return lo->second + w * (hi->second - lo->second);
      }
    }
    return 0;
  }

  double ds_dt(double t) const {
    if (kind_ == Kind::linear) return 1.0 / total_;
    double h = total_ * 1e-7;
    double a = std::max(0.0, t - h), b = std::min(total_, t + h);
    return (s_at(b) - s_at(a)) / (b - a);
  }

  // t(s) for the Roland-Cerf profile
  double rc_time_of(double s) const {
    double root = std::sqrt(rc_n_ - 1.0);
    return rc_n_ / (2.0 * rc_eps_ * root) *
           (std::atan((2.0 * s - 1.0) * root) + std::atan(root));
  }

private:
  Kind kind_ = Kind::linear;
  double total_ = 1;
  double rc_n_ = 0, rc_eps_ = 0;
  std::vector<std::pair<double, double>> table_;
};

inline Schedule roland_cerf_schedule(double n_states, double eps) {
  return Schedule::roland_cerf(n_states, eps);
}

struct TDHamiltonian {
  Hamiltonian h0, h1;
  Schedule schedule = Schedule::linear(1.0);

  Mat at(double t) const {
    double s = schedule.s_at(t);
    return (1.0 - s) * h0.mat + s * h1.mat;
  }
};

// --- propagation -------------------------------------------------------------

struct Trajectory {
  std::vector<double> times;
  std::vector<Ket> states;

  const Ket& final_state() const { return states.back(); }
};

namespace detail {
inline Vec expi_apply(const Mat& h, const Vec& v, double dt) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Vec phases(h.rows());
  for (long long i = 0; i < h.rows(); ++i)
    phases(i) = std::polar(1.0, -es.eigenvalues()(i) * dt);
  return es.eigenvectors() * (phases.asDiagonal() * (es.eigenvectors().adjoint() * v));
}
} // namespace detail

// Midpoint piecewise-constant propagation: each step applies the exact
// exponential of H(t_mid) through its eigendecomposition, so the flow is
// unitary for any dt.
inline Trajectory evolve_td(const TDHamiltonian& td, const Ket& psi0, double dt,
                            int store_stride = 1) {
  require(dt > 0, errc::bad_time_step, "dt must be positive");
  double total = td.schedule.total_time();
  long long steps = std::max<long long>(1, std::llround(total / dt));
  double h = total / static_cast<double>(steps);
  Trajectory traj;
  traj.times.push_back(0);
  traj.states.push_back(psi0);
  Vec v = psi0.amps;
  for (long long k = 0; k < steps; ++k) {
    double t_mid = (static_cast<double>(k) + 0.5) * h;
    v = detail::expi_apply(td.at(t_mid), v, h);
    if ((k + 1) % store_stride == 0 || k + 1 == steps) {
      traj.times.push_back(static_cast<double>(k + 1) * h);
      traj.states.emplace_back(psi0.dims, v);
    }
  }
  return traj;
}

// --- the search instance ------------------------------------------------------

// g(s) = sqrt(1 - 4 (N-1)/N s (1-s)); minimum 1/sqrt(N) at s = 1/2.
inline double grover_gap(double s, double n_states) {
  require(n_states >= 2, errc::bad_params, "need N >= 2");
  require(s >= 0 && s <= 1, errc::bad_params, "s must lie in [0,1]");
  return std::sqrt(1.0 - 4.0 * (n_states - 1.0) / n_states * s * (1.0 - s));
}

inline Hamiltonian grover_h0(int n) {
  long long nn = 1LL << n;
  Mat m = Mat::Identity(nn, nn) -
          Mat::Constant(nn, nn, cxd(1.0 / static_cast<double>(nn), 0));
  return Hamiltonian(std::move(m));
}

inline Hamiltonian grover_h1(int n, long long marked) {
  long long nn = 1LL << n;
  require(marked >= 0 && marked < nn, errc::index_out_of_range, "marked state out of range");
  Mat m = Mat::Identity(nn, nn);
  m(marked, marked) = 0;
  return Hamiltonian(std::move(m));
}

// Interpolated-search run; returns |<m|psi(T)>|^2.
inline double adiabatic_grover(int n, long long marked, const Schedule& schedule,
                               double dt = 0) {
  TDHamiltonian td{grover_h0(n), grover_h1(n, marked), schedule};
  if (dt <= 0) dt = schedule.total_time() / 2000;
  Trajectory traj = evolve_td(td, Ket::uniform(std::vector<int>(n, 2)), dt, 1 << 30);
  return std::norm(traj.final_state().amps(marked));
}

struct ContinuousGroverResult {
  double peak_time = 0;
  double peak_value = 0;
  double gap = 0; // difference of the two lowest eigenvalues
};

// Fixed two-projector search Hamiltonian (|~0><~0| + |w><w|) / 2; the state
// rotates inside span{|~0>, |w>} and first reaches the target after a time
// of order sqrt(N).
inline ContinuousGroverResult continuous_grover(int n, long long marked) {
  long long nn = 1LL << n;
  require(marked >= 0 && marked < nn, errc::index_out_of_range, "marked state out of range");
  Mat h = Mat::Constant(nn, nn, cxd(0.5 / static_cast<double>(nn), 0));
  h(marked, marked) += 0.5;

  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  ContinuousGroverResult out;
  RVec ev = es.eigenvalues();
  out.gap = ev(nn - 1) - ev(nn - 2); // the two projector eigenstates sit on top

  Vec psi0 = Vec::Constant(nn, cxd(1.0 / std::sqrt(static_cast<double>(nn)), 0));
  Vec coeff = es.eigenvectors().adjoint() * psi0;
  auto prob_at = [&](double t) {
    cxd amp = 0;
    for (long long i = 0; i < nn; ++i)
      amp += es.eigenvectors()(marked, i) * coeff(i) * std::polar(1.0, -ev(i) * t);
    return std::norm(amp);
  };

  double horizon = 2.5 * kPi * std::sqrt(static_cast<double>(nn));
  int grid = 4000;
  double dt = horizon / grid;
  double prev = prob_at(0);
  double cur = prob_at(dt);
  for (int k = 2; k <= grid; ++k) {
    double next = prob_at(k * dt);
    if (cur >= prev && cur > next) {
      // parabolic refinement around the bracketed maximum
      double t0 = (k - 1) * dt;
      double denom = prev - 2 * cur + next;
      double shift = denom != 0 ? 0.5 * (prev - next) / denom * dt : 0;
      out.peak_time = t0 + shift;
      out.peak_value = prob_at(out.peak_time);
      return out;
    }
    prev = cur;
    cur = next;
  }
  fail(errc::not_found, "no probability peak inside the scan horizon");
}

// --- Hamiltonian builders -------------------------------------------------------

namespace detail {
inline Mat op_on_qubit(const Mat& op, int qubit, int n) {
  Mat out = Mat::Identity(1, 1);
  for (int i = 0; i < n; ++i)
    out = kron(out, i == qubit ? op : Mat::Identity(2, 2)).eval();
  return out;
}
} // namespace detail

// Driver sum_i (1 - sigma_x^i) / 2 whose ground state is |~0> at energy 0.
inline Hamiltonian build_driver(int n) {
  require(n >= 1, errc::bad_params, "need n >= 1");
  long long nn = 1LL << n;
  Mat h = Mat::Zero(nn, nn);
  Mat sx = gate_x().mat;
  for (int q = 0; q < n; ++q)
    h += (Mat::Identity(nn, nn) - detail::op_on_qubit(sx, q, n)) / 2.0;
  return Hamiltonian(std::move(h));
}

struct ProblemSpec {
  enum class Kind { disagree2, exact_cover, sat3, ising };
  Kind kind = Kind::disagree2;
  int n = 2;
  // clauses hold 1-based literals; negative means negated variable
  std::vector<std::array<int, 3>> clauses;
  std::vector<double> h;                             // ising fields
  std::vector<std::tuple<int, int, double>> j_pairs; // ising couplings, i < j

  static ProblemSpec disagree2() { return ProblemSpec{}; }

  static ProblemSpec exact_cover(int n_vars, std::vector<std::array<int, 3>> cl) {
    ProblemSpec p;
    p.kind = Kind::exact_cover;
    p.n = n_vars;
    p.clauses = std::move(cl);
    p.validate_clauses();
    return p;
  }

  static ProblemSpec sat3(int n_vars, std::vector<std::array<int, 3>> cl) {
    ProblemSpec p;
    p.kind = Kind::sat3;
    p.n = n_vars;
    p.clauses = std::move(cl);
    p.validate_clauses();
    return p;
  }

  static ProblemSpec ising(std::vector<double> fields,
                           std::vector<std::tuple<int, int, double>> couplings) {
    ProblemSpec p;
    p.kind = Kind::ising;
    p.n = static_cast<int>(fields.size());
    p.h = std::move(fields);
    p.j_pairs = std::move(couplings);
    for (auto& [i, j, v] : p.j_pairs) {
      if (i > j) std::swap(i, j);
      require(i >= 0 && j < p.n && i != j, errc::index_out_of_range,
              "coupling index out of range");
    }
    return p;
  }

  void validate_clauses() const {
    for (const auto& c : clauses)
      for (int lit : c)
        require(lit != 0 && std::abs(lit) <= n, errc::index_out_of_range,
                "literal out of range");
  }

  // classical cost of the assignment encoded by the basis index
  double cost(long long idx) const {
    auto bit = [&](int var) { return static_cast<int>((idx >> (n - 1 - var)) & 1); };
    auto lit_val = [&](int lit) {
      int v = bit(std::abs(lit) - 1);
      return lit > 0 ? v : 1 - v;
    };
    switch (kind) {
      case Kind::disagree2:
        return bit(0) == bit(1) ? 1.0 : 0.0;
      case Kind::exact_cover: {
        double total = 0;
        for (const auto& c : clauses) {
          int s = lit_val(c[0]) + lit_val(c[1]) + lit_val(c[2]);
          total += (1.0 - s) * (1.0 - s);
        }
        return total;
      }
      case Kind::sat3: {
        double total = 0;
        for (const auto& c : clauses)
          if (!lit_val(c[0]) && !lit_val(c[1]) && !lit_val(c[2])) total += 1.0;
        return total;
      }
      case Kind::ising: {
        double total = 0;
        auto spin = [&](int var) { return 1.0 - 2.0 * bit(var); };
        for (int i = 0; i < n; ++i) total += h[i] * spin(i);
        for (const auto& [i, j, v] : j_pairs) total += v * spin(i) * spin(j);
        return total;
      }
    }
    return 0;
  }

  std::vector<long long> ground_states() const {
    long long nn = 1LL << n;
    double best = cost(0);
    for (long long i = 1; i < nn; ++i) best = std::min(best, cost(i));
    std::vector<long long> out;
    for (long long i = 0; i < nn; ++i)
      if (cost(i) <= best + 1e-12) out.push_back(i);
    return out;
  }
};

inline Hamiltonian build_problem(const ProblemSpec& spec) {
  long long nn = 1LL << spec.n;
  Mat m = Mat::Zero(nn, nn);
  for (long long i = 0; i < nn; ++i) m(i, i) = spec.cost(i);
  return Hamiltonian(std::move(m));
}

// --- annealing -------------------------------------------------------------------

// H(t) = H_tar + G(t) H_d with G tabulated, decreasing towards zero.
inline Trajectory anneal(const Hamiltonian& h_tar, const Hamiltonian& h_d,
                         const std::vector<std::pair<double, double>>& g_table,
                         const Ket& psi0, double dt, int store_stride = 1 << 30) {
  require(g_table.size() >= 2, errc::bad_schedule, "G table needs at least two points");
  for (size_t i = 1; i < g_table.size(); ++i)
    require(g_table[i].first > g_table[i - 1].first &&
                g_table[i].second <= g_table[i - 1].second + 1e-12,
            errc::bad_schedule, "G(t) must decrease");
  require(dt > 0, errc::bad_time_step, "dt must be positive");

  auto g_at = [&](double t) {
    if (t <= g_table.front().first) return g_table.front().second;
    if (t >= g_table.back().first) return g_table.back().second;
    auto it = std::upper_bound(g_table.begin(), g_table.end(), t,
                               [](double x, const auto& p) { return x < p.first; });
    auto lo = it - 1;
    double w = (t - lo->first) / (it->first - lo->first);
    return lo->second + w * (it->second - lo->second);
  };

  double total = g_table.back().first;
  long long steps = std::max<long long>(1, std::llround(total / dt));
  double h = total / static_cast<double>(steps);
  Trajectory traj;
  traj.times.push_back(0);
  traj.states.push_back(psi0);
  Vec v = psi0.amps;
  for (long long k = 0; k < steps; ++k) {
    double t_mid = (static_cast<double>(k) + 0.5) * h;
    Mat ham = h_tar.mat + g_at(t_mid) * h_d.mat;
    v = detail::expi_apply(ham, v, h);
    if ((k + 1) % store_stride == 0 || k + 1 == steps) {
      traj.times.push_back(static_cast<double>(k + 1) * h);
      traj.states.emplace_back(psi0.dims, v);
    }
  }
  return traj;
}

inline double ground_subspace_population(const ProblemSpec& spec, const Ket& psi) {
  double p = 0;
  for (long long g : spec.ground_states()) p += std::norm(psi.amps(g));
  return p;
}

// max over samples of |<1| dH/dt |0>| / g^2 with instantaneous eigenvectors.
inline double adiabaticity_margin(const TDHamiltonian& td, const std::vector<double>& times) {
  Mat dh_ds = td.h1.mat - td.h0.mat;
  double worst = 0;
  for (double t : times) {
    Eigen::SelfAdjointEigenSolver<Mat> es(td.at(t));
    double g = es.eigenvalues()(1) - es.eigenvalues()(0);
    require(g > 1e-12, errc::degenerate_gap, "gap closed along the path");
    Vec v0 = es.eigenvectors().col(0), v1 = es.eigenvectors().col(1);
    double num = std::abs(v1.dot(dh_ds * v0)) * std::abs(td.schedule.ds_dt(t));
    worst = std::max(worst, num / (g * g));
  }
  return worst;
}

} // namespace qlectra
