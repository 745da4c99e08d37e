// Gate matrices, circuits, gate application and controlled-gate construction.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qlectra/common.hpp"
#include "qlectra/qstate.hpp"

namespace qlectra {

struct GateMatrix {
  long long dim = 0;
  Mat mat;
  std::string name;

  GateMatrix() = default;
  GateMatrix(Mat m, std::string n = "") : dim(m.rows()), mat(std::move(m)), name(std::move(n)) {
    require(mat.rows() == mat.cols(), errc::bad_params, "gate matrix must be square");
  }

  GateMatrix adjoint() const { return GateMatrix(mat.adjoint(), name.empty() ? "" : name + "^+"); }
};

inline bool is_unitary(const Mat& u, double tol = kHermTol) {
  return (u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).norm() <= tol * std::sqrt(double(u.rows()));
}

inline GateMatrix unitary_gate(Mat m, std::string name = "") {
  GateMatrix g(std::move(m), std::move(name));
  require(is_unitary(g.mat), errc::bad_params, "gate is not unitary: " + g.name);
  return g;
}

// --- the standard constructors ---------------------------------------------

inline GateMatrix gate_x() { Mat m(2, 2); m << 0, 1, 1, 0; return GateMatrix(m, "X"); }
inline GateMatrix gate_y() { Mat m(2, 2); m << 0, cxd(0, -1), cxd(0, 1), 0; return GateMatrix(m, "Y"); }
inline GateMatrix gate_z() { Mat m(2, 2); m << 1, 0, 0, -1; return GateMatrix(m, "Z"); }

inline GateMatrix gate_h() {
  double s = 1.0 / std::sqrt(2.0);
  Mat m(2, 2);
  m << s, s, s, -s;
  return GateMatrix(m, "H");
}

// phase rotator diag(1, e^{i phi})
inline GateMatrix gate_phase(double phi) {
  Mat m = Mat::Identity(2, 2);
  m(1, 1) = std::polar(1.0, phi);
  return GateMatrix(m, "L_phi");
}

inline GateMatrix gate_cnot() {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  return GateMatrix(m, "CNOT");
}

inline GateMatrix gate_csign() {
  Mat m = Mat::Identity(4, 4);
  m(3, 3) = -1;
  return GateMatrix(m, "CSign");
}

inline GateMatrix gate_toffoli() {
  Mat m = Mat::Identity(8, 8);
  m(6, 6) = m(7, 7) = 0;
  m(6, 7) = m(7, 6) = 1;
  return GateMatrix(m, "Toffoli");
}

// two-qubit controlled phase diag(1,1,1, e^{i pi / 2^{k-j}}), k > j
inline GateMatrix gate_u_kj(int k, int j) {
  require(k > j, errc::bad_params, "U_{k,j} requires k > j");
  Mat m = Mat::Identity(4, 4);
  m(3, 3) = std::polar(1.0, kPi / std::pow(2.0, k - j));
  return GateMatrix(m, "U_" + std::to_string(k) + "," + std::to_string(j));
}

// --- circuits ----------------------------------------------------------------

struct Circuit {
  struct Step {
    GateMatrix gate;
    std::vector<int> targets;
    std::string label;
  };

  std::vector<int> dims;
  std::vector<Step> steps;

  explicit Circuit(std::vector<int> d) : dims(std::move(d)) { product_dim(dims); }

  Circuit& add(GateMatrix g, std::vector<int> targets, std::string label = "") {
    long long want = 1;
    for (int t : targets) {
      require(t >= 0 && t < static_cast<int>(dims.size()), errc::index_out_of_range,
              "target out of range");
      want *= dims[t];
    }
    std::vector<int> sorted = targets;
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
            errc::target_collision, "duplicate target subsystem");
    require(want == g.dim, errc::dimension_mismatch,
            "gate dimension does not match its targets");
    if (label.empty()) label = g.name;
    steps.push_back({std::move(g), std::move(targets), std::move(label)});
    return *this;
  }

  size_t size() const { return steps.size(); }
};

// Applies a gate to selected subsystems of a state. Identity elsewhere.
inline Ket apply(const Ket& psi, const GateMatrix& g, const std::vector<int>& targets) {
  long long want = 1;
  for (int t : targets) {
    require(t >= 0 && t < static_cast<int>(psi.dims.size()), errc::index_out_of_range,
            "target out of range");
    want *= psi.dims[t];
  }
  {
    std::vector<int> sorted = targets;
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
            errc::target_collision, "duplicate target subsystem");
  }
  require(want == g.dim, errc::dimension_mismatch, "gate dimension does not match targets");

  auto strides = strides_of(psi.dims);
  // strides of the target composite index (targets[0] most significant)
  std::vector<long long> tstr(targets.size(), 1);
  for (int i = static_cast<int>(targets.size()) - 2; i >= 0; --i)
    tstr[i] = tstr[i + 1] * psi.dims[targets[i + 1]];

  // offsets of every non-target configuration
  std::vector<int> rest;
  for (int i = 0; i < static_cast<int>(psi.dims.size()); ++i)
    if (std::find(targets.begin(), targets.end(), i) == targets.end()) rest.push_back(i);
  long long n_rest = 1;
  for (int i : rest) n_rest *= psi.dims[i];

  Vec out(psi.dim());
  Vec local(g.dim);
  for (long long e = 0; e < n_rest; ++e) {
    long long base = 0, ee = e;
    for (int i = static_cast<int>(rest.size()) - 1; i >= 0; --i) {
      base += (ee % psi.dims[rest[i]]) * strides[rest[i]];
      ee /= psi.dims[rest[i]];
    }
    for (long long t = 0; t < g.dim; ++t) {
      long long idx = base, tt = t;
      for (int i = static_cast<int>(targets.size()) - 1; i >= 0; --i) {
        idx += (tt % psi.dims[targets[i]]) * strides[targets[i]];
        tt /= psi.dims[targets[i]];
      }
      local(t) = psi.amps(idx);
    }
    local = (g.mat * local).eval();
    for (long long t = 0; t < g.dim; ++t) {
      long long idx = base, tt = t;
      for (int i = static_cast<int>(targets.size()) - 1; i >= 0; --i) {
        idx += (tt % psi.dims[targets[i]]) * strides[targets[i]];
        tt /= psi.dims[targets[i]];
      }
      out(idx) = local(t);
    }
  }
  return Ket(psi.dims, std::move(out));
}

inline Ket run(const Circuit& c, const Ket& input) {
  require(input.dims == c.dims, errc::dimension_mismatch, "circuit / input register mismatch");
  Ket psi = input;
  for (const auto& s : c.steps) psi = apply(psi, s.gate, s.targets);
  return psi;
}

inline GateMatrix unitary_of(const Circuit& c) {
  long long n = product_dim(c.dims);
  Mat u(n, n);
  for (long long col = 0; col < n; ++col) {
    Ket e = Ket::basis(c.dims, col);
    u.col(col) = run(c, e).amps;
  }
  return GateMatrix(std::move(u), "circuit");
}

// --- roots and controlled gates ----------------------------------------------

// Principal square root of a unitary via its spectral decomposition;
// eigenphases are halved into (-pi/2, pi/2].
inline GateMatrix gate_root(const GateMatrix& u) {
  require(is_unitary(u.mat), errc::bad_params, "gate_root requires a unitary input");
  Eigen::ComplexEigenSolver<Mat> es(u.mat);
  Mat v = es.eigenvectors();
  Vec lam = es.eigenvalues();
  Mat root = Mat::Zero(u.dim, u.dim);
  for (long long i = 0; i < u.dim; ++i) {
    double phase = std::arg(lam(i)); // in (-pi, pi]
    root += std::polar(1.0, phase / 2.0) * (v.col(i) * v.col(i).adjoint());
  }
  // eigenvectors of a normal matrix are orthogonal but the solver does not
  // normalize degeneracies perfectly; re-unitarize with a polar projection
  Eigen::JacobiSVD<Mat> svd(root, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat fixed = svd.matrixU() * svd.matrixV().adjoint();
  return GateMatrix(fixed, "sqrt(" + u.name + ")");
}

inline GateMatrix controlled_1(const GateMatrix& u) {
  Mat m = Mat::Identity(2 * u.dim, 2 * u.dim);
  m.block(u.dim, u.dim, u.dim, u.dim) = u.mat;
  return GateMatrix(m, "c-" + u.name);
}

// Lambda_k U as a circuit. k = 1 wraps the controlled block directly; k = 2
// uses the CNOT + controlled-V decomposition with V^2 = U.
inline Circuit controlled(const GateMatrix& u, int k) {
  require(is_unitary(u.mat), errc::bad_params, "controlled() requires a unitary");
  require(k == 1 || k == 2, errc::unsupported_control_count,
          "only 1 and 2 control qubits are supported");
  int d = static_cast<int>(u.dim);
  if (k == 1) {
    Circuit c({2, d});
    c.add(controlled_1(u), {0, 1});
    return c;
  }
  GateMatrix v = gate_root(u);
  Circuit c({2, 2, d});
  c.add(controlled_1(v), {1, 2}, "c2-V");
  c.add(gate_cnot(), {0, 1});
  c.add(controlled_1(v.adjoint()), {1, 2}, "c2-V^+");
  c.add(gate_cnot(), {0, 1});
  c.add(controlled_1(v), {0, 2}, "c1-V");
  return c;
}

// |x, a> -> |U^a x, a>: the conditional power operator on target (x) plus an
// n_ctrl-qubit counter register, assembled from conditioned U^(2^j) factors.
inline GateMatrix u_seq(const GateMatrix& u, int n_ctrl) {
  require(is_unitary(u.mat), errc::bad_params, "u_seq requires a unitary");
  long long d = u.dim;
  long long nc = 1LL << n_ctrl;
  Mat total = Mat::Identity(d * nc, d * nc);
  Mat power = u.mat; // U^(2^j) for the counter qubit of weight 2^j
  for (int j = 0; j < n_ctrl; ++j) {
    Mat cond = Mat::Zero(d * nc, d * nc);
    for (long long a = 0; a < nc; ++a) {
      const bool on = (a >> j) & 1;
      for (long long r = 0; r < d; ++r)
        for (long long c = 0; c < d; ++c) {
          cxd val = on ? power(r, c) : (r == c ? cxd(1, 0) : cxd(0, 0));
          if (val != cxd(0, 0)) cond(r * nc + a, c * nc + a) = val;
        }
    }
    total = cond * total;
    if (j + 1 < n_ctrl) power = (power * power).eval();
  }
  return GateMatrix(std::move(total), "U_seq");
}

} // namespace qlectra
