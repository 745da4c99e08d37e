// Dense state vectors and density matrices over mixed-dimension registers:
// tensor products, Born-rule measurement, partial measurement, partial trace,
// Schmidt decomposition, von Neumann entropy, mutual information, purification.
//
// A register is a list of subsystem dimensions. Basis states are ordered
// lexicographically with subsystem 0 as the most significant digit, so a
// two-qubit register enumerates |00>, |01>, |10>, |11>.
#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "qlectra/common.hpp"
#include "qlectra/rng.hpp"

namespace qlectra {

struct Ket {
  std::vector<int> dims;
  Vec amps;

  Ket() = default;

  Ket(std::vector<int> d, Vec a) : dims(std::move(d)), amps(std::move(a)) {
    require(amps.size() == product_dim(dims), errc::dimension_mismatch,
            "amplitude count does not match register dimension");
  }

  // |index> on the given register
  static Ket basis(std::vector<int> d, long long index) {
    long long n = product_dim(d);
    require(index >= 0 && index < n, errc::index_out_of_range, "basis index out of range");
    Vec a = Vec::Zero(n);
    a(index) = 1.0;
    return Ket(std::move(d), std::move(a));
  }

  static Ket uniform(std::vector<int> d) {
    long long n = product_dim(d);
    Vec a = Vec::Constant(n, cxd(1.0 / std::sqrt(static_cast<double>(n)), 0));
    return Ket(std::move(d), std::move(a));
  }

  long long dim() const { return amps.size(); }
  double norm() const { return amps.norm(); }

  Ket normalized() const {
    double n = norm();
    require(n > 0, errc::not_normalized, "cannot normalize the zero vector");
    return Ket(dims, amps / n);
  }
};

// EPR pair (|00> + |11>)/sqrt(2)
inline Ket epr_pair() {
  Vec a = Vec::Zero(4);
  a(0) = a(3) = 1.0 / std::sqrt(2.0);
  return Ket({2, 2}, std::move(a));
}

inline void check_normalized(const Ket& psi, double tol = kNormTol) {
  require(std::abs(psi.norm() - 1.0) <= tol, errc::not_normalized,
          "state is not normalized");
}

struct DensityOp {
  std::vector<int> dims;
  Mat mat;

  DensityOp() = default;
  DensityOp(std::vector<int> d, Mat m) : dims(std::move(d)), mat(std::move(m)) {
    long long n = product_dim(dims);
    require(mat.rows() == n && mat.cols() == n, errc::dimension_mismatch,
            "density matrix side does not match register dimension");
  }

  long long dim() const { return mat.rows(); }
  double trace_real() const { return mat.trace().real(); }
};

// Proper nonempty subset of subsystem indices, kept sorted.
struct Bipartition {
  std::vector<int> keep;

  explicit Bipartition(std::vector<int> k) : keep(std::move(k)) {
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    require(!keep.empty(), errc::empty_partition, "bipartition keeps no subsystem");
  }

  void check_against(const std::vector<int>& dims) const {
    require(!keep.empty(), errc::empty_partition, "bipartition keeps no subsystem");
    require(keep.back() < static_cast<int>(dims.size()) && keep.front() >= 0,
            errc::index_out_of_range, "bipartition index out of range");
    require(keep.size() < dims.size(), errc::empty_partition,
            "bipartition must be a proper subset");
  }

  std::vector<int> complement(size_t n_subsys) const {
    std::vector<int> rest;
    size_t j = 0;
    for (int i = 0; i < static_cast<int>(n_subsys); ++i) {
      if (j < keep.size() && keep[j] == i) { ++j; continue; }
      rest.push_back(i);
    }
    return rest;
  }
};

struct SchmidtForm {
  RVec coeffs;  // non-negative, descending
  Mat basis_a;  // orthonormal columns on the kept side
  Mat basis_b;  // orthonormal columns on the complement side
};

// --- elementary algebra ----------------------------------------------------

inline Ket tensor(const Ket& a, const Ket& b) {
  std::vector<int> dims = a.dims;
  dims.insert(dims.end(), b.dims.begin(), b.dims.end());
  Vec out(a.dim() * b.dim());
  for (long long j = 0; j < a.dim(); ++j)
    out.segment(j * b.dim(), b.dim()) = a.amps(j) * b.amps;
  return Ket(std::move(dims), std::move(out));
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long long r = 0; r < a.rows(); ++r)
    for (long long c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

inline RVec born_distribution(const Ket& psi) {
  check_normalized(psi);
  return psi.amps.cwiseAbs2();
}

inline std::pair<long long, Ket> measure(const Ket& psi, rng::Stream& rs) {
  RVec p = born_distribution(psi);
  std::vector<double> w(p.data(), p.data() + p.size());
  long long idx = rs.discrete(w);
  return {idx, Ket::basis(psi.dims, idx)};
}

inline DensityOp density_of(const Ket& psi) {
  return DensityOp(psi.dims, psi.amps * psi.amps.adjoint());
}

// Gathers the amplitude vector into a (kept x complement) matrix; the row
// index runs over the kept subsystems in ascending order.
inline Mat reshape_amplitudes(const Ket& psi, const Bipartition& part) {
  part.check_against(psi.dims);
  std::vector<int> rest = part.complement(psi.dims.size());
  long long da = 1, db = 1;
  for (int i : part.keep) da *= psi.dims[i];
  for (int i : rest) db *= psi.dims[i];
  Mat m(da, db);
  std::vector<int> digits;
  auto strides = strides_of(psi.dims);
  for (long long idx = 0; idx < psi.dim(); ++idx) {
    decompose_index(idx, psi.dims, digits);
    long long r = 0, c = 0;
    for (int i : part.keep) r = r * psi.dims[i] + digits[i];
    for (int i : rest) c = c * psi.dims[i] + digits[i];
    m(r, c) = psi.amps(idx);
  }
  return m;
}

inline std::pair<long long, Ket> partial_measure(const Ket& psi, const Bipartition& part,
                                                 rng::Stream& rs) {
  check_normalized(psi);
  Mat m = reshape_amplitudes(psi, part);
  std::vector<double> w(m.rows());
  for (long long r = 0; r < m.rows(); ++r) w[r] = m.row(r).squaredNorm();
  long long outcome = rs.discrete(w);
  Vec residual = m.row(outcome).transpose();
  double nrm = residual.norm();
  require(nrm > 0, errc::no_solutions, "sampled outcome has zero weight");
  std::vector<int> rest_dims;
  for (int i : part.complement(psi.dims.size())) rest_dims.push_back(psi.dims[i]);
  return {outcome, Ket(std::move(rest_dims), residual / nrm)};
}

inline DensityOp partial_trace(const DensityOp& rho, const Bipartition& part) {
  part.check_against(rho.dims);
  std::vector<int> rest = part.complement(rho.dims.size());
  long long da = 1, db = 1;
  std::vector<int> kept_dims;
  for (int i : part.keep) { da *= rho.dims[i]; kept_dims.push_back(rho.dims[i]); }
  for (int i : rest) db *= rho.dims[i];

  auto strides = strides_of(rho.dims);
  Mat out = Mat::Zero(da, da);
  std::vector<int> dr(rho.dims.size(), 0), dc(rho.dims.size(), 0);
  // enumerate (kept row, kept col, shared environment digit)
  std::vector<int> kd, cd, ed;
  for (long long r = 0; r < da; ++r) {
    // digits of r over kept dims
    long long rr = r;
    std::vector<int> rdig(part.keep.size());
    for (int i = static_cast<int>(part.keep.size()) - 1; i >= 0; --i) {
      rdig[i] = static_cast<int>(rr % rho.dims[part.keep[i]]);
      rr /= rho.dims[part.keep[i]];
    }
    for (long long c = 0; c < da; ++c) {
      long long cc = c;
      std::vector<int> cdig(part.keep.size());
      for (int i = static_cast<int>(part.keep.size()) - 1; i >= 0; --i) {
        cdig[i] = static_cast<int>(cc % rho.dims[part.keep[i]]);
        cc /= rho.dims[part.keep[i]];
      }
      cxd sum = 0;
      for (long long e = 0; e < db; ++e) {
        long long ee = e;
        for (size_t i = 0; i < rho.dims.size(); ++i) dr[i] = dc[i] = 0;
        for (int i = static_cast<int>(rest.size()) - 1; i >= 0; --i) {
          int dig = static_cast<int>(ee % rho.dims[rest[i]]);
          ee /= rho.dims[rest[i]];
          dr[rest[i]] = dig;
          dc[rest[i]] = dig;
        }
        for (size_t i = 0; i < part.keep.size(); ++i) {
          dr[part.keep[i]] = rdig[i];
          dc[part.keep[i]] = cdig[i];
        }
        sum += rho.mat(compose_index(dr, strides), compose_index(dc, strides));
      }
      out(r, c) = sum;
    }
  }
  return DensityOp(std::move(kept_dims), std::move(out));
}

inline SchmidtForm schmidt(const Ket& psi, const Bipartition& part) {
  check_normalized(psi);
  Mat m = reshape_amplitudes(psi, part);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtForm out;
  out.coeffs = svd.singularValues();
  out.basis_a = svd.matrixU();
  out.basis_b = svd.matrixV().conjugate();
  return out;
}

// --- entropy and friends ---------------------------------------------------

inline void check_density(const DensityOp& rho, double tol = kHermTol) {
  require((rho.mat - rho.mat.adjoint()).norm() <= tol * std::max<double>(1.0, rho.mat.norm()),
          errc::invalid_density, "density matrix is not Hermitian");
  require(std::abs(rho.mat.trace().real() - 1.0) <= 1e-6 &&
              std::abs(rho.mat.trace().imag()) <= 1e-6,
          errc::invalid_density, "density matrix trace is not 1");
}

inline RVec density_eigenvalues(const DensityOp& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es((rho.mat + rho.mat.adjoint()) / 2.0);
  return es.eigenvalues();
}

// von Neumann entropy, natural log; 0*ln 0 := 0.
inline double entropy(const DensityOp& rho) {
  check_density(rho);
  RVec ev = density_eigenvalues(rho);
  double s = 0;
  for (long long i = 0; i < ev.size(); ++i) {
    double p = ev(i);
    if (p < -kEigClampTol)
      fail(errc::invalid_density, "density matrix has a negative eigenvalue");
    if (p > 0) s -= p * std::log(p);
  }
  return s;
}

inline double mutual_information(const DensityOp& rho_ab, const Bipartition& part) {
  check_density(rho_ab);
  DensityOp rho_a = partial_trace(rho_ab, part);
  Bipartition rest(part.complement(rho_ab.dims.size()));
  DensityOp rho_b = partial_trace(rho_ab, rest);
  return entropy(rho_a) + entropy(rho_b) - entropy(rho_ab);
}

// Purification on a doubled register: sqrt of the spectral weights on two
// copies of the eigenbasis.
inline Ket purify(const DensityOp& rho) {
  check_density(rho);
  Eigen::SelfAdjointEigenSolver<Mat> es((rho.mat + rho.mat.adjoint()) / 2.0);
  RVec ev = es.eigenvalues();
  long long n = rho.dim();
  Vec out = Vec::Zero(n * n);
  for (long long i = 0; i < n; ++i) {
    double p = ev(i);
    if (p < -kEigClampTol)
      fail(errc::invalid_density, "density matrix has a negative eigenvalue");
    if (p <= 0) continue;
    Vec phi = es.eigenvectors().col(i);
    double a = std::sqrt(p);
    for (long long r = 0; r < n; ++r)
      if (phi(r) != cxd(0, 0)) out.segment(r * n, n) += a * phi(r) * phi;
  }
  std::vector<int> dims = rho.dims;
  dims.insert(dims.end(), rho.dims.begin(), rho.dims.end());
  return Ket(std::move(dims), std::move(out));
}

} // namespace qlectra
