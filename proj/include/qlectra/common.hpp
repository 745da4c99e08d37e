// Shared aliases, tolerances and the error type used across the library.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>
#include <cstdint>
#include <cmath>

#include <Eigen/Dense>

namespace qlectra {

using cxd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// Default numerical tolerances (see the per-operation contracts).
inline constexpr double kNormTol = 1e-6;    // admissible deviation of ||psi|| from 1
inline constexpr double kHermTol = 1e-9;    // Hermiticity / trace deviation
inline constexpr double kEigClampTol = 1e-9; // negative eigenvalues clamped below this

enum class errc {
  not_normalized,
  empty_partition,
  dimension_mismatch,
  invalid_density,
  bad_params,
  target_collision,
  unsupported_control_count,
  no_solutions,
  exhausted,
  bad_cutoff,
  not_coprime,
  factor_not_found,
  bad_time_step,
  degenerate_gap,
  bad_schedule,
  index_out_of_range,
  cutoff_too_small,
  dimension_overflow,
  not_found,
  bad_ratio,
  bad_density,
  all_zero,
  all_truncated,
  not_equilibrium,
  too_large,
  unknown_experiment,
  schema_violation,
  io_failure,
};

class error : public std::runtime_error {
public:
  error(errc c, const std::string& what) : std::runtime_error(what), code_(c) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

inline void require(bool ok, errc c, const std::string& what) {
  if (!ok) fail(c, what);
}

// Mixed-radix register indexing. Subsystem 0 is the most significant digit,
// matching the |a0 a1 ... a_{m-1}> basis ordering used everywhere.
inline long long product_dim(const std::vector<int>& dims) {
  long long p = 1;
  for (int d : dims) {
    require(d >= 1, errc::bad_params, "subsystem dimension must be positive");
    p *= d;
  }
  return p;
}

inline std::vector<long long> strides_of(const std::vector<int>& dims) {
  std::vector<long long> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
    s[i] = s[i + 1] * dims[i + 1];
  return s;
}

inline void decompose_index(long long idx, const std::vector<int>& dims,
                            std::vector<int>& digits) {
  digits.resize(dims.size());
  for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
    digits[i] = static_cast<int>(idx % dims[i]);
    idx /= dims[i];
  }
}

inline long long compose_index(const std::vector<int>& digits,
                               const std::vector<long long>& strides) {
  long long idx = 0;
  for (size_t i = 0; i < digits.size(); ++i) idx += digits[i] * strides[i];
  return idx;
}

inline bool approx(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline double frobenius_distance(const Mat& a, const Mat& b) { return (a - b).norm(); }

} // namespace qlectra
