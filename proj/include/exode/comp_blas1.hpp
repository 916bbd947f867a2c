#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Dense stride-1 vector kernels: plain AXPY/SCAL, their error-evaluating
// extensions built on fma_error/two_prod, and the Moller compensated
// update.  All kernels are pure elementwise maps; association order inside
// the accumulated error terms is fixed left-to-right so results are
// bit-reproducible.

namespace exode {

// Scalar carried as principal value plus accumulated error; semantic value
// is v + e.
struct CompScalar {
  double v = 0.0;
  double e = 0.0;
};

// Vector of principal values paired with accumulated per-component errors.
// Unlike a double-double, no normalization is imposed between v and e.
struct CompVector {
  std::vector<double> v;
  std::vector<double> e;

  CompVector() = default;
  explicit CompVector(std::size_t n) : v(n, 0.0), e(n, 0.0) {}

  std::size_t size() const { return v.size(); }
};

// y_k := fl(alpha * x_k + y_k), single rounding (FMA).
void axpy(double alpha, std::span<const double> x, std::span<double> y);

// x_k := fl(alpha * x_k).
void scal(double alpha, std::span<double> x);

// AXPYerror: y_k updated through fma_error, with the residual chain
//   e_y := e1 + e2 + alpha*e_x + e_alpha*x + e_y
// evaluated strictly left to right.
void axpy_error(const CompScalar& alpha, const CompVector& x, CompVector& y);

// SCALerror; output components are normalized (|e_k| <= 1/2 ulp(v_k)).
void scal_error(const CompScalar& alpha, CompVector& x);

// Moller compensated update: per component s := z + residual, then
// (sum, residual) := QuickTwoSum(sum, s).  The recovered error is exact
// only while |sum_k| >= |s_k|.
void moller_update(std::span<double> sum, std::span<double> residual, std::span<const double> z);

// max_k |v_k + e_k|
double norm_inf(const CompVector& x);

}  // namespace exode
