#include "exode/comp_blas1.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "exode/eft.hpp"

namespace exode {

namespace {
void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}
}  // namespace

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  require_same_size(x.size(), y.size(), "axpy");
  for (std::size_t k = 0; k < y.size(); ++k) {
    y[k] = std::fma(alpha, x[k], y[k]);
  }
}

void scal(double alpha, std::span<double> x) {
  for (double& xk : x) xk = alpha * xk;
}

void axpy_error(const CompScalar& alpha, const CompVector& x, CompVector& y) {
  require_same_size(x.size(), y.size(), "axpy_error");
  const std::size_t n = y.size();
  for (std::size_t k = 0; k < n; ++k) {
    const FmaTriple t = fma_error(alpha.v, x.v[k], y.v[k]);
    y.v[k] = t.s;
    y.e[k] = (((t.e1 + t.e2) + alpha.v * x.e[k]) + alpha.e * x.v[k]) + y.e[k];
  }
}

void scal_error(const CompScalar& alpha, CompVector& x) {
  const std::size_t n = x.size();
  for (std::size_t k = 0; k < n; ++k) {
    const SumPair w = two_prod(alpha.v, x.v[k]);
    const double w2 = (alpha.v * x.e[k] + alpha.e * (x.v[k] + x.e[k])) + w.e;
    const SumPair r = quick_two_sum(w.s, w2);
    x.v[k] = r.s;
    x.e[k] = r.e;
  }
}

void moller_update(std::span<double> sum, std::span<double> residual, std::span<const double> z) {
  require_same_size(sum.size(), residual.size(), "moller_update");
  require_same_size(sum.size(), z.size(), "moller_update");
  for (std::size_t k = 0; k < sum.size(); ++k) {
    const double s = z[k] + residual[k];
    const SumPair p = quick_two_sum(sum[k], s);
    sum[k] = p.s;
    residual[k] = p.e;
  }
}

double norm_inf(const CompVector& x) {
  double m = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double a = std::abs(x.v[k] + x.e[k]);
    if (std::isnan(a)) return a;  // non-finite propagation
    if (a > m) m = a;
  }
  return m;
}

}  // namespace exode
