#include "exode/problems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "exode/eft.hpp"

namespace exode {

IvpProblem linear_problem(std::size_t n) {
  if (n < 1) throw std::invalid_argument("linear_problem: n must be >= 1");
  IvpProblem p;
  p.name = "linear";
  p.dim = n;
  p.t_start = 0.0;
  p.t_end = 0.25;
  p.y0.assign(n, DoubleDouble(1.0));
  p.rhs_double = [](double, std::span<const double> y, std::span<double> f) {
    for (std::size_t k = 0; k < y.size(); ++k) {
      f[k] = -static_cast<double>(k + 1) * y[k];
    }
  };
  p.rhs_dd = [](const DoubleDouble&, std::span<const DoubleDouble> y,
                std::span<DoubleDouble> f) {
    for (std::size_t k = 0; k < y.size(); ++k) {
      f[k] = dd_mul_d(y[k], -static_cast<double>(k + 1));
    }
  };
  p.rhs_dd_split = [](const DoubleDouble&, std::span<const double> y_hi,
                      std::span<const double> y_lo, std::span<double> f_hi,
                      std::span<double> f_lo) {
    for (std::size_t k = 0; k < y_hi.size(); ++k) {
      const DoubleDouble r = dd_mul_d({y_hi[k], y_lo[k]}, -static_cast<double>(k + 1));
      f_hi[k] = r.hi;
      f_lo[k] = r.lo;
    }
  };
  p.analytic = [](const DoubleDouble& t, std::span<DoubleDouble> out) {
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = dd_exp(dd_mul_d(t, -static_cast<double>(k + 1)));
    }
  };
  return p;
}

IvpProblem resonance_problem(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("resonance_problem: alpha must be in (0, 1)");
  }
  IvpProblem p;
  p.name = "resonance";
  p.dim = 2;
  p.t_start = 0.0;
  p.t_end = 37.0;
  p.y0 = {DoubleDouble(1.0), DoubleDouble(alpha)};
  p.rhs_double = [alpha](double t, std::span<const double> y, std::span<double> f) {
    const double s = std::sin(t);
    const double c = std::cos(t);
    f[0] = y[1];
    f[1] = ((-alpha * y[0]) * y[0]) * s + (((2.0 * alpha) * y[0]) * y[1]) * c;
  };
  const auto rhs_dd_core = [alpha](const DoubleDouble& t, const DoubleDouble& y0,
                                   const DoubleDouble& y1, DoubleDouble& f0, DoubleDouble& f1) {
    DoubleDouble s, c;
    dd_sincos(t, s, c);
    f0 = y1;
    const DoubleDouble t1 = dd_mul(dd_mul(dd_mul_d(y0, -alpha), y0), s);
    const DoubleDouble t2 = dd_mul(dd_mul(dd_mul_d(y0, 2.0 * alpha), y1), c);
    f1 = dd_add(t1, t2);
  };
  p.rhs_dd = [rhs_dd_core](const DoubleDouble& t, std::span<const DoubleDouble> y,
                           std::span<DoubleDouble> f) {
    rhs_dd_core(t, y[0], y[1], f[0], f[1]);
  };
  p.rhs_dd_split = [rhs_dd_core](const DoubleDouble& t, std::span<const double> y_hi,
                                 std::span<const double> y_lo, std::span<double> f_hi,
                                 std::span<double> f_lo) {
    DoubleDouble f0, f1;
    rhs_dd_core(t, {y_hi[0], y_lo[0]}, {y_hi[1], y_lo[1]}, f0, f1);
    f_hi[0] = f0.hi;
    f_lo[0] = f0.lo;
    f_hi[1] = f1.hi;
    f_lo[1] = f1.lo;
  };
  p.analytic = [alpha](const DoubleDouble& t, std::span<DoubleDouble> out) {
    DoubleDouble s, c;
    dd_sincos(t, s, c);
    const DoubleDouble den = dd_sub_accurate(DoubleDouble(1.0), dd_mul_d(s, alpha));
    out[0] = dd_div(DoubleDouble(1.0), den);
    out[1] = dd_div(dd_mul_d(c, alpha), dd_mul(den, den));
  };
  return p;
}

double max_rel_error(const CompVector& approx, std::span<const DoubleDouble> reference) {
  if (approx.size() != reference.size()) {
    throw std::invalid_argument("max_rel_error: dimension mismatch");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < reference.size(); ++k) {
    const DoubleDouble& ref = reference[k];
    if (ref.hi == 0.0 && ref.lo == 0.0) {
      throw std::invalid_argument("max_rel_error: zero reference component");
    }
    const SumPair norm = two_sum(approx.v[k], approx.e[k]);
    const DoubleDouble diff = dd_sub_accurate({norm.s, norm.e}, ref);
    const double rel = dd_div(dd_abs(diff), dd_abs(ref)).to_double();
    worst = std::max(worst, rel);
  }
  return worst;
}

}  // namespace exode
