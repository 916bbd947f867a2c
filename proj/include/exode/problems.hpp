#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "exode/comp_blas1.hpp"
#include "exode/dd.hpp"

// The two benchmark initial value problems, each with a binary64 and a
// double-double right-hand side plus an analytic reference solution.

namespace exode {

struct IvpProblem {
  std::string name;
  std::size_t dim = 0;
  double t_start = 0.0;
  double t_end = 0.0;
  std::vector<DoubleDouble> y0;
  std::function<void(double, std::span<const double>, std::span<double>)> rhs_double;
  std::function<void(const DoubleDouble&, std::span<const DoubleDouble>, std::span<DoubleDouble>)>
      rhs_dd;
  // Optional split-layout variant of rhs_dd for callers that keep the
  // value and error parts in separate arrays; same arithmetic, no packing.
  std::function<void(const DoubleDouble&, std::span<const double>, std::span<const double>,
                     std::span<double>, std::span<double>)>
      rhs_dd_split;
  // Reference solution at time t; null when no closed form is known.
  std::function<void(const DoubleDouble&, std::span<DoubleDouble>)> analytic;
};

// y_k' = -k y_k, y(0) = 1, t in [0, 1/4]; solution y_k(t) = exp(-k t).
IvpProblem linear_problem(std::size_t n);

// Two-dimensional resonance problem on [0, 37]:
//   y1' = y2,  y2' = -a y1^2 sin t + 2 a y1 y2 cos t,  y(0) = (1, a),
// with solution y1 = 1/(1 - a sin t), y2 = a cos t / (1 - a sin t)^2.
// Requires 0 < alpha < 1.
IvpProblem resonance_problem(double alpha = 0.99999999);

// max_k |(v_k + e_k) - ref_k| / |ref_k|, numerator evaluated in DD.
// Throws std::invalid_argument on dimension mismatch or a zero reference
// component.
double max_rel_error(const CompVector& approx, std::span<const DoubleDouble> reference);

}  // namespace exode
