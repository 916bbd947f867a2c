#pragma once

#include <cmath>

// Scalar error-free transformations.  Each function returns the rounded
// result of an IEEE754 binary64 operation together with the exact residual,
// assuming round-to-nearest-even and no intermediate overflow.  If a*b
// over- or underflows, two_prod loses exactness; callers can detect the
// overflow case from non-finite outputs.

namespace exode {

// Rounded result s plus exact residual e: s + e equals the real-number
// result of the transformed operation.
struct SumPair {
  double s;
  double e;
};

// FMA result with a two-term error expansion: s + e1 + e2 = a*x + y,
// |e1 + e2| <= 1/2 ulp(s), |e2| <= 1/2 ulp(e1).
struct FmaTriple {
  double s;
  double e1;
  double e2;
};

// Knuth TwoSum; no assumption on operand magnitudes.
inline SumPair two_sum(double a, double b) {
  const double s = a + b;
  const double v = s - a;
  const double e = (a - (s - v)) + (b - v);
  return {s, e};
}

// Dekker's fast variant.  Exact only when |a| >= |b| or a == 0; a silent
// precondition violation yields an inexact residual.
inline SumPair quick_two_sum(double a, double b) {
  const double s = a + b;
  const double e = b - (s - a);
  return {s, e};
}

// Product with exact residual via fused multiply-add.
inline SumPair two_prod(double a, double b) {
  const double s = a * b;
  const double e = std::fma(a, b, -s);
  return {s, e};
}

// Boldo-Muller FMAerror: s = fma(a, x, y) and s + e1 + e2 = a*x + y.
inline FmaTriple fma_error(double a, double x, double y) {
  const double s = std::fma(a, x, y);
  const SumPair u = two_prod(a, x);
  const SumPair alpha = two_sum(y, u.e);
  const SumPair beta = two_sum(u.s, alpha.s);
  const double gamma = (beta.s - s) + beta.e;
  const SumPair r = quick_two_sum(gamma, alpha.e);
  return {s, r.s, r.e};
}

}  // namespace exode
