#pragma once

#include <cmath>

#include "exode/eft.hpp"

// Minimal double-double kernel: an unevaluated pair hi + lo carrying a
// ~106-bit significand.  Addition defaults to the sloppy flavor (the cheap
// variant whose error bound holds away from catastrophic cancellation of
// the hi parts); the accurate flavor is used internally where cancellation
// matters.  Division by zero propagates infinities rather than trapping.

namespace exode {

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double h) : hi(h), lo(0.0) {}  // NOLINT(google-explicit-constructor)
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
};

// Renormalize so that |lo| <= 1/2 ulp(hi); requires |hi| >= |lo| or hi == 0.
inline DoubleDouble dd_normalize(double hi, double lo) {
  const SumPair p = quick_two_sum(hi, lo);
  return {p.s, p.e};
}

inline DoubleDouble dd_neg(const DoubleDouble& a) { return {-a.hi, -a.lo}; }

// Sloppy addition (11 flops); error stays within ~4*2^-106 of the result
// unless the hi parts cancel.
inline DoubleDouble dd_add(const DoubleDouble& a, const DoubleDouble& b) {
  const SumPair p = two_sum(a.hi, b.hi);
  const double w = p.e + (a.lo + b.lo);
  const SumPair r = quick_two_sum(p.s, w);
  return {r.s, r.e};
}

// Accurate (IEEE-style) addition; safe under cancellation.
inline DoubleDouble dd_add_accurate(const DoubleDouble& a, const DoubleDouble& b) {
  const SumPair s = two_sum(a.hi, b.hi);
  const SumPair t = two_sum(a.lo, b.lo);
  SumPair r = quick_two_sum(s.s, s.e + t.s);
  r = quick_two_sum(r.s, r.e + t.e);
  return {r.s, r.e};
}

inline DoubleDouble dd_sub(const DoubleDouble& a, const DoubleDouble& b) {
  return dd_add(a, dd_neg(b));
}

inline DoubleDouble dd_sub_accurate(const DoubleDouble& a, const DoubleDouble& b) {
  return dd_add_accurate(a, dd_neg(b));
}

inline DoubleDouble dd_mul(const DoubleDouble& a, const DoubleDouble& b) {
  const SumPair p = two_prod(a.hi, b.hi);
  const double w = p.e + (a.hi * b.lo + a.lo * b.hi);
  const SumPair r = quick_two_sum(p.s, w);
  return {r.s, r.e};
}

inline DoubleDouble dd_mul_d(const DoubleDouble& a, double b) {
  const SumPair p = two_prod(a.hi, b);
  const SumPair r = quick_two_sum(p.s, p.e + a.lo * b);
  return {r.s, r.e};
}

inline DoubleDouble dd_add_d(const DoubleDouble& a, double b) {
  const SumPair p = two_sum(a.hi, b);
  const SumPair r = quick_two_sum(p.s, p.e + a.lo);
  return {r.s, r.e};
}

// Long division with two correction terms; relative error ~4*2^-106.
// b == 0 yields the usual infinity/NaN error values.
inline DoubleDouble dd_div(const DoubleDouble& a, const DoubleDouble& b) {
  const double q1 = a.hi / b.hi;
  DoubleDouble r = dd_sub_accurate(a, dd_mul_d(b, q1));
  const double q2 = (r.hi + r.lo) / b.hi;
  r = dd_sub_accurate(r, dd_mul_d(b, q2));
  const double q3 = (r.hi + r.lo) / b.hi;
  const SumPair q = quick_two_sum(q1, q2);
  return dd_add_accurate({q.s, q.e}, DoubleDouble(q3));
}

inline DoubleDouble dd_abs(const DoubleDouble& a) { return a.hi < 0.0 ? dd_neg(a) : a; }

inline bool dd_eq(const DoubleDouble& a, const DoubleDouble& b) {
  return a.hi == b.hi && a.lo == b.lo;
}
inline bool dd_lt(const DoubleDouble& a, const DoubleDouble& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}

inline DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) { return dd_add(a, b); }
inline DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return dd_sub(a, b); }
inline DoubleDouble operator-(const DoubleDouble& a) { return dd_neg(a); }
inline DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) { return dd_mul(a, b); }
inline DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) { return dd_div(a, b); }

// Transcendentals for the reference solutions and DD-precision right-hand
// sides.  Relative error stays within 8 DD ulps (~2^-103) of the true
// value.  Trig arguments are limited to |t| <= 2^40 (range of the exact
// reduction); exp arguments to |t.hi| <= 709.  Out-of-range arguments
// throw std::domain_error.
DoubleDouble dd_sin(const DoubleDouble& t);
DoubleDouble dd_cos(const DoubleDouble& t);
void dd_sincos(const DoubleDouble& t, DoubleDouble& sin_out, DoubleDouble& cos_out);
DoubleDouble dd_exp(const DoubleDouble& t);

}  // namespace exode
