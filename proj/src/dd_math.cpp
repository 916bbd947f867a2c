#include "exode/dd.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace exode {

namespace {

// pi/2 split into successive binary64 roundings; k * (c0+c1+c2+c3) is
// evaluated with exact products for |k| <= 2^41, leaving the reduction
// residual far below the DD ulp of the reduced argument.
constexpr double kPiHalf0 = 0x1.921fb54442d18p+0;
constexpr double kPiHalf1 = 0x1.1a62633145c07p-54;
constexpr double kPiHalf2 = -0x1.f1976b7ed8fbcp-110;
constexpr double kPiHalf3 = 0x1.4cf98e804177dp-164;
constexpr double kTwoOverPi = 0x1.45f306dc9c883p-1;

constexpr double kLn2_0 = 0x1.62e42fefa39efp-1;
constexpr double kLn2_1 = 0x1.abc9e3b39803fp-56;
constexpr double kLn2_2 = 0x1.7b57a079a1934p-111;
constexpr double kInvLn2 = 0x1.71547652b82fep+0;

constexpr double kTrigArgLimit = 0x1p40;
constexpr double kExpArgLimit = 709.0;

// Series terms are added until they drop below 2^-115 of the running sum.
constexpr double kSeriesEps = 0x1p-115;

// 1/k! in double-double, k = 0..39.
const std::array<DoubleDouble, 40>& inv_factorials() {
  static const std::array<DoubleDouble, 40> table = [] {
    std::array<DoubleDouble, 40> t{};
    DoubleDouble fact(1.0);
    t[0] = DoubleDouble(1.0);
    for (int k = 1; k < 40; ++k) {
      fact = dd_mul_d(fact, static_cast<double>(k));
      t[k] = dd_div(DoubleDouble(1.0), fact);
    }
    return t;
  }();
  return table;
}

// sin on |r| <= pi/4 + eps, written as r * P(r^2) so that relative accuracy
// survives r -> 0.
DoubleDouble sin_core(const DoubleDouble& r) {
  if (r.hi == 0.0) return DoubleDouble(0.0);
  const auto& inv = inv_factorials();
  const DoubleDouble r2 = dd_mul(r, r);
  DoubleDouble power = r;   // r^k for odd k
  DoubleDouble sum = r;
  double sign = -1.0;
  for (int k = 3; k < 40; k += 2) {
    power = dd_mul(power, r2);
    const DoubleDouble term = dd_mul(power, inv[static_cast<std::size_t>(k)]);
    sum = dd_add_accurate(sum, dd_mul_d(term, sign));
    sign = -sign;
    if (std::abs(term.hi) < kSeriesEps * std::abs(sum.hi)) break;
  }
  return sum;
}

DoubleDouble cos_core(const DoubleDouble& r) {
  const auto& inv = inv_factorials();
  const DoubleDouble r2 = dd_mul(r, r);
  DoubleDouble power(1.0);  // r^k for even k
  DoubleDouble sum(1.0);
  double sign = -1.0;
  for (int k = 2; k < 40; k += 2) {
    power = dd_mul(power, r2);
    const DoubleDouble term = dd_mul(power, inv[static_cast<std::size_t>(k)]);
    sum = dd_add_accurate(sum, dd_mul_d(term, sign));
    sign = -sign;
    if (std::abs(term.hi) < kSeriesEps * std::abs(sum.hi)) break;
  }
  return sum;
}

// Reduce t modulo pi/2: t = k*(pi/2) + r with |r| <= pi/4 (up to rounding
// of k).  Returns r and the quadrant k mod 4.
DoubleDouble reduce_pi_half(const DoubleDouble& t, int& quadrant) {
  const double k = std::nearbyint(t.hi * kTwoOverPi);
  if (k == 0.0) {
    quadrant = 0;
    return t;
  }
  auto prod = [&](double c) {
    const SumPair p = two_prod(k, c);
    return DoubleDouble{p.s, p.e};
  };
  DoubleDouble r = dd_sub_accurate(t, prod(kPiHalf0));
  r = dd_sub_accurate(r, prod(kPiHalf1));
  r = dd_sub_accurate(r, prod(kPiHalf2));
  r = dd_sub_accurate(r, DoubleDouble(k * kPiHalf3));
  const long long ki = static_cast<long long>(k);
  quadrant = static_cast<int>(((ki % 4) + 4) % 4);
  return r;
}

}  // namespace

void dd_sincos(const DoubleDouble& t, DoubleDouble& sin_out, DoubleDouble& cos_out) {
  if (!(std::abs(t.hi) <= kTrigArgLimit)) {
    throw std::domain_error("dd_sincos: |t| exceeds the 2^40 reduction range");
  }
  int q = 0;
  const DoubleDouble r = reduce_pi_half(t, q);
  const DoubleDouble s = sin_core(r);
  const DoubleDouble c = cos_core(r);
  switch (q) {
    case 0: sin_out = s; cos_out = c; break;
    case 1: sin_out = c; cos_out = dd_neg(s); break;
    case 2: sin_out = dd_neg(s); cos_out = dd_neg(c); break;
    default: sin_out = dd_neg(c); cos_out = s; break;
  }
}

DoubleDouble dd_sin(const DoubleDouble& t) {
  DoubleDouble s, c;
  dd_sincos(t, s, c);
  return s;
}

DoubleDouble dd_cos(const DoubleDouble& t) {
  DoubleDouble s, c;
  dd_sincos(t, s, c);
  return c;
}

DoubleDouble dd_exp(const DoubleDouble& t) {
  if (!(std::abs(t.hi) <= kExpArgLimit)) {
    throw std::domain_error("dd_exp: argument outside [-709, 709]");
  }
  if (t.hi == 0.0 && t.lo == 0.0) return DoubleDouble(1.0);

  // t = k*ln2 + r, |r| <= ln2/2; exp(t) = 2^k * exp(r).
  const double k = std::nearbyint(t.hi * kInvLn2);
  auto prod = [&](double c) {
    const SumPair p = two_prod(k, c);
    return DoubleDouble{p.s, p.e};
  };
  DoubleDouble r = dd_sub_accurate(t, prod(kLn2_0));
  r = dd_sub_accurate(r, prod(kLn2_1));
  r = dd_sub_accurate(r, DoubleDouble(k * kLn2_2));

  const auto& inv = inv_factorials();
  DoubleDouble sum = dd_add_accurate(DoubleDouble(1.0), r);
  DoubleDouble power = r;
  for (int j = 2; j < 40; ++j) {
    power = dd_mul(power, r);
    const DoubleDouble term = dd_mul(power, inv[static_cast<std::size_t>(j)]);
    sum = dd_add_accurate(sum, term);
    if (std::abs(term.hi) < kSeriesEps * std::abs(sum.hi)) break;
  }
  const int ki = static_cast<int>(k);
  return {std::ldexp(sum.hi, ki), std::ldexp(sum.lo, ki)};
}

}  // namespace exode
