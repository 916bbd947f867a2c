#include "exode/eft.hpp"

#include <cmath>

#include "doctest.h"
#include "support/oracle.hpp"

using namespace exode;
using oracle::Rng;

TEST_CASE("two_sum: pinned cases") {
  SUBCASE("additive identity") {
    const SumPair p = two_sum(1.0, 0.0);
    CHECK(p.s == 1.0);
    CHECK(p.e == 0.0);
  }
  SUBCASE("tie rounds to even, residual keeps the low bit") {
    const SumPair p = two_sum(1.0, 0x1p-53);
    CHECK(p.s == 1.0);
    CHECK(p.e == 0x1p-53);
    CHECK(oracle::sum_exact(1.0, 0x1p-53, p.s, p.e));
  }
  SUBCASE("ulp spacing 2 at 2^53") {
    const SumPair p = two_sum(0x1p53, 1.0);
    CHECK(p.s == 0x1p53);
    CHECK(p.e == 1.0);
    CHECK(oracle::sum_exact(0x1p53, 1.0, p.s, p.e));
  }
}

TEST_CASE("quick_two_sum: pinned cases") {
  SUBCASE("zero case") {
    const SumPair p = quick_two_sum(0.0, 0.0);
    CHECK(p.s == 0.0);
    CHECK(p.e == 0.0);
  }
  SUBCASE("exact sum has zero residual") {
    const SumPair p = quick_two_sum(3.0, 1.0);
    CHECK(p.s == 4.0);
    CHECK(p.e == 0.0);
  }
  SUBCASE("residual below the rounding tie") {
    const SumPair p = quick_two_sum(1.0, 0x1p-53);
    CHECK(oracle::sum_exact(1.0, 0x1p-53, p.s, p.e));
  }
}

TEST_CASE("two_prod: pinned cases") {
  SUBCASE("annihilator") {
    for (double x : {1.0, -3.5, 0x1p100, 1e-300}) {
      const SumPair p = two_prod(0.0, x);
      CHECK(p.s == 0.0);
      CHECK(p.e == 0.0);
    }
  }
  SUBCASE("exact integer square") {
    const double a = 0x1p27 + 1.0;
    const SumPair p = two_prod(a, a);
    CHECK(p.s == 0x1p54 + 0x1p28);
    CHECK(p.e == 1.0);
    CHECK(oracle::prod_exact(a, a, p.s, p.e));
  }
}

TEST_CASE("fma_error: pinned cases") {
  SUBCASE("reduces to identity on y") {
    const FmaTriple t = fma_error(0.0, 5.0, 3.25);
    CHECK(t.s == 3.25);
    CHECK(t.e1 == 0.0);
    CHECK(t.e2 == 0.0);
  }
  SUBCASE("matches the two_sum case") {
    const FmaTriple t = fma_error(1.0, 1.0, 0x1p-53);
    CHECK(t.s == 1.0);
    CHECK(t.e1 == 0x1p-53);
    CHECK(t.e2 == 0.0);
  }
}

TEST_CASE("two_sum exactness on random and exponent-gap operands") {
  Rng rng(20260810);
  for (int i = 0; i < 100000; ++i) {
    const double a = rng.with_exponent(-40, 40);
    const double b = rng.with_exponent(-40, 40);
    const SumPair p = two_sum(a, b);
    REQUIRE(oracle::sum_exact(a, b, p.s, p.e));
  }
  // Adversarial exponent gaps around and beyond the 53-bit significand.
  for (int gap : {0, 1, 52, 53, 54, 60, 100, 500, 1000, 2000}) {
    for (int i = 0; i < 500; ++i) {
      const double a = rng.with_exponent(0, 2);
      const double b = rng.with_exponent(-gap - 2, -gap);
      const SumPair p = two_sum(a, b);
      REQUIRE(oracle::sum_exact(a, b, p.s, p.e));
      const SumPair q = two_sum(b, a);
      REQUIRE(oracle::sum_exact(b, a, q.s, q.e));
    }
  }
}

TEST_CASE("two_prod exactness on random operands") {
  Rng rng(77001);
  for (int i = 0; i < 100000; ++i) {
    const double a = rng.with_exponent(-200, 200);
    const double b = rng.with_exponent(-200, 200);
    const SumPair p = two_prod(a, b);
    REQUIRE(oracle::prod_exact(a, b, p.s, p.e));
  }
}

TEST_CASE("fma_error exactness and e2 bound") {
  Rng rng(424242);
  for (int i = 0; i < 100000; ++i) {
    const double a = rng.with_exponent(-30, 30);
    const double x = rng.with_exponent(-30, 30);
    const double y = rng.with_exponent(-30, 30);
    const FmaTriple t = fma_error(a, x, y);
    REQUIRE(oracle::fma_exact(a, x, y, t.s, t.e1, t.e2));
    if (t.e1 == 0.0) {
      REQUIRE(t.e2 == 0.0);
    } else {
      const double half_ulp =
          0.5 * (std::nextafter(std::abs(t.e1), HUGE_VAL) - std::abs(t.e1));
      REQUIRE(std::abs(t.e2) <= half_ulp);
    }
  }
}

TEST_CASE("quick_two_sum agrees bitwise with two_sum when |a| >= |b|") {
  Rng rng(99);
  for (int i = 0; i < 100000; ++i) {
    double a = rng.with_exponent(-30, 30);
    double b = rng.with_exponent(-30, 30);
    if (std::abs(a) < std::abs(b)) std::swap(a, b);
    const SumPair p = quick_two_sum(a, b);
    const SumPair q = two_sum(a, b);
    REQUIRE(p.s == q.s);
    REQUIRE(p.e == q.e);
  }
}
