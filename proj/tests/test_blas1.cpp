#include "exode/comp_blas1.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "exode/dd.hpp"
#include "exode/eft.hpp"
#include "support/oracle.hpp"

using namespace exode;
using oracle::BigFloat;
using oracle::Rng;

namespace {
CompVector make_comp(std::vector<double> v, std::vector<double> e) {
  CompVector x;
  x.v = std::move(v);
  x.e = std::move(e);
  return x;
}

double ulp_of(double x) { return std::nextafter(std::abs(x), HUGE_VAL) - std::abs(x); }
}  // namespace

TEST_CASE("axpy pinned cases") {
  SUBCASE("alpha = 0 leaves y unchanged") {
    std::vector<double> y = {1.5, -2.0};
    const std::vector<double> x = {7.0, 9.0};
    axpy(0.0, x, y);
    CHECK(y == std::vector<double>{1.5, -2.0});
  }
  SUBCASE("unit case") {
    std::vector<double> y = {1.0};
    axpy(1.0, std::vector<double>{1.0}, y);
    CHECK(y[0] == 2.0);
  }
  SUBCASE("hand-evaluated exact case") {
    std::vector<double> y = {1.0, 1.0};
    axpy(-0.25, std::vector<double>{1.0, 2.0}, y);
    CHECK(y == std::vector<double>{0.75, 0.5});
  }
  SUBCASE("dimension mismatch throws") {
    std::vector<double> y = {1.0};
    CHECK_THROWS_AS(axpy(1.0, std::vector<double>{1.0, 2.0}, y), std::invalid_argument);
  }
}

TEST_CASE("scal pinned cases") {
  std::vector<double> x = {3.0};
  scal(1.0, x);
  CHECK(x[0] == 3.0);
  scal(1.0 / 3.0, x);
  CHECK(x[0] == 1.0);  // fl(fl(1/3) * 3) rounds up to 1
  scal(0.0, x);
  CHECK(x[0] == 0.0);
}

TEST_CASE("axpy_error pinned cases") {
  SUBCASE("alpha = (0,0) leaves y unchanged in both fields") {
    const CompVector x = make_comp({2.0, 3.0}, {1e-20, -1e-21});
    CompVector y = make_comp({5.0, -1.0}, {2e-18, 3e-19});
    const CompVector before = y;
    axpy_error({0.0, 0.0}, x, y);
    CHECK(y.v == before.v);
    CHECK(y.e == before.e);
  }
  SUBCASE("recovers the bit lost by the rounded sum") {
    const CompVector x = make_comp({1.0}, {0.0});
    CompVector y = make_comp({0x1p-53}, {0.0});
    axpy_error({1.0, 0.0}, x, y);
    CHECK(y.v[0] == 1.0);
    CHECK(y.e[0] == 0x1p-53);
  }
}

TEST_CASE("scal_error pinned cases") {
  SUBCASE("identity scale") {
    CompVector x = make_comp({3.5}, {0.0});
    scal_error({1.0, 0.0}, x);
    CHECK(x.v[0] == 3.5);
    CHECK(x.e[0] == 0.0);
  }
  SUBCASE("zero scale") {
    CompVector x = make_comp({3.5, -2.0}, {1e-20, 1e-22});
    scal_error({0.0, 0.0}, x);
    CHECK(x.v[0] == 0.0);
    CHECK(x.v[1] == 0.0);
    CHECK(x.e[0] == 0.0);
    CHECK(x.e[1] == 0.0);
  }
  SUBCASE("DD third times 3 is 1 to ~2^-104") {
    const DoubleDouble third = dd_div({1.0, 0.0}, {3.0, 0.0});
    CompVector x = make_comp({3.0}, {0.0});
    scal_error({third.hi, third.lo}, x);
    const BigFloat got = oracle::big(x.v[0]) + oracle::big(x.e[0]);
    CHECK(oracle::rel_err(got, BigFloat(1)) <= 0x1p-104);
  }
}

TEST_CASE("axpy_error/scal_error reproduce axpy/scal bitwise on exact data") {
  Rng rng(2718);
  const std::size_t n = 64;
  CompVector x(n), y(n);
  std::vector<double> xp(n), yp(n);
  for (std::size_t k = 0; k < n; ++k) {
    x.v[k] = xp[k] = rng.uniform(-2.0, 2.0);
    y.v[k] = yp[k] = rng.uniform(-2.0, 2.0);
  }
  const double alpha = rng.uniform(-1.0, 1.0);
  axpy_error({alpha, 0.0}, x, y);
  axpy(alpha, xp, yp);
  CHECK(y.v == yp);

  scal_error({alpha, 0.0}, x);
  scal(alpha, xp);
  CHECK(x.v == xp);
}

TEST_CASE("scal_error output is normalized componentwise") {
  Rng rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 16;
    CompVector x(n);
    for (std::size_t k = 0; k < n; ++k) {
      x.v[k] = rng.with_exponent(-6, 6);
      x.e[k] = x.v[k] * 0x1p-50 * rng.uniform(-1.0, 1.0);
    }
    const DoubleDouble a = dd_div(DoubleDouble(rng.uniform(0.1, 4.0)),
                                  DoubleDouble(rng.uniform(0.1, 4.0)));
    scal_error({a.hi, a.lo}, x);
    for (std::size_t k = 0; k < n; ++k) {
      if (x.v[k] == 0.0) {
        REQUIRE(x.e[k] == 0.0);
      } else {
        REQUIRE(std::abs(x.e[k]) <= 0.5 * ulp_of(x.v[k]));
      }
    }
  }
}

TEST_CASE("semantic accuracy of the error-evaluating kernels") {
  Rng rng(80100);
  const std::size_t n = 8;
  for (int trial = 0; trial < 500; ++trial) {
    CompVector x(n), y(n);
    for (std::size_t k = 0; k < n; ++k) {
      x.v[k] = rng.uniform(-2.0, 2.0);
      y.v[k] = rng.uniform(-2.0, 2.0);
      x.e[k] = x.v[k] * 0x1p-54 * rng.uniform(-1.0, 1.0);
      y.e[k] = y.v[k] * 0x1p-54 * rng.uniform(-1.0, 1.0);
    }
    const DoubleDouble a = dd_div(DoubleDouble(rng.uniform(-3.0, 3.0)), DoubleDouble(3.0));
    const CompScalar alpha{a.hi, a.lo};
    const BigFloat ba = oracle::big(a);

    CompVector ax = x;
    CompVector ay = y;
    axpy_error(alpha, ax, ay);
    for (std::size_t k = 0; k < n; ++k) {
      const BigFloat exact = ba * (oracle::big(x.v[k]) + oracle::big(x.e[k])) +
                             (oracle::big(y.v[k]) + oracle::big(y.e[k]));
      const double scale = std::abs(a.hi * x.v[k]) + std::abs(y.v[k]);
      const double err =
          std::abs(static_cast<double>((oracle::big(ay.v[k]) + oracle::big(ay.e[k])) - exact));
      REQUIRE(err <= 4.0 * 0x1p-106 * scale);
    }

    CompVector sx = x;
    scal_error(alpha, sx);
    for (std::size_t k = 0; k < n; ++k) {
      const BigFloat exact = ba * (oracle::big(x.v[k]) + oracle::big(x.e[k]));
      const double scale = std::abs(a.hi * x.v[k]);
      const double err =
          std::abs(static_cast<double>((oracle::big(sx.v[k]) + oracle::big(sx.e[k])) - exact));
      REQUIRE(err <= 4.0 * 0x1p-106 * (scale + 0x1p-300));
    }
  }
}

TEST_CASE("moller_update pinned cases") {
  SUBCASE("zero addend and residual change nothing") {
    std::vector<double> s = {2.5};
    std::vector<double> r = {0.0};
    moller_update(s, r, std::vector<double>{0.0});
    CHECK(s[0] == 2.5);
    CHECK(r[0] == 0.0);
  }
  SUBCASE("lost bit recovered across two updates") {
    std::vector<double> s = {1.0};
    std::vector<double> r = {0.0};
    const std::vector<double> z = {0x1p-53};
    moller_update(s, r, z);
    CHECK(s[0] == 1.0);
    CHECK(r[0] == 0x1p-53);
    moller_update(s, r, z);
    CHECK(s[0] == 1.0 + 0x1p-52);
    CHECK(r[0] == 0.0);
  }
}

TEST_CASE("moller_update is an exact split when |S| >= |s|") {
  Rng rng(31337);
  for (int i = 0; i < 100000; ++i) {
    std::vector<double> s = {rng.with_exponent(0, 4)};
    std::vector<double> r = {s[0] * 0x1p-54 * rng.uniform(-1.0, 1.0)};
    const double z = rng.with_exponent(-20, -2);
    const double addend = z + r[0];
    const double s_old = s[0];
    moller_update(s, r, std::vector<double>{z});
    REQUIRE(oracle::sum_exact(s_old, addend, s[0], r[0]));
  }
}

TEST_CASE("compensated accumulation beats naive accumulation") {
  std::vector<double> s = {1.0};
  std::vector<double> r = {0.0};
  double naive = 1.0;
  const std::vector<double> z = {1e-16};
  for (int i = 0; i < 10000; ++i) {
    moller_update(s, r, z);
    naive += 1e-16;
  }
  const BigFloat exact = BigFloat(1) + BigFloat(1e-16) * 10000;
  const double err_comp =
      std::abs(static_cast<double>((oracle::big(s[0]) + oracle::big(r[0])) - exact));
  const double err_naive = std::abs(static_cast<double>(oracle::big(naive) - exact));
  CHECK(err_naive > 1e-13);
  CHECK(err_comp < err_naive / 100.0);
}

TEST_CASE("norm_inf pinned cases") {
  CHECK(norm_inf(make_comp({0.0, 0.0}, {0.0, 0.0})) == 0.0);
  CHECK(norm_inf(make_comp({1.0, -3.0}, {0.0, 0.0})) == 3.0);
  CHECK(norm_inf(make_comp({1.0}, {0x1p-53})) == 1.0);
}
