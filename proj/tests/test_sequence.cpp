#include "exode/sequence.hpp"

#include <stdexcept>

#include "doctest.h"
#include "support/oracle.hpp"

using namespace exode;
using oracle::BigFloat;

TEST_CASE("build_sequence") {
  const SupportSequence r4 = build_sequence(SequenceKind::Romberg, 4);
  CHECK(r4.counts == std::vector<int>{2, 4, 8, 16});
  const SupportSequence h4 = build_sequence(SequenceKind::Harmonic, 4);
  CHECK(h4.counts == std::vector<int>{2, 4, 6, 8});
  const SupportSequence r1 = build_sequence(SequenceKind::Romberg, 1);
  CHECK(r1.counts == std::vector<int>{2});

  for (SequenceKind kind : {SequenceKind::Romberg, SequenceKind::Harmonic}) {
    const SupportSequence s = build_sequence(kind, 12);
    for (std::size_t i = 0; i < s.counts.size(); ++i) {
      CHECK(s.counts[i] % 2 == 0);
      if (i > 0) CHECK(s.counts[i] > s.counts[i - 1]);
    }
  }

  CHECK_THROWS_AS((void)build_sequence(SequenceKind::Romberg, 0), std::invalid_argument);
  CHECK_THROWS_AS((void)build_sequence(SequenceKind::Romberg, 31), std::invalid_argument);
}

TEST_CASE("coefficients") {
  const CoefficientMatrix cr = coefficients(build_sequence(SequenceKind::Romberg, 4));
  const BigFloat third = BigFloat(1) / 3;
  const BigFloat got = BigFloat(cr.at(2, 2).v) + BigFloat(cr.at(2, 2).e);
  CHECK(oracle::rel_err(got, third) <= 0x1p-104);

  const CoefficientMatrix ch = coefficients(build_sequence(SequenceKind::Harmonic, 4));
  const BigFloat goth22 = BigFloat(ch.at(2, 2).v) + BigFloat(ch.at(2, 2).e);
  CHECK(oracle::rel_err(goth22, BigFloat(1) / 3) <= 0x1p-104);
  // w_3/w_2 = 6/4: c_32 = 1/((3/2)^2 - 1) = 4/5 exactly.
  const BigFloat four_fifths = BigFloat(4) / 5;
  const BigFloat goth32 = BigFloat(ch.at(3, 2).v) + BigFloat(ch.at(3, 2).e);
  CHECK(oracle::rel_err(goth32, four_fifths) <= 0x1p-104);
}

TEST_CASE("propagation coefficients") {
  SUBCASE("pinned entries") {
    const PropagationTable t = propagation_coefficients(build_sequence(SequenceKind::Romberg, 4));
    CHECK(t.at(1, 1) == 1.0);
    CHECK(t.at(2, 1) == -1.0);
    CHECK(t.at(2, 2) == doctest::Approx(-5.0 / 3.0).epsilon(1e-15));
  }
  SUBCASE("single stage") {
    const PropagationTable t = propagation_coefficients(build_sequence(SequenceKind::Romberg, 1));
    CHECK(t.at(1, 1) == 1.0);
    CHECK(t.max_abs() == 1.0);
  }
  SUBCASE("Romberg stays bounded, harmonic amplifies") {
    const PropagationTable r = propagation_coefficients(build_sequence(SequenceKind::Romberg, 20));
    CHECK(r.max_abs() < 2.0);
    const PropagationTable h =
        propagation_coefficients(build_sequence(SequenceKind::Harmonic, 20));
    CHECK(h.max_abs() >= 1e5);
    CHECK(h.max_abs() <= 1e7);
  }
  SUBCASE("recurrence reproduces the stored rows bitwise") {
    const SupportSequence seq = build_sequence(SequenceKind::Harmonic, 12);
    const PropagationTable t = propagation_coefficients(seq);
    const CoefficientMatrix c = coefficients(seq);
    for (int i = 2; i <= 12; ++i) {
      for (int j = 2; j <= i; ++j) {
        const double expect = t.at(i, j - 1) + c.at(i, j).v * (t.at(i, j - 1) - t.at(i - 1, j - 1));
        REQUIRE(t.at(i, j) == expect);
      }
    }
  }
}
