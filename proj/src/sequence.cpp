#include "exode/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "exode/dd.hpp"

namespace exode {

SupportSequence build_sequence(SequenceKind kind, int stages) {
  if (stages < 1 || stages > 30) {
    throw std::invalid_argument("build_sequence: stages must be in [1, 30]");
  }
  SupportSequence seq;
  seq.kind = kind;
  seq.counts.reserve(static_cast<std::size_t>(stages));
  for (int i = 1; i <= stages; ++i) {
    seq.counts.push_back(kind == SequenceKind::Romberg ? (1 << i) : 2 * i);
  }
  return seq;
}

CoefficientMatrix coefficients(const SupportSequence& seq) {
  const int L = seq.stages();
  std::vector<CompScalar> packed(tri_size(L), CompScalar{});
  for (int i = 2; i <= L; ++i) {
    for (int j = 2; j <= i; ++j) {
      const DoubleDouble wi(static_cast<double>(seq.counts[static_cast<std::size_t>(i - 1)]));
      const DoubleDouble wb(static_cast<double>(seq.counts[static_cast<std::size_t>(i - j)]));
      const DoubleDouble ratio = dd_div(wi, wb);
      const DoubleDouble den = dd_sub(dd_mul(ratio, ratio), DoubleDouble(1.0));
      const DoubleDouble c = dd_div(DoubleDouble(1.0), den);
      packed[tri_index(i, j)] = CompScalar{c.hi, c.lo};
    }
  }
  return CoefficientMatrix(L, std::move(packed));
}

double PropagationTable::max_abs() const {
  double m = 0.0;
  for (double x : r) m = std::max(m, std::abs(x));
  return m;
}

PropagationTable propagation_coefficients(const SupportSequence& seq) {
  const int L = seq.stages();
  const CoefficientMatrix c = coefficients(seq);
  PropagationTable table;
  table.stages = L;
  table.r.assign(tri_size(L), 0.0);
  for (int i = 1; i <= L; ++i) {
    table.r[tri_index(i, 1)] = (i % 2 == 1) ? 1.0 : -1.0;
    for (int j = 2; j <= i; ++j) {
      const double prev = table.r[tri_index(i, j - 1)];
      const double up = table.r[tri_index(i - 1, j - 1)];
      table.r[tri_index(i, j)] = prev + c.at(i, j).v * (prev - up);
    }
  }
  return table;
}

}  // namespace exode
