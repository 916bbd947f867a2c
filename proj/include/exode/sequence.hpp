#pragma once

#include <cstddef>
#include <vector>

#include "exode/comp_blas1.hpp"

// Support sequences of the extrapolation tableau, the double-double
// extrapolation coefficients c_ij, and the round-off propagation
// coefficients r_ij.

namespace exode {

enum class SequenceKind { Romberg, Harmonic };

// Per-stage substep counts w_1..w_L: Romberg w_i = 2^i, harmonic
// w_i = 2i.  Strictly increasing and all even.
struct SupportSequence {
  SequenceKind kind = SequenceKind::Romberg;
  std::vector<int> counts;

  int stages() const { return static_cast<int>(counts.size()); }
};

// stages must lie in [1, 30]; throws std::invalid_argument otherwise.
SupportSequence build_sequence(SequenceKind kind, int stages);

// Packed lower-triangular storage for 1-based (i, j), j <= i.
inline std::size_t tri_index(int i, int j) {
  return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(i) / 2 +
         static_cast<std::size_t>(j - 1);
}
inline std::size_t tri_size(int stages) {
  return static_cast<std::size_t>(stages) * static_cast<std::size_t>(stages + 1) / 2;
}

// c_ij = 1 / ((w_i / w_{i-j+1})^2 - 1), evaluated in double-double and kept
// as (value, error).  Valid for 2 <= j <= i <= L; j = 1 slots are unused.
class CoefficientMatrix {
 public:
  CoefficientMatrix() = default;
  CoefficientMatrix(int stages, std::vector<CompScalar> packed)
      : stages_(stages), c_(std::move(packed)) {}

  int stages() const { return stages_; }
  const CompScalar& at(int i, int j) const { return c_[tri_index(i, j)]; }

 private:
  int stages_ = 0;
  std::vector<CompScalar> c_;
};

CoefficientMatrix coefficients(const SupportSequence& seq);

// Amplification factors r_ij of an alternating initial-sequence error:
// r_i1 = (-1)^(i-1), r_ij = r_{i,j-1} + c_ij (r_{i,j-1} - r_{i-1,j-1}).
struct PropagationTable {
  int stages = 0;
  std::vector<double> r;  // tri-packed

  double at(int i, int j) const { return r[tri_index(i, j)]; }
  double max_abs() const;
};

PropagationTable propagation_coefficients(const SupportSequence& seq);

}  // namespace exode
