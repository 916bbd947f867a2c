#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "exode/comp_blas1.hpp"
#include "exode/problems.hpp"
#include "exode/sequence.hpp"

// Explicit extrapolation integrator (Euler start + midpoint sweeps feeding
// a Richardson tableau) in five arithmetic modes, with zero-tolerance
// plateau acceptance and step-halving control.

namespace exode {

// Double    - plain binary64 kernels
// DMoller   - binary64 with Moller-compensated recurrences
// Deft      - error-evaluating kernels, DD-precision f split into (f, e_f)
// Deft2     - error-evaluating kernels, binary64 f with e_f = 0
// DD        - all state and f in double-double
enum class Method { Double, DMoller, Deft, Deft2, DD };

struct SolverConfig {
  SupportSequence sequence;
  Method method = Method::Double;
  double eps_rel = 0.0;
  double eps_abs = 0.0;
  bool adaptive = false;
  long steps = 0;            // fixed mode: number of equal steps
  double initial_step = 0.0; // adaptive mode: base step H0
  int max_halvings = 40;
  double min_step = 0.0;
  // Round-off-floor safety factor of the zero-tolerance plateau test:
  // a correction minimum counts as the plateau once it is below
  // plateau_safety * u * ||T||.
  double plateau_safety = 2.0;
};

// Triangular array of extrapolation entries T_ij with their correction
// norms ||R_ij|| and the precomputed DD coefficients c_ij.
struct Tableau {
  int stages = 0;
  std::size_t dim = 0;
  std::vector<CompVector> t;     // tri-packed, 1-based (i, j)
  std::vector<double> corr;      // ||R_ij||, tri-packed; valid for j >= 2
  std::vector<double> corr_rel;  // max_k |R_k| / |T_k|, same layout
  CoefficientMatrix c;

  Tableau() = default;
  Tableau(const SupportSequence& seq, std::size_t n);

  CompVector& entry(int i, int j) { return t[tri_index(i, j)]; }
  const CompVector& entry(int i, int j) const { return t[tri_index(i, j)]; }
  double correction(int i, int j) const { return corr[tri_index(i, j)]; }
  // Componentwise relative correction: the scale of each component's
  // correction against that component itself, so a huge component cannot
  // mask a relatively wrong small one.
  double relative_correction(int i, int j) const { return corr_rel[tri_index(i, j)]; }
};

struct StepStats {
  bool accepted = false;
  int stages_used = 0;       // rows built in the accepted attempt
  int accept_stage = 0;      // diagonal stage of the returned state
  int halvings = 0;
  double corr_at_accept = 0.0;
  double step_used = 0.0;    // step size actually accepted
  double t_reached = 0.0;
};

// ||R_ij|| <= eps_rel ||T_{i,j-1}|| + eps_abs
bool check_convergence(double corr, const CompVector& t_prev, double eps_rel, double eps_abs);

// Zero-tolerance acceptance on the diagonal correction history, where
// corr_history[k] is the componentwise relative correction of the (k+2)-th
// stage diagonal.  An exact zero accepts outright.  Fixed-step mode
// otherwise runs the whole tableau and accepts the deepest diagonal.
// Adaptive mode accepts at the running minimum -- the stage where
// truncation and round-off balance -- once a rise shows the minimum
// sitting at the round-off floor (safety * u); exhausting the stages
// without reaching the floor fails the step, which then gets halved.
struct PlateauDecision {
  enum class Action { Continue, Accept, Fail };
  Action action = Action::Continue;
  int accept_index = 0;  // 1-based position in corr_history
};
PlateauDecision zero_tol_accept(std::span<const double> corr_history, bool at_final_stage,
                                bool adaptive, double safety = 2.0);

// One initial-sequence build with h = H/w: Euler start, w midpoint
// substeps, and the smoothing combination (y_{w-1} + 2 y_w + y_{w+1})/4,
// all in the arithmetic of the given mode.  The smoothing suppresses the
// midpoint rule's oscillating parasitic mode, which would otherwise feed
// back through the carried error terms.  Returns T_i1.
CompVector initial_approx(const IvpProblem& problem, const CompScalar& t_old,
                          const CompVector& y, const CompScalar& step, int substeps,
                          Method mode);

// Fills T_ij and ||R_ij|| for j = 2..row from rows row-1 and row.
void extrapolate_row(Tableau& tab, int row, Method mode);

class ExtrapolationStepper {
 public:
  ExtrapolationStepper(const IvpProblem& problem, const SolverConfig& config);

  // Attempts one step of size `step` from (t, y); on acceptance y is
  // replaced by the new state.  In adaptive mode a failed attempt retries
  // with exactly half the step, up to max_halvings.  stats.accepted ==
  // false signals breakdown; y is then left untouched.
  StepStats advance_step(const CompScalar& t, CompVector& y, const CompScalar& step);

  const Tableau& tableau() const { return tableau_; }

 private:
  const IvpProblem& problem_;
  SolverConfig config_;
  Tableau tableau_;
  std::vector<double> diag_corr_;
};

struct IntegrationResult {
  enum class Status { Ok, Breakdown };
  Status status = Status::Ok;
  CompVector y;
  CompScalar t;
  long steps_taken = 0;
  long halvings = 0;
  std::vector<long> accept_stage_histogram;  // index = stage, 0..L
  double elapsed_seconds = 0.0;
};

// Fixed mode: steps equal steps of (t_end - t_start)/steps, the last one
// clamped to land exactly on t_end.  Adaptive mode: base step
// initial_step, re-tried from the base value after every accepted step.
IntegrationResult integrate(const IvpProblem& problem, const SolverConfig& config);

}  // namespace exode
