#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "exode/solver.hpp"

// Experiment runner: executes integration specs with a warm-up plus
// median-of-repetitions timing protocol and serializes results as CSV with
// the fixed schema
//   problem,n,mode,sequence,L,steps_req,steps_taken,halvings,eps_r,eps_a,
//   max_rel_err,elapsed_s,status
// (floating-point fields written with 17 significant digits).

namespace exode {

struct ExperimentSpec {
  std::string problem = "linear";  // "linear" | "resonance"
  std::size_t n = 2048;            // linear problem dimension
  double alpha = 0.99999999;       // resonance parameter
  Method mode = Method::Double;
  SequenceKind sequence = SequenceKind::Romberg;
  int stages = 4;
  long steps = 0;       // fixed-step count; 0 in adaptive mode
  bool adaptive = false;
  double h0 = 0.0;      // adaptive base step
  double eps_rel = 0.0;
  double eps_abs = 0.0;
  int repetitions = 3;  // timed runs (after one discarded warm-up)

  void validate() const;  // throws std::invalid_argument
};

struct ResultRow {
  ExperimentSpec spec;
  long steps_taken = 0;
  long halvings = 0;
  double max_rel_err = 0.0;
  double elapsed_seconds = 0.0;  // median over repetitions
  bool failed = false;
  std::vector<long> accept_stage_histogram;
};

const char* method_name(Method m);
const char* sequence_name(SequenceKind k);
Method parse_method(const std::string& s);          // throws on unknown name
SequenceKind parse_sequence(const std::string& s);  // throws on unknown name

ResultRow run(const ExperimentSpec& spec);

// Runs each spec independently and returns rows in spec order.
std::vector<ResultRow> run_matrix(std::span<const ExperimentSpec> specs);

void write_csv(std::ostream& out, std::span<const ResultRow> rows);
std::vector<ResultRow> parse_csv(std::istream& in);

// Triangular r_ij table plus max |r_ij|.
void emit_propagation(std::ostream& out, SequenceKind kind, int stages);

// The paper-matrix presets.
std::vector<ExperimentSpec> table2_specs(int repetitions = 3);
std::vector<ExperimentSpec> table3_specs(int repetitions = 3);
std::vector<ExperimentSpec> table4_specs(int repetitions = 3);

// Default adaptive base step for the resonance runs (37/64, recorded in
// the human-readable output).
constexpr double kResonanceBaseStep = 37.0 / 64.0;

}  // namespace exode
