// bench: command-line runner for the extrapolation experiments.
//
//   bench run          single experiment from flags
//   bench table2       linear ODE, Romberg L=4, N in {512..8192}, all modes
//   bench table3       linear ODE, harmonic L=6, same step counts
//   bench table4       resonance problem, adaptive, Romberg L=12 / harmonic L=18
//   bench propagation  round-off propagation coefficients r_ij
//
// Exit code 0 when every row succeeded, 2 when any row failed.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <span>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "exode/bench.hpp"

namespace {

using namespace exode;

void print_summary(std::span<const ResultRow> rows) {
  std::printf("%-9s %5s %-8s %-8s %3s %9s %9s %5s %12s %12s  %s\n", "problem", "n", "mode",
              "sequence", "L", "steps_req", "steps", "halve", "max_rel_err", "elapsed_s",
              "status");
  for (const ResultRow& r : rows) {
    std::printf("%-9s %5zu %-8s %-8s %3d %9ld %9ld %5ld %12.4e %12.4e  %s\n",
                r.spec.problem.c_str(), r.spec.n, method_name(r.spec.mode),
                sequence_name(r.spec.sequence), r.spec.stages, r.spec.steps, r.steps_taken,
                r.halvings, r.max_rel_err, r.elapsed_seconds, r.failed ? "failed" : "ok");
  }
  for (const ResultRow& r : rows) {
    if (r.spec.adaptive) {
      std::printf("note: adaptive rows use base step H0 = %.17g\n", rows.front().spec.h0);
      break;
    }
  }
}

int finish(const std::vector<ResultRow>& rows, const std::string& out_file) {
  print_summary(rows);
  if (!out_file.empty()) {
    std::ofstream out(out_file);
    if (!out) {
      std::cerr << "cannot open " << out_file << " for writing\n";
      return 2;
    }
    write_csv(out, rows);
  }
  for (const ResultRow& r : rows) {
    if (r.failed) return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"explicit extrapolation ODE benchmark"};
  app.require_subcommand(1);

  std::string out_file;
  int reps = 3;
  long seed = 0;  // reserved; the solver is deterministic

  ExperimentSpec spec;
  std::string mode_str = "double";
  std::string seq_str = "romberg";

  CLI::App* run_cmd = app.add_subcommand("run", "run a single experiment");
  run_cmd->add_option("--problem", spec.problem, "linear|resonance")->default_val("linear");
  run_cmd->add_option("--n", spec.n, "linear problem dimension")->default_val(2048);
  run_cmd->add_option("--alpha", spec.alpha, "resonance parameter");
  run_cmd->add_option("--mode", mode_str, "double|dmoller|deft|deft2|dd");
  run_cmd->add_option("--sequence", seq_str, "romberg|harmonic");
  run_cmd->add_option("--stages", spec.stages, "max stages L");
  run_cmd->add_option("--steps", spec.steps, "fixed step count");
  run_cmd->add_flag("--adaptive", spec.adaptive, "adaptive step control");
  run_cmd->add_option("--h0", spec.h0, "adaptive base step");
  run_cmd->add_option("--eps-r", spec.eps_rel, "relative tolerance");
  run_cmd->add_option("--eps-a", spec.eps_abs, "absolute tolerance");

  CLI::App* t2_cmd = app.add_subcommand("table2", "linear ODE, Romberg L=4 matrix");
  CLI::App* t3_cmd = app.add_subcommand("table3", "linear ODE, harmonic L=6 matrix");
  CLI::App* t4_cmd = app.add_subcommand("table4", "resonance problem, adaptive runs");

  std::string prop_seq = "romberg";
  int prop_stages = 20;
  CLI::App* prop_cmd = app.add_subcommand("propagation", "round-off propagation table");
  prop_cmd->add_option("--sequence", prop_seq, "romberg|harmonic");
  prop_cmd->add_option("--stages", prop_stages, "table depth L")->check(CLI::Range(1, 30));

  for (CLI::App* cmd : {run_cmd, t2_cmd, t3_cmd, t4_cmd}) {
    cmd->add_option("--reps", reps, "timing repetitions")->check(CLI::PositiveNumber);
    cmd->add_option("--out", out_file, "write CSV to this file");
    cmd->add_option("--seed", seed, "reserved (runs are deterministic)");
  }
  prop_cmd->add_option("--out", out_file, "write the table to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      spec.mode = parse_method(mode_str);
      spec.sequence = parse_sequence(seq_str);
      spec.repetitions = reps;
      if (spec.adaptive && spec.h0 == 0.0) spec.h0 = kResonanceBaseStep;
      spec.validate();
      return finish(run_matrix(std::vector<ExperimentSpec>{spec}), out_file);
    }
    if (t2_cmd->parsed()) return finish(run_matrix(table2_specs(reps)), out_file);
    if (t3_cmd->parsed()) return finish(run_matrix(table3_specs(reps)), out_file);
    if (t4_cmd->parsed()) return finish(run_matrix(table4_specs(reps)), out_file);
    if (prop_cmd->parsed()) {
      emit_propagation(std::cout, parse_sequence(prop_seq), prop_stages);
      if (!out_file.empty()) {
        std::ofstream out(out_file);
        emit_propagation(out, parse_sequence(prop_seq), prop_stages);
      }
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  }
  return 0;
}
