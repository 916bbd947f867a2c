#include "exode/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "exode/problems.hpp"

namespace exode {

namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

IvpProblem make_problem(const ExperimentSpec& spec) {
  if (spec.problem == "linear") return linear_problem(spec.n);
  if (spec.problem == "resonance") return resonance_problem(spec.alpha);
  throw std::invalid_argument("unknown problem: " + spec.problem);
}

SolverConfig make_config(const ExperimentSpec& spec) {
  SolverConfig cfg;
  cfg.sequence = build_sequence(spec.sequence, spec.stages);
  cfg.method = spec.mode;
  cfg.eps_rel = spec.eps_rel;
  cfg.eps_abs = spec.eps_abs;
  cfg.adaptive = spec.adaptive;
  cfg.steps = spec.steps;
  cfg.initial_step = spec.h0;
  return cfg;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size();
  if (m % 2 == 1) return xs[m / 2];
  return 0.5 * (xs[m / 2 - 1] + xs[m / 2]);
}

ExperimentSpec resonance_spec(Method mode, SequenceKind seq, int stages, double eps_rel,
                              int repetitions) {
  ExperimentSpec s;
  s.problem = "resonance";
  s.n = 2;
  s.mode = mode;
  s.sequence = seq;
  s.stages = stages;
  s.adaptive = true;
  s.h0 = kResonanceBaseStep;
  s.eps_rel = eps_rel;
  s.repetitions = repetitions;
  return s;
}

}  // namespace

void ExperimentSpec::validate() const {
  const bool fixed = steps > 0;
  if (fixed == adaptive) {
    throw std::invalid_argument("ExperimentSpec: exactly one of fixed steps or adaptive");
  }
  if (adaptive && !(h0 > 0.0)) {
    throw std::invalid_argument("ExperimentSpec: adaptive mode requires h0 > 0");
  }
  if (repetitions < 1) {
    throw std::invalid_argument("ExperimentSpec: repetitions must be >= 1");
  }
  if (problem != "linear" && problem != "resonance") {
    throw std::invalid_argument("ExperimentSpec: unknown problem " + problem);
  }
}

const char* method_name(Method m) {
  switch (m) {
    case Method::Double: return "double";
    case Method::DMoller: return "dmoller";
    case Method::Deft: return "deft";
    case Method::Deft2: return "deft2";
    case Method::DD: return "dd";
  }
  return "?";
}

const char* sequence_name(SequenceKind k) {
  return k == SequenceKind::Romberg ? "romberg" : "harmonic";
}

Method parse_method(const std::string& s) {
  if (s == "double") return Method::Double;
  if (s == "dmoller") return Method::DMoller;
  if (s == "deft") return Method::Deft;
  if (s == "deft2") return Method::Deft2;
  if (s == "dd") return Method::DD;
  throw std::invalid_argument("unknown mode: " + s);
}

SequenceKind parse_sequence(const std::string& s) {
  if (s == "romberg") return SequenceKind::Romberg;
  if (s == "harmonic") return SequenceKind::Harmonic;
  throw std::invalid_argument("unknown sequence: " + s);
}

ResultRow run(const ExperimentSpec& spec) {
  spec.validate();
  const IvpProblem problem = make_problem(spec);
  const SolverConfig cfg = make_config(spec);

  ResultRow row;
  row.spec = spec;

  IntegrationResult result = integrate(problem, cfg);  // warm-up
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(spec.repetitions));
  for (int r = 0; r < spec.repetitions; ++r) {
    result = integrate(problem, cfg);
    times.push_back(result.elapsed_seconds);
  }
  row.elapsed_seconds = median(std::move(times));
  row.steps_taken = result.steps_taken;
  row.halvings = result.halvings;
  row.accept_stage_histogram = result.accept_stage_histogram;
  row.failed = result.status != IntegrationResult::Status::Ok;

  if (row.failed) {
    row.max_rel_err = std::nan("");
  } else {
    std::vector<DoubleDouble> reference(problem.dim);
    problem.analytic(DoubleDouble(problem.t_end), reference);
    row.max_rel_err = max_rel_error(result.y, reference);
  }
  return row;
}

std::vector<ResultRow> run_matrix(std::span<const ExperimentSpec> specs) {
  std::vector<ResultRow> rows;
  rows.reserve(specs.size());
  for (const ExperimentSpec& spec : specs) rows.push_back(run(spec));
  return rows;
}

void write_csv(std::ostream& out, std::span<const ResultRow> rows) {
  out << "problem,n,mode,sequence,L,steps_req,steps_taken,halvings,eps_r,eps_a,"
         "max_rel_err,elapsed_s,status\n";
  for (const ResultRow& r : rows) {
    out << r.spec.problem << ',' << r.spec.n << ',' << method_name(r.spec.mode) << ','
        << sequence_name(r.spec.sequence) << ',' << r.spec.stages << ',' << r.spec.steps << ','
        << r.steps_taken << ',' << r.halvings << ',' << fmt_double(r.spec.eps_rel) << ','
        << fmt_double(r.spec.eps_abs) << ',' << fmt_double(r.max_rel_err) << ','
        << fmt_double(r.elapsed_seconds) << ',' << (r.failed ? "failed" : "ok") << '\n';
  }
}

std::vector<ResultRow> parse_csv(std::istream& in) {
  std::vector<ResultRow> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      continue;  // header
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 13) {
      throw std::invalid_argument("parse_csv: malformed row: " + line);
    }
    ResultRow r;
    r.spec.problem = fields[0];
    r.spec.n = static_cast<std::size_t>(std::stoull(fields[1]));
    r.spec.mode = parse_method(fields[2]);
    r.spec.sequence = parse_sequence(fields[3]);
    r.spec.stages = std::stoi(fields[4]);
    r.spec.steps = std::stol(fields[5]);
    r.steps_taken = std::stol(fields[6]);
    r.halvings = std::stol(fields[7]);
    r.spec.eps_rel = std::strtod(fields[8].c_str(), nullptr);
    r.spec.eps_abs = std::strtod(fields[9].c_str(), nullptr);
    r.max_rel_err = std::strtod(fields[10].c_str(), nullptr);
    r.elapsed_seconds = std::strtod(fields[11].c_str(), nullptr);
    r.failed = fields[12] == "failed";
    r.spec.adaptive = r.spec.steps == 0;
    rows.push_back(std::move(r));
  }
  return rows;
}

void emit_propagation(std::ostream& out, SequenceKind kind, int stages) {
  const PropagationTable table = propagation_coefficients(build_sequence(kind, stages));
  out << "# propagation coefficients r_ij, sequence=" << sequence_name(kind)
      << " L=" << stages << '\n';
  char buf[32];
  for (int i = 1; i <= stages; ++i) {
    for (int j = 1; j <= i; ++j) {
      std::snprintf(buf, sizeof buf, "%12.5g", table.at(i, j));
      out << buf << (j == i ? "" : " ");
    }
    out << '\n';
  }
  out << "max|r_ij| = " << fmt_double(table.max_abs()) << '\n';
}

std::vector<ExperimentSpec> table2_specs(int repetitions) {
  std::vector<ExperimentSpec> specs;
  const Method modes[] = {Method::DD, Method::Deft, Method::Deft2, Method::Double,
                          Method::DMoller};
  for (long steps : {512L, 1024L, 2048L, 4096L, 8192L}) {
    for (Method m : modes) {
      ExperimentSpec s;
      s.problem = "linear";
      s.n = 2048;
      s.mode = m;
      s.sequence = SequenceKind::Romberg;
      s.stages = 5;
      s.steps = steps;
      s.repetitions = repetitions;
      specs.push_back(s);
    }
  }
  return specs;
}

std::vector<ExperimentSpec> table3_specs(int repetitions) {
  std::vector<ExperimentSpec> specs = table2_specs(repetitions);
  for (ExperimentSpec& s : specs) {
    s.sequence = SequenceKind::Harmonic;
    s.stages = 7;
  }
  return specs;
}

std::vector<ExperimentSpec> table4_specs(int repetitions) {
  std::vector<ExperimentSpec> specs;
  specs.push_back(resonance_spec(Method::DD, SequenceKind::Romberg, 13, 1e-16, repetitions));
  specs.push_back(resonance_spec(Method::Deft, SequenceKind::Romberg, 13, 0.0, repetitions));
  specs.push_back(resonance_spec(Method::Deft2, SequenceKind::Romberg, 13, 0.0, repetitions));
  specs.push_back(resonance_spec(Method::Double, SequenceKind::Romberg, 13, 0.0, repetitions));
  specs.push_back(resonance_spec(Method::DMoller, SequenceKind::Romberg, 13, 0.0, repetitions));
  specs.push_back(resonance_spec(Method::DD, SequenceKind::Harmonic, 19, 1e-18, repetitions));
  specs.push_back(resonance_spec(Method::Deft, SequenceKind::Harmonic, 19, 0.0, repetitions));
  return specs;
}

}  // namespace exode
