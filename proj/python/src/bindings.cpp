#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <span>
#include <stdexcept>
#include <vector>

#include "exode/bench.hpp"
#include "exode/comp_blas1.hpp"
#include "exode/dd.hpp"
#include "exode/eft.hpp"
#include "exode/problems.hpp"
#include "exode/sequence.hpp"
#include "exode/solver.hpp"

namespace py = pybind11;
using namespace exode;

namespace {

using DArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vec(const DArray& a) {
  if (a.ndim() != 1) throw std::invalid_argument("expected a 1-d array");
  return {a.data(), a.data() + a.size()};
}

DArray from_vec(const std::vector<double>& v) {
  DArray out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

CompVector to_comp(const DArray& v, const DArray& e) {
  CompVector out;
  out.v = to_vec(v);
  out.e = to_vec(e);
  if (out.v.size() != out.e.size()) throw std::invalid_argument("v/e size mismatch");
  return out;
}

py::dict result_to_dict(const IntegrationResult& r) {
  py::dict d;
  d["y_v"] = from_vec(r.y.v);
  d["y_e"] = from_vec(r.y.e);
  d["t"] = r.t.v + r.t.e;
  d["steps"] = r.steps_taken;
  d["halvings"] = r.halvings;
  d["status"] = r.status == IntegrationResult::Status::Ok ? "ok" : "breakdown";
  d["elapsed_s"] = r.elapsed_seconds;
  d["accept_stage_histogram"] = r.accept_stage_histogram;
  return d;
}

py::dict row_to_dict(const ResultRow& r) {
  py::dict d;
  d["problem"] = r.spec.problem;
  d["n"] = r.spec.n;
  d["mode"] = method_name(r.spec.mode);
  d["sequence"] = sequence_name(r.spec.sequence);
  d["stages"] = r.spec.stages;
  d["steps_req"] = r.spec.steps;
  d["steps_taken"] = r.steps_taken;
  d["halvings"] = r.halvings;
  d["eps_r"] = r.spec.eps_rel;
  d["eps_a"] = r.spec.eps_abs;
  d["max_rel_err"] = r.max_rel_err;
  d["elapsed_s"] = r.elapsed_seconds;
  d["status"] = r.failed ? "failed" : "ok";
  return d;
}

SolverConfig config_from_args(const std::string& mode, const std::string& sequence, int stages,
                              long steps, bool adaptive, double h0, double eps_r, double eps_a,
                              int max_halvings) {
  SolverConfig cfg;
  cfg.sequence = build_sequence(parse_sequence(sequence), stages);
  cfg.method = parse_method(mode);
  cfg.steps = steps;
  cfg.adaptive = adaptive;
  cfg.initial_step = h0;
  cfg.eps_rel = eps_r;
  cfg.eps_abs = eps_a;
  cfg.max_halvings = max_halvings;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Explicit extrapolation ODE solver with error-free transformations";

  m.def("two_sum", [](double a, double b) {
    const SumPair p = two_sum(a, b);
    return py::make_tuple(p.s, p.e);
  });
  m.def("quick_two_sum", [](double a, double b) {
    const SumPair p = quick_two_sum(a, b);
    return py::make_tuple(p.s, p.e);
  });
  m.def("two_prod", [](double a, double b) {
    const SumPair p = two_prod(a, b);
    return py::make_tuple(p.s, p.e);
  });
  m.def("fma_error", [](double a, double x, double y) {
    const FmaTriple t = fma_error(a, x, y);
    return py::make_tuple(t.s, t.e1, t.e2);
  });

  py::class_<DoubleDouble>(m, "DoubleDouble")
      .def(py::init<double>())
      .def(py::init<double, double>())
      .def_readonly("hi", &DoubleDouble::hi)
      .def_readonly("lo", &DoubleDouble::lo)
      .def("__float__", &DoubleDouble::to_double)
      .def("__add__", &dd_add)
      .def("__sub__", &dd_sub)
      .def("__mul__", &dd_mul)
      .def("__truediv__", &dd_div)
      .def("__neg__", &dd_neg)
      .def("__repr__", [](const DoubleDouble& a) {
        return "DoubleDouble(" + std::to_string(a.hi) + ", " + std::to_string(a.lo) + ")";
      });
  m.def("dd_sin", &dd_sin);
  m.def("dd_cos", &dd_cos);
  m.def("dd_exp", &dd_exp);

  m.def("axpy", [](double alpha, const DArray& x, const DArray& y) {
    std::vector<double> xv = to_vec(x);
    std::vector<double> yv = to_vec(y);
    axpy(alpha, xv, yv);
    return from_vec(yv);
  });
  m.def("scal", [](double alpha, const DArray& x) {
    std::vector<double> xv = to_vec(x);
    scal(alpha, xv);
    return from_vec(xv);
  });
  m.def("axpy_error", [](double alpha_v, double alpha_e, const DArray& xv, const DArray& xe,
                         const DArray& yv, const DArray& ye) {
    const CompVector x = to_comp(xv, xe);
    CompVector y = to_comp(yv, ye);
    axpy_error({alpha_v, alpha_e}, x, y);
    return py::make_tuple(from_vec(y.v), from_vec(y.e));
  });
  m.def("scal_error", [](double alpha_v, double alpha_e, const DArray& xv, const DArray& xe) {
    CompVector x = to_comp(xv, xe);
    scal_error({alpha_v, alpha_e}, x);
    return py::make_tuple(from_vec(x.v), from_vec(x.e));
  });
  m.def("moller_update", [](const DArray& s, const DArray& residual, const DArray& z) {
    std::vector<double> sv = to_vec(s);
    std::vector<double> rv = to_vec(residual);
    const std::vector<double> zv = to_vec(z);
    moller_update(sv, rv, zv);
    return py::make_tuple(from_vec(sv), from_vec(rv));
  });
  m.def("norm_inf", [](const DArray& v, const DArray& e) { return norm_inf(to_comp(v, e)); });

  m.def("build_sequence", [](const std::string& kind, int stages) {
    return build_sequence(parse_sequence(kind), stages).counts;
  });
  m.def("coefficients", [](const std::string& kind, int stages) {
    const SupportSequence seq = build_sequence(parse_sequence(kind), stages);
    const CoefficientMatrix c = coefficients(seq);
    std::vector<std::vector<std::pair<double, double>>> rows;
    for (int i = 1; i <= stages; ++i) {
      std::vector<std::pair<double, double>> row;
      for (int j = 2; j <= i; ++j) row.emplace_back(c.at(i, j).v, c.at(i, j).e);
      rows.push_back(std::move(row));
    }
    return rows;
  });
  m.def("propagation_coefficients", [](const std::string& kind, int stages) {
    const PropagationTable t = propagation_coefficients(build_sequence(parse_sequence(kind), stages));
    std::vector<std::vector<double>> rows;
    for (int i = 1; i <= stages; ++i) {
      std::vector<double> row;
      for (int j = 1; j <= i; ++j) row.push_back(t.at(i, j));
      rows.push_back(std::move(row));
    }
    return py::make_tuple(rows, t.max_abs());
  });

  py::class_<IvpProblem>(m, "IvpProblem")
      .def_readonly("name", &IvpProblem::name)
      .def_readonly("dim", &IvpProblem::dim)
      .def_readonly("t_start", &IvpProblem::t_start)
      .def_readonly("t_end", &IvpProblem::t_end)
      .def("analytic",
           [](const IvpProblem& p, double t) {
             if (!p.analytic) throw std::runtime_error("problem has no analytic solution");
             std::vector<DoubleDouble> out(p.dim);
             p.analytic(DoubleDouble(t), out);
             std::vector<double> hi(p.dim), lo(p.dim);
             for (std::size_t k = 0; k < p.dim; ++k) {
               hi[k] = out[k].hi;
               lo[k] = out[k].lo;
             }
             return py::make_tuple(from_vec(hi), from_vec(lo));
           })
      .def("rhs", [](const IvpProblem& p, double t, const DArray& y) {
        std::vector<double> yv = to_vec(y);
        std::vector<double> f(p.dim);
        p.rhs_double(t, yv, f);
        return from_vec(f);
      });
  m.def("linear_problem", &linear_problem, py::arg("n"));
  m.def("resonance_problem", &resonance_problem, py::arg("alpha") = 0.99999999);

  m.def(
      "integrate",
      [](const IvpProblem& problem, const std::string& mode, const std::string& sequence,
         int stages, long steps, bool adaptive, double h0, double eps_r, double eps_a,
         int max_halvings) {
        const SolverConfig cfg = config_from_args(mode, sequence, stages, steps, adaptive, h0,
                                                  eps_r, eps_a, max_halvings);
        return result_to_dict(integrate(problem, cfg));
      },
      py::arg("problem"), py::arg("mode") = "double", py::arg("sequence") = "romberg",
      py::arg("stages") = 4, py::arg("steps") = 0, py::arg("adaptive") = false,
      py::arg("h0") = 0.0, py::arg("eps_r") = 0.0, py::arg("eps_a") = 0.0,
      py::arg("max_halvings") = 40);

  m.def(
      "run_experiment",
      [](const std::string& problem, std::size_t n, double alpha, const std::string& mode,
         const std::string& sequence, int stages, long steps, bool adaptive, double h0,
         double eps_r, double eps_a, int repetitions) {
        ExperimentSpec spec;
        spec.problem = problem;
        spec.n = n;
        spec.alpha = alpha;
        spec.mode = parse_method(mode);
        spec.sequence = parse_sequence(sequence);
        spec.stages = stages;
        spec.steps = steps;
        spec.adaptive = adaptive;
        spec.h0 = h0;
        spec.eps_rel = eps_r;
        spec.eps_abs = eps_a;
        spec.repetitions = repetitions;
        return row_to_dict(run(spec));
      },
      py::arg("problem") = "linear", py::arg("n") = 2048, py::arg("alpha") = 0.99999999,
      py::arg("mode") = "double", py::arg("sequence") = "romberg", py::arg("stages") = 4,
      py::arg("steps") = 0, py::arg("adaptive") = false, py::arg("h0") = 0.0,
      py::arg("eps_r") = 0.0, py::arg("eps_a") = 0.0, py::arg("repetitions") = 1);

  m.def("max_rel_error", [](const DArray& yv, const DArray& ye, const DArray& ref_hi,
                            const DArray& ref_lo) {
    const CompVector approx = to_comp(yv, ye);
    const std::vector<double> hi = to_vec(ref_hi);
    const std::vector<double> lo = to_vec(ref_lo);
    if (hi.size() != lo.size()) throw std::invalid_argument("reference hi/lo size mismatch");
    std::vector<DoubleDouble> ref(hi.size());
    for (std::size_t k = 0; k < hi.size(); ++k) ref[k] = {hi[k], lo[k]};
    return max_rel_error(approx, ref);
  });
}
