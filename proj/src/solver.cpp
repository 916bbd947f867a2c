#include "exode/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "exode/dd.hpp"
#include "exode/eft.hpp"

namespace exode {

namespace {

constexpr double kUnitRoundoff = 0x1p-53;

inline DoubleDouble to_dd(const CompScalar& s) { return {s.v, s.e}; }
inline CompScalar to_cs(const DoubleDouble& d) { return {d.hi, d.lo}; }

// Compensated scalar advance: exact two_sum on the principal parts, error
// terms folded in.
inline CompScalar cs_advance(const CompScalar& t, const CompScalar& h) {
  const SumPair p = two_sum(t.v, h.v);
  return {p.s, (t.e + h.e) + p.e};
}

}  // namespace

Tableau::Tableau(const SupportSequence& seq, std::size_t n)
    : stages(seq.stages()),
      dim(n),
      t(tri_size(seq.stages())),
      corr(tri_size(seq.stages()), 0.0),
      corr_rel(tri_size(seq.stages()), 0.0),
      c(coefficients(seq)) {}

bool check_convergence(double corr, const CompVector& t_prev, double eps_rel, double eps_abs) {
  return corr <= eps_rel * norm_inf(t_prev) + eps_abs;
}

PlateauDecision zero_tol_accept(std::span<const double> corr_history, bool at_final_stage,
                                bool adaptive, double safety) {
  PlateauDecision d;
  const std::size_t m = corr_history.size();
  if (m == 0) {
    // Single-stage sequences carry no correction to judge.
    d.action = at_final_stage ? PlateauDecision::Action::Accept : PlateauDecision::Action::Continue;
    d.accept_index = 0;
    return d;
  }
  const double last = corr_history[m - 1];
  if (last == 0.0) {
    d.action = PlateauDecision::Action::Accept;
    d.accept_index = static_cast<int>(m);
    return d;
  }

  if (!adaptive) {
    // Fixed-step runs build the whole tableau and take the deepest
    // diagonal; only an exactly zero correction (handled above) stops
    // early, since then the deeper entries cannot differ.
    if (at_final_stage) {
      d.action = PlateauDecision::Action::Accept;
      d.accept_index = static_cast<int>(m);
    }
    return d;
  }

  std::size_t idx_min = 0;
  for (std::size_t k = 1; k < m; ++k) {
    if (corr_history[k] < corr_history[idx_min]) idx_min = k;
  }
  const double cmin = corr_history[idx_min];
  const bool at_floor = cmin <= safety * kUnitRoundoff;
  const bool rise = m >= 2 && last >= corr_history[m - 2];

  // A rise counts as the round-off plateau only once the minimum sits at
  // the round-off floor of its own entry; a rise above the floor is a
  // pre-asymptotic hump and the deeper stages get their chance.  A step
  // that exhausts the stages without reaching the floor has failed.
  if (rise && at_floor) {
    d.action = PlateauDecision::Action::Accept;
    d.accept_index = static_cast<int>(idx_min + 1);
    return d;
  }
  if (at_final_stage) {
    if (at_floor) {
      d.action = PlateauDecision::Action::Accept;
      d.accept_index = static_cast<int>(idx_min + 1);
    } else {
      d.action = PlateauDecision::Action::Fail;
    }
  }
  return d;
}

CompVector initial_approx(const IvpProblem& problem, const CompScalar& t_old,
                          const CompVector& y, const CompScalar& step, int substeps,
                          Method mode) {
  const std::size_t n = y.size();
  if (n != problem.dim) {
    throw std::invalid_argument("initial_approx: state dimension mismatch");
  }
  if (substeps < 2 || substeps % 2 != 0) {
    throw std::invalid_argument("initial_approx: substep count must be even and >= 2");
  }
  const int w = substeps;

  switch (mode) {
    case Method::Double: {
      const double h = step.v / static_cast<double>(w);
      std::vector<double> ym(y.v);
      std::vector<double> yk(y.v);
      std::vector<double> yn(n);
      std::vector<double> f(n);
      problem.rhs_double(t_old.v, ym, f);
      axpy(h, f, yk);
      for (int k = 1; k < w; ++k) {
        const double tk = t_old.v + static_cast<double>(k) * h;
        problem.rhs_double(tk, yk, f);
        axpy(2.0 * h, f, ym);
        std::swap(ym, yk);
      }
      // Smoothing: T = (y_{w-1} + 2 y_w + y_{w+1}) / 4.
      problem.rhs_double(t_old.v + static_cast<double>(w) * h, yk, f);
      yn = ym;
      axpy(2.0 * h, f, yn);
      axpy(2.0, yk, ym);
      axpy(1.0, yn, ym);
      scal(0.25, ym);
      CompVector out(n);
      out.v = std::move(ym);
      return out;
    }

    case Method::DMoller: {
      const double h = step.v / static_cast<double>(w);
      std::vector<double> ym(y.v);
      std::vector<double> yk(y.v);
      std::vector<double> rm(n, 0.0);  // residual of the even-index chain
      std::vector<double> rk(n, 0.0);  // residual of the odd-index chain
      std::vector<double> f(n);
      std::vector<double> z(n);
      problem.rhs_double(t_old.v, ym, f);
      for (std::size_t q = 0; q < n; ++q) z[q] = h * f[q];
      moller_update(yk, rk, z);
      for (int k = 1; k < w; ++k) {
        const double tk = t_old.v + static_cast<double>(k) * h;
        problem.rhs_double(tk, yk, f);
        const double th = 2.0 * h;
        for (std::size_t q = 0; q < n; ++q) z[q] = th * f[q];
        moller_update(ym, rm, z);
        std::swap(ym, yk);
        std::swap(rm, rk);
      }
      problem.rhs_double(t_old.v + static_cast<double>(w) * h, yk, f);
      std::vector<double> yn(ym);
      std::vector<double> rn(rm);
      const double th = 2.0 * h;
      for (std::size_t q = 0; q < n; ++q) z[q] = th * f[q];
      moller_update(yn, rn, z);
      axpy(2.0, yk, ym);
      axpy(1.0, yn, ym);
      scal(0.25, ym);
      CompVector out(n);
      out.v = std::move(ym);
      return out;
    }

    case Method::Deft:
    case Method::Deft2: {
      const CompScalar h = to_cs(dd_div(to_dd(step), DoubleDouble(static_cast<double>(w))));
      const CompScalar two_h{2.0 * h.v, 2.0 * h.e};  // exact power-of-two scaling
      CompVector ym = y;
      CompVector yk = y;
      CompVector f(n);
      std::vector<DoubleDouble> ydd;
      std::vector<DoubleDouble> fdd;
      if (mode == Method::Deft) {
        ydd.resize(n);
        fdd.resize(n);
      }
      CompScalar t = t_old;

      auto eval_f = [&](const CompVector& state) {
        if (mode == Method::Deft) {
          // The (value, error) pairs feed the DD-precision f as-is; the
          // error parts stay far below one ulp of the values, so the DD
          // kernels lose nothing without a renormalization pass.
          const SumPair tn = two_sum(t.v, t.e);
          if (problem.rhs_dd_split) {
            problem.rhs_dd_split({tn.s, tn.e}, state.v, state.e, f.v, f.e);
            return;
          }
          for (std::size_t q = 0; q < n; ++q) {
            ydd[q] = {state.v[q], state.e[q]};
          }
          problem.rhs_dd({tn.s, tn.e}, ydd, fdd);
          for (std::size_t q = 0; q < n; ++q) {
            f.v[q] = fdd[q].hi;
            f.e[q] = fdd[q].lo;
          }
        } else {
          // Plain binary64 f of the principal parts; the error fields do
          // not reach the right-hand side and e_f stays zero.
          problem.rhs_double(t.v, state.v, f.v);
          std::fill(f.e.begin(), f.e.end(), 0.0);
        }
      };

      eval_f(ym);
      axpy_error(h, f, yk);
      for (int k = 1; k < w; ++k) {
        t = cs_advance(t, h);
        eval_f(yk);
        axpy_error(two_h, f, ym);
        std::swap(ym, yk);
      }
      t = cs_advance(t, h);
      eval_f(yk);
      CompVector yn = ym;
      axpy_error(two_h, f, yn);
      axpy_error({2.0, 0.0}, yk, ym);
      axpy_error({1.0, 0.0}, yn, ym);
      scal_error({0.25, 0.0}, ym);
      return ym;
    }

    case Method::DD: {
      const DoubleDouble hdd = dd_div(to_dd(step), DoubleDouble(static_cast<double>(w)));
      const DoubleDouble two_h{2.0 * hdd.hi, 2.0 * hdd.lo};
      std::vector<DoubleDouble> ym(n);
      std::vector<DoubleDouble> yk(n);
      std::vector<DoubleDouble> f(n);
      for (std::size_t q = 0; q < n; ++q) {
        const SumPair p = two_sum(y.v[q], y.e[q]);
        ym[q] = {p.s, p.e};
      }
      DoubleDouble t = to_dd(t_old);
      problem.rhs_dd(t, ym, f);
      for (std::size_t q = 0; q < n; ++q) yk[q] = dd_add(ym[q], dd_mul(hdd, f[q]));
      for (int k = 1; k < w; ++k) {
        t = dd_add(t, hdd);
        problem.rhs_dd(t, yk, f);
        for (std::size_t q = 0; q < n; ++q) ym[q] = dd_add(ym[q], dd_mul(two_h, f[q]));
        std::swap(ym, yk);
      }
      t = dd_add(t, hdd);
      problem.rhs_dd(t, yk, f);
      CompVector out(n);
      for (std::size_t q = 0; q < n; ++q) {
        const DoubleDouble yn = dd_add(ym[q], dd_mul(two_h, f[q]));
        DoubleDouble s = dd_add(ym[q], DoubleDouble{2.0 * yk[q].hi, 2.0 * yk[q].lo});
        s = dd_add(s, yn);
        out.v[q] = 0.25 * s.hi;
        out.e[q] = 0.25 * s.lo;
      }
      return out;
    }
  }
  throw std::logic_error("initial_approx: unknown method");
}

void extrapolate_row(Tableau& tab, int row, Method mode) {
  if (row < 2 || row > tab.stages) {
    throw std::invalid_argument("extrapolate_row: row out of range");
  }
  const int i = row;
  const std::size_t n = tab.dim;
  CompVector r(n);
  std::vector<double> rowres;  // Moller residual of the row's T chain
  if (mode == Method::DMoller) rowres.assign(n, 0.0);

  for (int j = 2; j <= i; ++j) {
    const CompVector& up = tab.entry(i - 1, j - 1);
    const CompVector& prev = tab.entry(i, j - 1);
    const CompScalar& c = tab.c.at(i, j);
    CompVector& out = tab.entry(i, j);

    switch (mode) {
      case Method::Double: {
        r = prev;
        axpy(-1.0, up.v, r.v);
        scal(c.v, r.v);
        out = prev;
        axpy(1.0, r.v, out.v);
        break;
      }
      case Method::DMoller: {
        r = prev;
        axpy(-1.0, up.v, r.v);
        scal(c.v, r.v);
        out = prev;
        moller_update(out.v, rowres, r.v);
        break;
      }
      case Method::Deft:
      case Method::Deft2: {
        out = prev;
        r = prev;
        axpy_error({-1.0, 0.0}, up, r);
        scal_error(c, r);
        axpy_error({1.0, 0.0}, r, out);
        break;
      }
      case Method::DD: {
        out = prev;
        const DoubleDouble cdd = to_dd(c);
        for (std::size_t q = 0; q < n; ++q) {
          const DoubleDouble tp{prev.v[q], prev.e[q]};
          const DoubleDouble tu{up.v[q], up.e[q]};
          const DoubleDouble rr = dd_mul(cdd, dd_sub(tp, tu));
          r.v[q] = rr.hi;
          r.e[q] = rr.lo;
          const DoubleDouble tt = dd_add(tp, rr);
          out.v[q] = tt.hi;
          out.e[q] = tt.lo;
        }
        break;
      }
    }
    tab.corr[tri_index(i, j)] = norm_inf(r);
    const CompVector& tij = tab.entry(i, j);
    double rel = 0.0;
    for (std::size_t q = 0; q < n; ++q) {
      const double rq = std::abs(r.v[q] + r.e[q]);
      if (rq == 0.0) continue;
      const double tq = std::abs(tij.v[q] + tij.e[q]);
      const double ratio = rq / std::max(tq, 0x1p-1021);
      if (std::isnan(ratio)) {
        rel = ratio;
        break;
      }
      if (ratio > rel) rel = ratio;
    }
    tab.corr_rel[tri_index(i, j)] = rel;
  }
}

ExtrapolationStepper::ExtrapolationStepper(const IvpProblem& problem, const SolverConfig& config)
    : problem_(problem), config_(config), tableau_(config.sequence, problem.dim) {
  if (config_.sequence.stages() < 1) {
    throw std::invalid_argument("ExtrapolationStepper: empty support sequence");
  }
}

StepStats ExtrapolationStepper::advance_step(const CompScalar& t, CompVector& y,
                                             const CompScalar& step) {
  const int L = config_.sequence.stages();
  const bool eps_mode = config_.eps_rel > 0.0 || config_.eps_abs > 0.0;
  StepStats stats;
  CompScalar H = step;

  for (int halvings = 0;; ++halvings) {
    diag_corr_.clear();
    bool accepted = false;
    bool failed = false;
    int accept_i = 0;
    int accept_j = 0;
    int rows_built = 0;
    double corr_acc = 0.0;

    for (int i = 1; i <= L && !accepted && !failed; ++i) {
      tableau_.entry(i, 1) = initial_approx(
          problem_, t, y, H, config_.sequence.counts[static_cast<std::size_t>(i - 1)],
          config_.method);
      rows_built = i;
      if (i < 2) {
        if (L == 1) {
          // Nothing to extrapolate or judge; T_11 is the step result.
          accepted = true;
          accept_i = accept_j = 1;
        }
        continue;
      }
      extrapolate_row(tableau_, i, config_.method);
      if (eps_mode) {
        for (int j = 2; j <= i && !accepted; ++j) {
          if (check_convergence(tableau_.correction(i, j), tableau_.entry(i, j - 1),
                                config_.eps_rel, config_.eps_abs)) {
            accepted = true;
            accept_i = i;
            accept_j = j;
            corr_acc = tableau_.correction(i, j);
          }
        }
        if (!accepted && i == L) {
          if (config_.adaptive) {
            failed = true;
          } else {
            // Definitely stopped at L: take the deepest entry.
            accepted = true;
            accept_i = accept_j = L;
            corr_acc = tableau_.correction(L, L);
          }
        }
      } else {
        double ci = tableau_.relative_correction(i, i);
        if (!std::isfinite(ci)) {
          // The midpoint sweeps blew up.  Reject the attempt in adaptive
          // mode; in fixed mode keep the row out of the plateau minimum.
          if (config_.adaptive) {
            failed = true;
            continue;
          }
          ci = std::numeric_limits<double>::infinity();
        }
        diag_corr_.push_back(ci);
        const PlateauDecision d = zero_tol_accept(diag_corr_, i == L, config_.adaptive,
                                                  config_.plateau_safety);
        if (d.action == PlateauDecision::Action::Accept) {
          accepted = true;
          accept_i = accept_j = d.accept_index + 1;
          corr_acc = accept_i >= 2 ? tableau_.correction(accept_i, accept_i) : 0.0;
        } else if (d.action == PlateauDecision::Action::Fail) {
          failed = true;
        }
      }
    }

    if (accepted) {
      y = tableau_.entry(accept_i, accept_j);
      stats.accepted = true;
      stats.stages_used = rows_built;
      stats.accept_stage = accept_i;
      stats.halvings = halvings;
      stats.corr_at_accept = corr_acc;
      stats.step_used = H.v + H.e;
      stats.t_reached = (t.v + t.e) + stats.step_used;
      return stats;
    }

    // Adaptive rejection: retry with exactly half the step.
    stats.halvings = halvings + 1;
    if (halvings + 1 > config_.max_halvings) {
      stats.accepted = false;
      return stats;
    }
    H = CompScalar{0.5 * H.v, 0.5 * H.e};
    if (H.v + H.e < config_.min_step || H.v + H.e <= 0.0) {
      stats.accepted = false;
      return stats;
    }
  }
}

IntegrationResult integrate(const IvpProblem& problem, const SolverConfig& config) {
  if (!config.adaptive && config.steps < 1) {
    throw std::invalid_argument("integrate: fixed mode requires steps >= 1");
  }
  if (config.adaptive && !(config.initial_step > 0.0)) {
    throw std::invalid_argument("integrate: adaptive mode requires initial_step > 0");
  }
  if (config.adaptive && config.max_halvings < 1) {
    throw std::invalid_argument("integrate: adaptive mode requires max_halvings >= 1");
  }

  const auto clock_start = std::chrono::steady_clock::now();
  const std::size_t n = problem.dim;
  const bool carries_error =
      config.method == Method::Deft || config.method == Method::Deft2 || config.method == Method::DD;

  IntegrationResult res;
  res.accept_stage_histogram.assign(static_cast<std::size_t>(config.sequence.stages()) + 1, 0);
  CompVector y(n);
  for (std::size_t q = 0; q < n; ++q) {
    if (carries_error) {
      y.v[q] = problem.y0[q].hi;
      y.e[q] = problem.y0[q].lo;
    } else {
      y.v[q] = problem.y0[q].to_double();
    }
  }

  ExtrapolationStepper stepper(problem, config);
  const DoubleDouble t_start(problem.t_start);
  const DoubleDouble t_end(problem.t_end);
  DoubleDouble t_now = t_start;

  if (!config.adaptive) {
    const long N = config.steps;
    const DoubleDouble h_base =
        dd_div(dd_sub_accurate(t_end, t_start), DoubleDouble(static_cast<double>(N)));
    for (long k = 0; k < N; ++k) {
      t_now = dd_add_accurate(t_start, dd_mul_d(h_base, static_cast<double>(k)));
      const DoubleDouble h_step = (k == N - 1) ? dd_sub_accurate(t_end, t_now) : h_base;
      const StepStats st = stepper.advance_step(to_cs(t_now), y, to_cs(h_step));
      res.steps_taken += 1;
      res.halvings += st.halvings;
      res.accept_stage_histogram[static_cast<std::size_t>(st.accept_stage)] += 1;
    }
    res.t = to_cs(t_end);
  } else {
    const DoubleDouble base(config.initial_step);
    for (;;) {
      const DoubleDouble rem = dd_sub_accurate(t_end, t_now);
      if (!(rem.hi > 0.0)) break;
      const bool clamped = !dd_lt(base, rem);
      const DoubleDouble h_try = clamped ? rem : base;
      const StepStats st = stepper.advance_step(to_cs(t_now), y, to_cs(h_try));
      if (!st.accepted) {
        res.status = IntegrationResult::Status::Breakdown;
        res.halvings += st.halvings;
        break;
      }
      res.steps_taken += 1;
      res.halvings += st.halvings;
      res.accept_stage_histogram[static_cast<std::size_t>(st.accept_stage)] += 1;
      if (clamped && st.halvings == 0) {
        t_now = t_end;
      } else {
        const DoubleDouble used{std::ldexp(h_try.hi, -st.halvings),
                                std::ldexp(h_try.lo, -st.halvings)};
        t_now = dd_add_accurate(t_now, used);
      }
    }
    res.t = to_cs(t_now);
  }

  res.y = std::move(y);
  const auto clock_end = std::chrono::steady_clock::now();
  res.elapsed_seconds = std::chrono::duration<double>(clock_end - clock_start).count();
  return res;
}

}  // namespace exode
