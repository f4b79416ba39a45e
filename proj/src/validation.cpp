#include "issc/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "issc/error.hpp"
#include "overloaded.hpp"

namespace issc {

using detail::overloaded;

double TestFunction::value(double x) const {
  return std::visit([x](const auto& s) { return s.value(x); }, shape) - offset;
}

double TestFunction::derivative(double x) const {
  return std::visit([x](const auto& s) { return s.derivative(x); }, shape);
}

TestFunction TestFunction::vanishing_at(double c0) const {
  TestFunction out = *this;
  out.offset += value(c0);
  return out;
}

FunctionNorms function_norms(const TestFunction& fn, std::size_t panels) {
  require(fn.b > fn.a, "test function interval must satisfy a < b");
  require(panels >= 1, "quadrature needs at least one panel");
  const double h = fn.length() / double(panels);
  FunctionNorms norms;
  for (std::size_t k = 0; k <= panels; ++k) {
    const double x = (k == panels) ? fn.b : fn.a + double(k) * h;
    const double w = (k == 0 || k == panels) ? 0.5 : 1.0;
    const double u = fn.value(x);
    const double ux = fn.derivative(x);
    norms.u_sq += w * u * u;
    norms.ux_sq += w * ux * ux;
  }
  norms.u_sq *= h;
  norms.ux_sq *= h;
  return norms;
}

namespace {

void require_inside(const TestFunction& fn, double c, const char* what) {
  require(c >= fn.a && c <= fn.b, std::string(what) + " must lie in [a,b]");
}

}  // namespace

double lemma3_check(const TestFunction& fn, double c) {
  require_inside(fn, c, "evaluation point c");
  const FunctionNorms n = function_norms(fn);
  const double L = fn.length();
  const double uc = fn.value(c);
  return 2.0 / L * n.u_sq + L * n.ux_sq - uc * uc;
}

double lemma2_check(const TestFunction& fn, const Lemma2Mode& mode) {
  const double L = fn.length();
  return std::visit(
      overloaded{
          [&](const Vanishing& v) {
            require_inside(fn, v.c0, "vanishing point c0");
            require(std::abs(fn.value(v.c0)) <= 1e-10,
                    "vanishing mode needs u(c0) = 0; build the function with vanishing_at(c0)");
            const FunctionNorms n = function_norms(fn);
            return L * L / 2.0 * n.ux_sq - n.u_sq;
          },
          [&](const General& g) {
            require_inside(fn, g.c, "evaluation point c");
            const FunctionNorms n = function_norms(fn);
            const double uc = fn.value(g.c);
            return 2.0 * uc * uc * L + L * L * n.ux_sq - n.u_sq;
          },
      },
      mode);
}

TraceBoundSlacks boundary_gradient_bounds_check(const TestFunction& fn) {
  require(fn.a == 0.0 && fn.b == 1.0, "trace bounds are stated on [0,1]");
  const FunctionNorms n = function_norms(fn);
  const double u0 = fn.value(0.0);
  const double u1 = fn.value(1.0);
  return {n.ux_sq - (u0 * u0 - 2.0 * n.u_sq), n.ux_sq - (n.u_sq - 2.0 * u1 * u1)};
}

std::string LemmaSuiteReport::summary() const {
  std::ostringstream out;
  out << "lemma-check seed=" << seed << " n=" << n_samples
      << " worst_slack lemma3=" << format_real(worst_lemma3)
      << " lemma2_vanishing=" << format_real(worst_lemma2_vanishing)
      << " lemma2_general=" << format_real(worst_lemma2_general)
      << " trace_bounds=" << format_real(worst_trace_bounds) << " violations=" << violations
      << " status=" << (pass() ? "pass" : "fail");
  return out.str();
}

namespace {

struct LemmaSample {
  TestFunction fn;
  TestFunction unit;  // same coefficients on [0,1]
  double c = 0.0;
  double c0 = 0.0;
};

LemmaSample draw_sample(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(index),
                    std::uint32_t(std::uint64_t(index) >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);

  LemmaSample s;
  const double a = std::uniform_real_distribution<double>(-2.0, 1.9)(rng);
  const double b = std::uniform_real_distribution<double>(a + 0.1, 2.0)(rng);
  const bool fourier = std::bernoulli_distribution(0.5)(rng);

  if (fourier) {
    FourierSeries f;
    f.a0 = coeff(rng);
    f.a.resize(8);
    f.b.resize(8);
    for (auto& v : f.a) v = coeff(rng);
    for (auto& v : f.b) v = coeff(rng);
    FourierSeries on_unit = f;
    f.omega = std::numbers::pi / (b - a);
    f.shift = a;
    s.fn = TestFunction{f, a, b};
    s.unit = TestFunction{on_unit, 0.0, 1.0};
  } else {
    Polynomial p;
    const int degree = std::uniform_int_distribution<int>(0, 6)(rng);
    p.coeffs.resize(std::size_t(degree) + 1);
    for (auto& v : p.coeffs) v = coeff(rng);
    s.fn = TestFunction{p, a, b};
    s.unit = TestFunction{p, 0.0, 1.0};
  }
  std::uniform_real_distribution<double> point(a, b);
  s.c = point(rng);
  s.c0 = point(rng);
  return s;
}

}  // namespace

TestFunction random_test_function(std::uint64_t seed, std::size_t index) {
  return draw_sample(seed, index).fn;
}

LemmaSuiteReport run_lemma_suite(std::size_t n_samples, std::uint64_t seed) {
  require(n_samples >= 1, "lemma suite needs at least one sample");
  LemmaSuiteReport report;
  report.seed = seed;
  report.n_samples = n_samples;
  const double inf = std::numeric_limits<double>::infinity();
  report.worst_lemma3 = report.worst_lemma2_vanishing = report.worst_lemma2_general =
      report.worst_trace_bounds = inf;

  for (std::size_t i = 0; i < n_samples; ++i) {
    const LemmaSample s = draw_sample(seed, i);
    const double l3 = lemma3_check(s.fn, s.c);
    const double l2g = lemma2_check(s.fn, General{s.c});
    const double l2v = lemma2_check(s.fn.vanishing_at(s.c0), Vanishing{s.c0});
    const TraceBoundSlacks tb = boundary_gradient_bounds_check(s.unit);
    const double tbw = std::min(tb.left, tb.right);

    report.worst_lemma3 = std::min(report.worst_lemma3, l3);
    report.worst_lemma2_general = std::min(report.worst_lemma2_general, l2g);
    report.worst_lemma2_vanishing = std::min(report.worst_lemma2_vanishing, l2v);
    report.worst_trace_bounds = std::min(report.worst_trace_bounds, tbw);
    for (double slack : {l3, l2g, l2v, tbw}) {
      if (slack < kLemmaTolerance) ++report.violations;
    }
  }
  return report;
}

IssReport verify_iss_trajectory(const Trace& trace, const Certificate& cert,
                                const ProblemData& problem, const DisturbanceSignal& d1,
                                const DisturbanceSignal& d2, BoundForm form,
                                const IssTolerance& tolerance) {
  require(trace.size() > 0 && trace.energies.size() == trace.size(), "trace is empty");
  require(trace.times.front() == 0.0, "trace must start at t = 0");
  require(tolerance.rel_tol >= 0.0 && tolerance.abs_tol >= 0.0, "tolerances must be nonnegative");

  const bool general_problem = problem.form == ReactionForm::general_bound;
  if (is_general_path(cert.path) != general_problem) {
    fail(ErrorKind::invalid_argument, "certificate path " + path_name(cert.path) +
                                          " does not match the reaction form " +
                                          form_name(problem.form));
  }
  const AssumptionReport check = check_certificate(cert, problem.bc, problem.M1, problem.M2);
  if (!check.pass) {
    const Inequality* worst = check.worst();
    fail(ErrorKind::invalid_argument, "certificate does not hold for this problem: " +
                                          worst->name + " (" + worst->expression +
                                          ") slack " + format_real(worst->slack));
  }

  IssReport report;
  report.form = form;
  report.tolerance = tolerance;
  report.max_relative_violation = -std::numeric_limits<double>::infinity();

  const double E0 = trace.energies.front();
  SquaredSignalAccumulator acc1(d1);
  SquaredSignalAccumulator acc2(d2);
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const double t = trace.times[k];
    const SquaredSignalSummary s1 = acc1.advance(t);
    const SquaredSignalSummary s2 = acc2.advance(t);
    const double bound = iss_bound(cert, E0, s1, s2, t, form);
    const double energy = trace.energies[k];
    IssSample sample{t, energy, bound,
                     bound * (1.0 + tolerance.rel_tol) + tolerance.abs_tol - energy};
    double relative = 0.0;
    if (bound > 0.0) {
      relative = (energy - tolerance.abs_tol - bound) / bound;
    } else if (energy > tolerance.abs_tol) {
      relative = std::numeric_limits<double>::infinity();
    }
    report.max_relative_violation = std::max(report.max_relative_violation, relative);
    if (sample.margin < 0.0) {
      report.pass = false;
      if (!report.first_violation_time) report.first_violation_time = t;
    }
    report.samples.push_back(sample);
  }
  return report;
}

double measure_decay_rate(const Trace& trace, std::optional<TimeWindow> window) {
  require(trace.size() > 0, "trace is empty");
  const TimeWindow w = window.value_or(TimeWindow{0.5 * trace.times.back(), trace.times.back()});
  require(w.lo <= w.hi, "decay window needs lo <= hi");

  std::vector<double> ts, ys;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const double t = trace.times[k];
    if (t < w.lo || t > w.hi) continue;
    const double e = trace.energies[k];
    require(e > 0.0, "decay rate needs positive energies in the window");
    ts.push_back(t);
    ys.push_back(-std::log(e));
  }
  require(ts.size() >= 10, "decay window must contain at least 10 samples");

  const double n = double(ts.size());
  double t_mean = 0.0, y_mean = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    t_mean += ts[i];
    y_mean += ys[i];
  }
  t_mean /= n;
  y_mean /= n;
  double sty = 0.0, stt = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    sty += (ts[i] - t_mean) * (ys[i] - y_mean);
    stt += (ts[i] - t_mean) * (ts[i] - t_mean);
  }
  require(stt > 0.0, "decay window has no time spread");
  return sty / stt;
}

std::string ConvergenceResult::table() const {
  std::ostringstream out;
  out << "n_cells,error,order\n";
  for (const auto& row : rows) {
    out << row.n_cells << "," << format_real(row.error) << ","
        << (row.order ? format_real(*row.order) : std::string("-")) << "\n";
  }
  if (degenerate) {
    out << "observed order: degenerate (zero error)\n";
  } else if (order) {
    out << "observed order: " << format_real(*order) << "\n";
  }
  return out.str();
}

ConvergenceResult convergence_study(const ConvergenceCase& study,
                                    const std::vector<std::size_t>& grids) {
  require(grids.size() >= 3, "convergence study needs at least 3 grids");
  for (std::size_t i = 1; i < grids.size(); ++i) {
    require(grids[i] == 2 * grids[i - 1], "convergence grids must double successively");
  }
  require(static_cast<bool>(study.exact), "convergence study needs an exact solution");

  ConvergenceResult result;
  for (std::size_t n : grids) {
    Scenario scenario = study.scenario;
    scenario.grid = build_grid(n);
    scenario.store_fields = true;
    scenario.output_stride = std::numeric_limits<std::size_t>::max();
    const Trace trace = simulate(scenario);
    const Field& final_state = trace.fields.back();
    double error = 0.0;
    for (std::size_t i = 0; i < scenario.grid.n_nodes(); ++i) {
      error = std::max(error, std::abs(final_state.values[i] -
                                       study.exact(final_state.time, scenario.grid.node(i))));
    }
    result.rows.push_back({n, error, std::nullopt});
  }

  result.degenerate = std::any_of(result.rows.begin(), result.rows.end(),
                                  [](const ConvergenceRow& r) { return r.error == 0.0; });
  if (result.degenerate) return result;

  double sum = 0.0;
  for (std::size_t i = 1; i < result.rows.size(); ++i) {
    const double order = std::log2(result.rows[i - 1].error / result.rows[i].error);
    result.rows[i].order = order;
    sum += order;
  }
  result.order = sum / double(result.rows.size() - 1);
  return result;
}

ConvergenceCase manufactured_heat_case(double mu, double t_end, double dt) {
  ConvergenceCase study;
  study.scenario.bc = BoundaryParams{1.0, 0.0, 0.0, 1.0, mu};
  study.scenario.term = make_zero_reaction();
  study.scenario.d1 = DisturbanceSignal::zero();
  FourierSeries mode;
  mode.a = {1.0};
  mode.omega = std::numbers::pi / 2.0;
  study.scenario.u0.kind = mode;
  study.scenario.t_end = t_end;
  study.scenario.dt = dt;
  study.exact = [mu](double t, double x) {
    constexpr double pi = std::numbers::pi;
    return std::exp(-mu * pi * pi * t / 4.0) * std::cos(pi * x / 2.0);
  };
  return study;
}

}  // namespace issc
