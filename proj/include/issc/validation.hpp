#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "issc/certificates.hpp"
#include "issc/solver.hpp"

namespace issc {

// C^1 test function on [a,b] with exact derivative; `offset` is subtracted
// from every value (used to build functions vanishing at a chosen point).
struct TestFunction {
  std::variant<FourierSeries, Polynomial> shape;
  double a = 0.0;
  double b = 1.0;
  double offset = 0.0;

  double value(double x) const;
  double derivative(double x) const;
  double length() const { return b - a; }

  // u(x) - u(c0), which vanishes at c0.
  TestFunction vanishing_at(double c0) const;
};

inline constexpr std::size_t kLemmaPanels = 2048;
inline constexpr double kLemmaTolerance = -1e-8;

struct FunctionNorms {
  double u_sq = 0.0;   // ||u||^2
  double ux_sq = 0.0;  // ||u_x||^2
};

FunctionNorms function_norms(const TestFunction& fn, std::size_t panels = kLemmaPanels);

// (2/(b-a)) ||u||^2 + (b-a) ||u_x||^2 - u(c)^2
double lemma3_check(const TestFunction& fn, double c);

struct Vanishing {
  double c0;
};
struct General {
  double c;
};
using Lemma2Mode = std::variant<Vanishing, General>;

// Vanishing: ((b-a)^2/2) ||u_x||^2 - ||u||^2, requires |u(c0)| <= 1e-10.
// General:   2 u(c)^2 (b-a) + (b-a)^2 ||u_x||^2 - ||u||^2.
double lemma2_check(const TestFunction& fn, const Lemma2Mode& mode);

struct TraceBoundSlacks {
  double left = 0.0;   // ||u_x||^2 - (u(0)^2 - 2 ||u||^2)
  double right = 0.0;  // ||u_x||^2 - (||u||^2 - 2 u(1)^2)
};

TraceBoundSlacks boundary_gradient_bounds_check(const TestFunction& fn);

struct LemmaSuiteReport {
  std::uint64_t seed = 0;
  std::size_t n_samples = 0;
  double worst_lemma3 = 0.0;
  double worst_lemma2_vanishing = 0.0;
  double worst_lemma2_general = 0.0;
  double worst_trace_bounds = 0.0;
  std::size_t violations = 0;

  bool pass() const { return violations == 0; }
  std::string summary() const;
};

// Sample i draws from its own generator seeded by (seed, i), so results do not
// depend on evaluation order.
TestFunction random_test_function(std::uint64_t seed, std::size_t index);
LemmaSuiteReport run_lemma_suite(std::size_t n_samples, std::uint64_t seed);

struct IssSample {
  double time = 0.0;
  double energy = 0.0;
  double bound = 0.0;
  double margin = 0.0;
};

struct IssTolerance {
  double rel_tol = 0.01;
  double abs_tol = 1e-6;
};

struct IssReport {
  BoundForm form = BoundForm::eiiss;
  std::vector<IssSample> samples;
  double max_relative_violation = 0.0;
  bool pass = true;
  std::optional<double> first_violation_time;
  IssTolerance tolerance;
};

struct ProblemData {
  BoundaryParams bc;
  double M1 = 0.0;
  double M2 = 0.0;
  ReactionForm form = ReactionForm::general_bound;
};

// Compares E(t_k) with the certified bound at every recorded time.
// margin = bound (1 + rel_tol) + abs_tol - E. Throws invalid_argument when the
// certificate's path does not apply to the problem or its inequalities fail.
IssReport verify_iss_trajectory(const Trace& trace, const Certificate& cert,
                                const ProblemData& problem, const DisturbanceSignal& d1,
                                const DisturbanceSignal& d2, BoundForm form,
                                const IssTolerance& tolerance = {});

struct TimeWindow {
  double lo;
  double hi;
};

// Least-squares slope of -ln E over the window (default: second half).
double measure_decay_rate(const Trace& trace, std::optional<TimeWindow> window = std::nullopt);

struct ConvergenceCase {
  Scenario scenario;
  std::function<double(double t, double x)> exact;
};

struct ConvergenceRow {
  std::size_t n_cells = 0;
  double error = 0.0;
  std::optional<double> order;  // vs previous row
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;
  std::optional<double> order;  // mean over doublings; empty when degenerate
  bool degenerate = false;

  std::string table() const;
};

ConvergenceResult convergence_study(const ConvergenceCase& study,
                                    const std::vector<std::size_t>& grids);

// u = exp(-mu pi^2 t / 4) cos(pi x / 2) under u_x(0) = 0, u(1) = 0, f = 0.
ConvergenceCase manufactured_heat_case(double mu, double t_end, double dt);

}  // namespace issc
