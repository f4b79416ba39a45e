#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "issc/core.hpp"
#include "issc/models.hpp"

namespace issc {

// A1_1, A1_2, A2_1 bound a general nonlinearity; A3a, A3b, A3c exploit the
// linear form. A1_*, A3a, A3b need a2 != 0; A2_1 and A3c need a2 == 0.
enum class AssumptionPath { A1_1, A1_2, A2_1, A3a, A3b, A3c };

std::string path_name(AssumptionPath path);
std::optional<AssumptionPath> parse_path(std::string_view name);

// General-bound paths use three splits and (eps0, eps1, eps2); the linear
// paths use two splits and (eps1, eps2).
bool is_general_path(AssumptionPath path);
std::size_t split_count(AssumptionPath path);
// B-variants weight the boundary at x=0 instead of x=1.
bool is_b_variant(AssumptionPath path);
bool requires_dirichlet_right(AssumptionPath path);

struct SplitPoint {
  double first = 0.0;
  double second = 0.0;
};

struct WellPosednessReport {
  // (a1 + a2) b1 != a1 b2
  bool neq_condition = false;
  // Only evaluated when a2 b2 == 0.
  std::optional<bool> sign_condition;
  std::optional<SplitPoint> split_plus_ab1;  // (A1, A2)
  std::optional<SplitPoint> split_plus_ab2;  // (B1, B2)

  bool ok() const;
};

WellPosednessReport check_wellposedness_params(const BoundaryParams& bc);

// Minimum slack of the three (+ab1) / (+ab2) inequalities at a given point
// (negative when violated). Requires a2 b2 != 0.
double plus_ab1_slack(const BoundaryParams& bc, double A1, double A2);
double plus_ab2_slack(const BoundaryParams& bc, double B1, double B2);

struct Inequality {
  std::string name;
  std::string expression;
  double lhs = 0.0;
  double rhs = 0.0;
  bool strict = false;
  // rhs - lhs, minus the strictness margin for strict inequalities.
  double slack = 0.0;

  bool holds() const { return slack >= 0.0; }
};

struct AssumptionReport {
  AssumptionPath path{};
  bool pass = false;
  std::vector<Inequality> inequalities;

  const Inequality* find(std::string_view name) const;
  const Inequality* worst() const;
};

// 1e-9 * mu
double default_strictness_delta(double mu);

// Evaluates the inequalities of `path` at the given splits. `eps` is either
// the assumption-level set ({eps0} for general paths, {} for linear paths) or
// the full certificate set ({eps0, eps1, eps2} resp. {eps1, eps2}), in which
// case the constant-construction inequalities are evaluated too.
AssumptionReport check_assumption(AssumptionPath path, const BoundaryParams& bc, double M1,
                                  double M2, std::span<const double> splits,
                                  std::span<const double> eps,
                                  std::optional<double> strictness_delta = std::nullopt);

struct SynthesisOptions {
  double gain_cap_boundary = 100.0;
  double gain_cap_distributed = 100.0;
  // Unset means default_strictness_delta(mu).
  std::optional<double> strictness_delta;
  std::size_t split_steps = 200;
  std::size_t eps_points = 181;
  double eps_min = 1e-6;
  double eps_max = 1e3;
};

struct Slack {
  std::string name;
  double value = 0.0;
};

struct Certificate {
  AssumptionPath path{};
  std::vector<double> splits;
  // General paths: {eps0, eps1, eps2, eps3} with eps3 = eps0.
  // Linear paths: {eps1, eps2}.
  std::vector<double> eps;
  double c_decay = 0.0;
  double c_gain_boundary = 0.0;
  double c_gain_distributed = 0.0;
  std::vector<Slack> slacks;
  SynthesisOptions options;

  // Named accessors; throw for eps0/eps3 on linear paths.
  double eps0() const;
  double eps1() const;
  double eps2() const;
  double eps3() const;
};

struct CertificateConstants {
  double c_decay = 0.0;
  double c_gain_boundary = 0.0;
  double c_gain_distributed = 0.0;
};

// Rebuilds the decay and gain constants from the stored splits and eps.
CertificateConstants recompute_constants(const Certificate& cert, const BoundaryParams& bc,
                                         double M1, double M2);

// Full inequality set of the certificate (assumption plus constant
// construction) evaluated against the given problem data.
AssumptionReport check_certificate(const Certificate& cert, const BoundaryParams& bc, double M1,
                                   double M2);

struct Infeasible {
  std::string reason;
  std::string binding_constraint;
  std::optional<AssumptionPath> path;
};

struct SynthesisResult {
  std::optional<Certificate> certificate;
  std::optional<Infeasible> infeasible;

  bool feasible() const { return certificate.has_value(); }
};

std::vector<AssumptionPath> candidate_paths(const BoundaryParams& bc, ReactionForm form);

// Grid search over the split simplex and log-spaced eps grids; returns the
// feasible point with the largest decay constant.
SynthesisResult synthesize_certificate(const BoundaryParams& bc, double M1, double M2,
                                       ReactionForm form, const SynthesisOptions& options = {});

// Same search restricted to one path.
SynthesisResult synthesize_on_path(AssumptionPath path, const BoundaryParams& bc, double M1,
                                   double M2, const SynthesisOptions& options = {});

// Log grid eps_min * (eps_max/eps_min)^(k/(points-1)).
std::vector<double> eps_grid(const SynthesisOptions& options);

enum class BoundForm { eiiss, eiss };

std::string bound_form_name(BoundForm form);

// Integral of d(s)^2 over [0,t] by adaptive trapezoid, and the largest d^2 seen
// on the quadrature samples.
struct SquaredSignalSummary {
  double integral = 0.0;
  double sup = 0.0;
};

SquaredSignalSummary summarize_squared(const DisturbanceSignal& signal, double t,
                                       double rel_tol = 1e-8);

// eiiss: E0 e^{-c t} + C1 int d1^2 + C2 int d2^2
// eiss:  E0 e^{-c t} + (1 - e^{-c t}) (C1 sup d1^2 + C2 sup d2^2)
double iss_bound(const Certificate& cert, double E0, const DisturbanceSignal& d1,
                 const DisturbanceSignal& d2, double t, BoundForm form);

// Bound from precomputed disturbance summaries on [0,t].
double iss_bound(const Certificate& cert, double E0, const SquaredSignalSummary& d1,
                 const SquaredSignalSummary& d2, double t, BoundForm form);

// Running version of summarize_squared for increasing evaluation times.
class SquaredSignalAccumulator {
 public:
  explicit SquaredSignalAccumulator(const DisturbanceSignal& signal, double rel_tol = 1e-8);

  // Extends the summary to [0,t]; t must not decrease between calls.
  const SquaredSignalSummary& advance(double t);

 private:
  DisturbanceSignal signal_;
  double rel_tol_;
  double t_ = 0.0;
  SquaredSignalSummary summary_;
};

}  // namespace issc
