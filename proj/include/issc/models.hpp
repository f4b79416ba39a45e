#pragma once

#include <functional>
#include <optional>
#include <string>

#include "issc/core.hpp"

namespace issc {

enum class ReactionForm {
  // f(t,x,u,p) u <= M1 u^2 + (|d2(t)| + M2 |p|) |u|
  general_bound,
  // f(t,x,u,p) = d(t,x) + M1 u + M2 p
  linear_form,
};

std::string form_name(ReactionForm form);

// Optional growth envelope |f(t,x,u,p)| <= rho(t,|u|) (1 + |p|^gamma_exp).
struct GrowthEnvelope {
  std::function<double(double t, double r)> rho;
  double gamma_exp = 1.0;
};

struct ReactionTerm {
  std::string name;
  std::function<double(double t, double x, double u, double p)> eval;
  ReactionForm form = ReactionForm::general_bound;
  double M1 = 0.0;
  double M2 = 0.0;
  DisturbanceSignal d2;
  std::optional<DistributedDisturbance> distributed;
  std::optional<GrowthEnvelope> growth;

  double operator()(double t, double x, double u, double p) const { return eval(t, x, u, p); }
};

ReactionTerm make_zero_reaction();

// f = alpha u - beta |u|^2 u, with M1 = alpha, M2 = 0.
ReactionTerm make_ginzburg_landau(double alpha, double beta);

// f = alpha u - beta |u|^2 u - gamma_c |u|^4 u + lambda p, with M1 = alpha,
// M2 = |lambda|.
ReactionTerm make_generalized_gl(double alpha, double beta, double gamma_c, double lambda);

// f = d(t,x) + M1 u + M2 p. d2 is the envelope signal of the distributed term.
ReactionTerm make_linear_form(double M1, double M2,
                              std::optional<DistributedDisturbance> distributed = std::nullopt);

// u_t = mu u_xx - m u_x - n u rewritten for w = exp(m x / (2 mu)) u:
//   w_t = mu w_xx - (m^2/(4 mu) + n) w
//   w_x(1) = -a w(1),   w_x(0) = -b w(0) + d(t)
struct TransportModel {
  ReactionTerm term;
  double m = 0.0;
  double n = 0.0;
  double mu = 1.0;

  // Exponent rate m/(2 mu) of the multiplier exp(rate x) mapping u to w.
  double weight_rate() const { return m / (2.0 * mu); }
  // Robin records in w-coordinates: a1 = a, a2 = 1, b1 = b, b2 = 1.
  BoundaryParams boundary(double a, double b) const;
};

TransportModel make_transport(double m, double n, double mu);

enum class TransformDirection { forward, inverse };

// forward: w_i = exp(m x_i/(2 mu)) u_i; inverse divides.
Field transport_transform(const Field& field, const Grid& grid, double m, double mu,
                          TransformDirection direction);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 1;

  double at(std::size_t i) const;
};

struct GrowthSampleSpec {
  Range t{0.0, 0.0, 1};
  Range x{0.0, 1.0, 3};
  Range u{-5.0, 5.0, 41};
  Range p{-5.0, 5.0, 41};
};

struct SamplePoint {
  double t = 0.0;
  double x = 0.0;
  double u = 0.0;
  double p = 0.0;
};

struct GrowthReport {
  bool pass = true;
  double worst_violation = 0.0;
  SamplePoint witness;
  std::string inequality;
};

inline constexpr double kGrowthTolerance = 1e-12;

// Lattice check of the reaction's declared bound (and of the growth envelope
// when one is attached). The t range is sampled as a lattice as well; counts
// of 1 sample the range's lower end.
GrowthReport check_growth_bound(const ReactionTerm& term, const GrowthSampleSpec& spec);

// g(x) = b1 + b2 x + c1 x^2 + c2 x^3 homogenizing the Robin data.
struct LiftingPolynomial {
  double b1 = 0.0;
  double b2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double g0 = 0.0;  // sup |g|
  double g1 = 0.0;  // sup |g_x|
  double g2 = 0.0;  // sup |g_xx|

  double value(double x) const { return b1 + x * (b2 + x * (c1 + x * c2)); }
  double derivative(double x) const { return b2 + x * (2.0 * c1 + 3.0 * c2 * x); }
  double second_derivative(double x) const { return 2.0 * c1 + 6.0 * c2 * x; }
};

// Requires b1^2 + b2^2 = 1 (see normalize_robin).
LiftingPolynomial lifting_polynomial(const BoundaryParams& bc);

struct NormalizedRobin {
  BoundaryParams bc;
  double d1_scale = 1.0;
  DisturbanceSignal d1;
};

NormalizedRobin normalize_robin(const BoundaryParams& bc, const DisturbanceSignal& d1);

}  // namespace issc
