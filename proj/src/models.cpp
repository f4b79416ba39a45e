#include "issc/models.hpp"

#include <cmath>
#include <limits>

#include "issc/error.hpp"

namespace issc {

std::string form_name(ReactionForm form) {
  return form == ReactionForm::general_bound ? "general_bound" : "linear_form";
}

ReactionTerm make_zero_reaction() {
  ReactionTerm term = make_linear_form(0.0, 0.0);
  term.name = "zero";
  return term;
}

ReactionTerm make_ginzburg_landau(double alpha, double beta) {
  require(std::isfinite(alpha), "alpha must be finite");
  require(beta > 0.0 && std::isfinite(beta), "beta must be positive");
  ReactionTerm term;
  term.name = "ginzburg_landau";
  term.eval = [alpha, beta](double, double, double u, double) {
    return alpha * u - beta * u * u * u;
  };
  term.form = ReactionForm::general_bound;
  term.M1 = alpha;
  term.M2 = 0.0;
  term.growth = GrowthEnvelope{
      [alpha, beta](double, double r) { return std::abs(alpha) * r + beta * r * r * r; }, 1.0};
  return term;
}

ReactionTerm make_generalized_gl(double alpha, double beta, double gamma_c, double lambda) {
  require(std::isfinite(alpha) && std::isfinite(lambda), "alpha and lambda must be finite");
  require(beta > 0.0 && std::isfinite(beta), "beta must be positive");
  require(gamma_c > 0.0 && std::isfinite(gamma_c), "gamma must be positive");
  ReactionTerm term;
  term.name = "generalized_gl";
  term.eval = [alpha, beta, gamma_c, lambda](double, double, double u, double p) {
    const double u2 = u * u;
    return alpha * u - beta * u2 * u - gamma_c * u2 * u2 * u + lambda * p;
  };
  term.form = ReactionForm::general_bound;
  term.M1 = alpha;
  term.M2 = std::abs(lambda);
  term.growth = GrowthEnvelope{
      [alpha, beta, gamma_c, lambda](double, double r) {
        const double r2 = r * r;
        return std::abs(alpha) * r + beta * r2 * r + gamma_c * r2 * r2 * r + std::abs(lambda);
      },
      1.0};
  return term;
}

ReactionTerm make_linear_form(double M1, double M2,
                              std::optional<DistributedDisturbance> distributed) {
  require(std::isfinite(M1) && std::isfinite(M2), "linear coefficients must be finite");
  ReactionTerm term;
  term.name = "linear_form";
  term.form = ReactionForm::linear_form;
  term.M1 = M1;
  term.M2 = M2;
  if (distributed) {
    term.d2 = distributed->signal;
    term.distributed = distributed;
    term.eval = [M1, M2, d = *distributed](double t, double x, double u, double p) {
      return d(t, x) + M1 * u + M2 * p;
    };
  } else {
    term.eval = [M1, M2](double, double, double u, double p) { return M1 * u + M2 * p; };
  }
  return term;
}

BoundaryParams TransportModel::boundary(double a, double b) const {
  BoundaryParams bc{a, 1.0, b, 1.0, mu};
  bc.validate();
  return bc;
}

TransportModel make_transport(double m, double n, double mu) {
  require(mu > 0.0 && std::isfinite(mu), "mu must be positive");
  require(m >= 0.0 && std::isfinite(m), "m must be nonnegative");
  require(std::isfinite(n), "n must be finite");
  TransportModel model;
  model.m = m;
  model.n = n;
  model.mu = mu;
  model.term = make_linear_form(-(m * m / (4.0 * mu) + n), 0.0);
  model.term.name = "transport";
  return model;
}

Field transport_transform(const Field& field, const Grid& grid, double m, double mu,
                          TransformDirection direction) {
  require(mu > 0.0, "mu must be positive");
  require(field.values.size() == grid.n_nodes(), "field length does not match grid");
  const double rate = m / (2.0 * mu);
  Field out{field.time, field.values};
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double weight = std::exp(rate * grid.node(i));
    if (direction == TransformDirection::forward) {
      out.values[i] *= weight;
    } else {
      out.values[i] /= weight;
    }
  }
  return out;
}

double Range::at(std::size_t i) const {
  if (count <= 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
}

GrowthReport check_growth_bound(const ReactionTerm& term, const GrowthSampleSpec& spec) {
  GrowthReport report;
  report.worst_violation = -std::numeric_limits<double>::infinity();

  const auto consider = [&report](double violation, const SamplePoint& point, const char* which) {
    if (violation > report.worst_violation) {
      report.worst_violation = violation;
      report.witness = point;
      report.inequality = which;
    }
  };

  for (std::size_t it = 0; it < std::max<std::size_t>(spec.t.count, 1); ++it) {
    const double t = spec.t.at(it);
    const double d2 = std::abs(term.d2.value(t));
    for (std::size_t ix = 0; ix < std::max<std::size_t>(spec.x.count, 1); ++ix) {
      const double x = spec.x.at(ix);
      for (std::size_t iu = 0; iu < std::max<std::size_t>(spec.u.count, 1); ++iu) {
        const double u = spec.u.at(iu);
        for (std::size_t ip = 0; ip < std::max<std::size_t>(spec.p.count, 1); ++ip) {
          const double p = spec.p.at(ip);
          const SamplePoint point{t, x, u, p};
          const double f = term(t, x, u, p);
          if (term.form == ReactionForm::general_bound) {
            const double rhs = term.M1 * u * u + (d2 + term.M2 * std::abs(p)) * std::abs(u);
            consider(f * u - rhs, point, "f*u <= M1*u^2 + (|d2|+M2*|p|)*|u|");
          } else {
            const double d = term.distributed ? (*term.distributed)(t, x) : 0.0;
            consider(std::abs(f - (d + term.M1 * u + term.M2 * p)), point,
                     "f == d + M1*u + M2*p");
          }
          if (term.growth) {
            const double envelope = term.growth->rho(t, std::abs(u)) *
                                    (1.0 + std::pow(std::abs(p), term.growth->gamma_exp));
            consider(std::abs(f) - envelope, point, "|f| <= rho(t,|u|)*(1+|p|^gamma)");
          }
        }
      }
    }
  }
  report.pass = report.worst_violation <= kGrowthTolerance;
  return report;
}

LiftingPolynomial lifting_polynomial(const BoundaryParams& bc) {
  require(bc.a1 * bc.a1 + bc.a2 * bc.a2 > 0.0, "a1 and a2 must not both vanish");
  require(std::abs(bc.b1 * bc.b1 + bc.b2 * bc.b2 - 1.0) <= 1e-12,
          "lifting polynomial needs normalized Robin data (b1^2 + b2^2 = 1)");
  const double p1 = bc.a1 + 2.0 * bc.a2;
  const double p2 = bc.a1 + 3.0 * bc.a2;
  const double rhs = -bc.a1 * bc.b1 - (bc.a1 + bc.a2) * bc.b2;

  LiftingPolynomial g;
  g.b1 = bc.b1;
  g.b2 = bc.b2;
  if (p1 != 0.0) {
    g.c1 = rhs / p1;
  } else {
    // p1 = 0 and a1^2 + a2^2 > 0 imply p2 = a2 != 0.
    g.c2 = rhs / p2;
  }
  g.g0 = std::abs(g.b1) + std::abs(g.b2) + std::abs(g.c1) + std::abs(g.c2);
  g.g1 = std::abs(g.b2) + 2.0 * std::abs(g.c1) + 3.0 * std::abs(g.c2);
  g.g2 = 2.0 * std::abs(g.c1) + 6.0 * std::abs(g.c2);

  const double right = bc.a1 * g.value(1.0) + bc.a2 * g.derivative(1.0);
  const double left = bc.b1 * g.value(0.0) + bc.b2 * g.derivative(0.0);
  const double scale = 1.0 + std::abs(bc.a1) + std::abs(bc.a2);
  if (std::abs(right) > 1e-12 * scale || std::abs(left - 1.0) > 1e-12) {
    fail(ErrorKind::numerical_failure, "lifting polynomial misses the boundary identities");
  }
  return g;
}

NormalizedRobin normalize_robin(const BoundaryParams& bc, const DisturbanceSignal& d1) {
  const double norm = std::hypot(bc.b1, bc.b2);
  require(norm > 0.0, "b1 and b2 must not both vanish");
  NormalizedRobin out;
  out.bc = bc;
  if (norm == 1.0) {
    out.d1 = d1;
    return out;
  }
  out.bc.b1 = bc.b1 / norm;
  out.bc.b2 = bc.b2 / norm;
  out.d1_scale = 1.0 / norm;
  out.d1 = d1.scaled(out.d1_scale);
  return out;
}

}  // namespace issc
