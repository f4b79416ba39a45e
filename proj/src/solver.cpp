#include "issc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "issc/error.hpp"
#include "overloaded.hpp"

namespace issc {

using detail::overloaded;

double InitialCondition::value(double x) const {
  return std::visit(overloaded{
                        [](const Zero&) { return 0.0; },
                        [x](const FourierSeries& f) { return f.value(x); },
                        [x](const Polynomial& p) { return p.value(x); },
                        [x](const Table& tab) {
                          if (x <= tab.x.front()) return tab.u.front();
                          if (x >= tab.x.back()) return tab.u.back();
                          const auto it = std::upper_bound(tab.x.begin(), tab.x.end(), x);
                          const std::size_t hi = std::size_t(it - tab.x.begin());
                          const std::size_t lo = hi - 1;
                          const double w = (x - tab.x[lo]) / (tab.x[hi] - tab.x[lo]);
                          return tab.u[lo] + w * (tab.u[hi] - tab.u[lo]);
                        },
                    },
                    kind);
}

Field InitialCondition::sample(const Grid& grid) const {
  if (const auto* tab = std::get_if<Table>(&kind)) {
    require(!tab->x.empty() && tab->x.size() == tab->u.size(),
            "initial table needs matching, nonempty x and u");
    for (std::size_t i = 1; i < tab->x.size(); ++i) {
      require(tab->x[i] > tab->x[i - 1], "initial table x must be strictly increasing");
    }
  }
  Field field{0.0, std::vector<double>(grid.n_nodes())};
  for (std::size_t i = 0; i < grid.n_nodes(); ++i) field.values[i] = value(grid.node(i));
  return field;
}

double default_time_step(double t_end) { return std::min(1e-3, t_end / 1000.0); }

void Scenario::validate() const {
  bc.validate();
  if (bc.b2 == 0.0) {
    fail(ErrorKind::unsupported_boundary, "simulation needs b2 != 0 at x = 0");
  }
  require(static_cast<bool>(term.eval), "reaction term has no evaluation rule");
  require(t_end > 0.0 && std::isfinite(t_end), "t_end must be positive");
  require(dt > 0.0 && std::isfinite(dt), "dt must be positive");
  require(dt <= t_end, "dt must not exceed t_end");
  require(output_stride >= 1, "output_stride must be at least 1");
  const Field start = u0.sample(grid);
  for (double v : start.values) require(std::isfinite(v), "initial condition must be finite");
  if (bc.a2 == 0.0) {
    require(std::abs(u0.value(1.0)) <= 1e-10,
            "initial condition must vanish at x = 1 for Dirichlet data (a2 = 0)");
  }
}

std::vector<double> DiffusionOperator::apply(std::span<const double> u) const {
  require(u.size() == size(), "operator and field sizes differ");
  const std::size_t n = size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double v = diag[i] * u[i];
    if (i > 0) v += lower[i] * u[i - 1];
    if (i + 1 < n) v += upper[i] * u[i + 1];
    out[i] = v;
  }
  return out;
}

DiffusionOperator assemble_diffusion(const Grid& grid, const BoundaryParams& bc) {
  bc.validate();
  if (bc.b2 == 0.0) {
    fail(ErrorKind::unsupported_boundary,
         "ghost-node closure at x = 0 needs b2 != 0 (Dirichlet disturbances are not covered)");
  }
  const std::size_t n = grid.n_cells();
  const double h = grid.h();
  const double c = bc.mu / (h * h);

  DiffusionOperator op;
  op.lower.assign(n + 1, 0.0);
  op.diag.assign(n + 1, 0.0);
  op.upper.assign(n + 1, 0.0);

  // Ghost u_{-1} = u_1 - 2h (d1 - b1 u_0) / b2.
  op.diag[0] = c * (-2.0 + 2.0 * h * bc.b1 / bc.b2);
  op.upper[0] = 2.0 * c;
  op.source_coefficient = -2.0 * bc.mu / (h * bc.b2);

  for (std::size_t i = 1; i < n; ++i) {
    op.lower[i] = c;
    op.diag[i] = -2.0 * c;
    op.upper[i] = c;
  }

  if (bc.a2 != 0.0) {
    // Ghost u_{N+1} = u_{N-1} - 2h (a1/a2) u_N.
    op.lower[n] = 2.0 * c;
    op.diag[n] = c * (-2.0 - 2.0 * h * bc.a1 / bc.a2);
  } else {
    op.dirichlet_right = true;
  }
  return op;
}

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  require(n > 0 && lower.size() == n && upper.size() == n && rhs.size() == n,
          "tridiagonal system sizes differ");
  std::vector<double> c(n), d(n), x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double pivot = diag[i] - (i > 0 ? lower[i] * c[i - 1] : 0.0);
    if (!std::isfinite(pivot) || std::abs(pivot) <= 1e-300) {
      std::ostringstream msg;
      msg << "tridiagonal solve broke down at row " << i << " (pivot " << pivot << ")";
      fail(ErrorKind::numerical_failure, msg.str());
    }
    c[i] = upper[i] / pivot;
    d[i] = (rhs[i] - (i > 0 ? lower[i] * d[i - 1] : 0.0)) / pivot;
  }
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

Field spatial_gradient(const Field& state, const Grid& grid, const BoundaryParams& bc,
                       double d1_value) {
  require(state.values.size() == grid.n_nodes(), "field length does not match grid");
  require(bc.b2 != 0.0, "gradient closure at x = 0 needs b2 != 0");
  const auto& u = state.values;
  const std::size_t n = grid.n_cells();
  const double h = grid.h();
  Field p{state.time, std::vector<double>(n + 1)};
  p.values[0] = (d1_value - bc.b1 * u[0]) / bc.b2;
  for (std::size_t i = 1; i < n; ++i) p.values[i] = (u[i + 1] - u[i - 1]) / (2.0 * h);
  if (bc.a2 != 0.0) {
    p.values[n] = -(bc.a1 / bc.a2) * u[n];
  } else {
    p.values[n] = (3.0 * u[n] - 4.0 * u[n - 1] + u[n - 2]) / (2.0 * h);
  }
  return p;
}

ImexStepper::ImexStepper(const Grid& grid, const BoundaryParams& bc, const ReactionTerm& term,
                         const DisturbanceSignal& d1, double dt)
    : grid_(grid), bc_(bc), term_(term), d1_(d1), dt_(dt), op_(assemble_diffusion(grid, bc)) {
  require(dt > 0.0 && std::isfinite(dt), "time step must be positive");
  const std::size_t n = op_.size();
  factor_upper_.resize(n);
  factor_pivot_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double diag = 1.0 - 0.5 * dt * op_.diag[i];
    double lower = -0.5 * dt * op_.lower[i];
    double upper = -0.5 * dt * op_.upper[i];
    if (op_.dirichlet_right && i + 1 == n) {
      diag = 1.0;
      lower = 0.0;
      upper = 0.0;
    }
    const double pivot = diag - (i > 0 ? lower * factor_upper_[i - 1] : 0.0);
    if (!std::isfinite(pivot) || std::abs(pivot) <= 1e-14 * std::max(1.0, std::abs(diag))) {
      std::ostringstream msg;
      msg << "Crank-Nicolson matrix is singular at row " << i << " (pivot " << pivot
          << "); check the Robin coefficients";
      fail(ErrorKind::numerical_failure, msg.str());
    }
    factor_pivot_[i] = pivot;
    factor_upper_[i] = upper / pivot;
  }
}

Field ImexStepper::step(const Field& state) const {
  const std::size_t n = op_.size();
  require(state.values.size() == n, "field length does not match grid");
  const double t = state.time;
  const auto& u = state.values;

  const Field grad = spatial_gradient(state, grid_, bc_, d1_.value(t));
  const std::vector<double> Au = op_.apply(u);

  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    rhs[i] = u[i] + 0.5 * dt_ * Au[i] + dt_ * term_(t, grid_.node(i), u[i], grad.values[i]);
  }
  rhs[0] += dt_ * op_.source_coefficient * d1_.value(t + 0.5 * dt_);
  if (op_.dirichlet_right) rhs[n - 1] = 0.0;

  // Forward elimination with the cached factors, then back substitution.
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double lower = -0.5 * dt_ * op_.lower[i];
    if (op_.dirichlet_right && i + 1 == n) lower = 0.0;
    y[i] = (rhs[i] - (i > 0 ? lower * y[i - 1] : 0.0)) / factor_pivot_[i];
  }
  for (std::size_t i = n - 1; i-- > 0;) y[i] -= factor_upper_[i] * y[i + 1];
  return Field{t + dt_, std::move(y)};
}

Field step_imex(const Field& state, double dt, const Grid& grid, const BoundaryParams& bc,
                const ReactionTerm& term, const DisturbanceSignal& d1) {
  require(dt > 0.0, "time step must be positive");
  return ImexStepper(grid, bc, term, d1, dt).step(state);
}

Trace simulate(const Scenario& scenario) {
  scenario.validate();
  const std::size_t steps = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(scenario.t_end / scenario.dt - 1e-9)));
  const double dt = scenario.t_end / double(steps);
  const ImexStepper stepper(scenario.grid, scenario.bc, scenario.term, scenario.d1, dt);
  const std::size_t last = scenario.grid.n_cells();

  Trace trace;
  const auto record = [&](const Field& state) {
    trace.times.push_back(state.time);
    trace.energies.push_back(l2_norm_sq(state, scenario.grid));
    trace.left_values.push_back(state.values.front());
    trace.right_values.push_back(state.values[last]);
    if (scenario.store_fields) trace.fields.push_back(state);
  };

  Field state = scenario.u0.sample(scenario.grid);
  record(state);
  for (std::size_t k = 1; k <= steps; ++k) {
    state = stepper.step(state);
    state.time = scenario.t_end * double(k) / double(steps);
    for (double v : state.values) {
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "solution blew up: non-finite state at t = " << format_real(state.time);
        throw BlowUpError(state.time, msg.str());
      }
    }
    if (k % scenario.output_stride == 0 || k == steps) record(state);
  }
  return trace;
}

}  // namespace issc
