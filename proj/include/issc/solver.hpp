#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "issc/core.hpp"
#include "issc/models.hpp"

namespace issc {

struct InitialCondition {
  struct Zero {};
  // Piecewise-linear through (x[i], u[i]); clamped outside.
  struct Table {
    std::vector<double> x;
    std::vector<double> u;
  };
  std::variant<Zero, FourierSeries, Polynomial, Table> kind{Zero{}};

  double value(double x) const;
  Field sample(const Grid& grid) const;
};

struct Scenario {
  BoundaryParams bc;
  ReactionTerm term = make_zero_reaction();
  DisturbanceSignal d1;
  InitialCondition u0;
  Grid grid = build_grid(64);
  double t_end = 1.0;
  double dt = 1e-3;
  std::size_t output_stride = 1;
  bool store_fields = false;

  // Throws invalid_argument on violated scenario invariants.
  void validate() const;
};

double default_time_step(double t_end);

struct Trace {
  std::vector<double> times;
  std::vector<double> energies;
  std::vector<double> left_values;   // u(t_k, 0)
  std::vector<double> right_values;  // u(t_k, 1)
  std::vector<Field> fields;         // filled when Scenario::store_fields

  std::size_t size() const { return times.size(); }
};

// Tridiagonal ghost-node discretization of mu u_xx, so that
//   u_t = A u + source(d1) + f.
struct DiffusionOperator {
  std::vector<double> lower;  // lower[i] couples row i to node i-1
  std::vector<double> diag;
  std::vector<double> upper;  // upper[i] couples row i to node i+1
  // Node-0 source per unit d1: -2 mu / (h b2).
  double source_coefficient = 0.0;
  bool dirichlet_right = false;

  std::size_t size() const { return diag.size(); }
  std::vector<double> apply(std::span<const double> u) const;
};

DiffusionOperator assemble_diffusion(const Grid& grid, const BoundaryParams& bc);

// Thomas algorithm. Throws numerical_failure on a vanishing pivot.
std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

// Central differences inside; Robin relations at the ends (one-sided second
// order at x=1 for Dirichlet data).
Field spatial_gradient(const Field& state, const Grid& grid, const BoundaryParams& bc,
                       double d1_value);

// Crank-Nicolson on the diffusion part, explicit reaction, boundary source at
// t + dt/2. The factorization of (I - dt/2 A) is computed once.
class ImexStepper {
 public:
  ImexStepper(const Grid& grid, const BoundaryParams& bc, const ReactionTerm& term,
              const DisturbanceSignal& d1, double dt);

  Field step(const Field& state) const;
  double dt() const { return dt_; }

 private:
  Grid grid_;
  BoundaryParams bc_;
  ReactionTerm term_;
  DisturbanceSignal d1_;
  double dt_;
  DiffusionOperator op_;
  // LU factors of (I - dt/2 A) from forward elimination.
  std::vector<double> factor_upper_;
  std::vector<double> factor_pivot_;
};

Field step_imex(const Field& state, double dt, const Grid& grid, const BoundaryParams& bc,
                const ReactionTerm& term, const DisturbanceSignal& d1);

// Throws BlowUpError at the first non-finite state.
Trace simulate(const Scenario& scenario);

}  // namespace issc
