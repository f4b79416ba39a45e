#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace issc {

// Robin data for
//   a1 u(t,1) + a2 u_x(t,1) = 0
//   b1 u(t,0) + b2 u_x(t,0) = d1(t)
// together with the diffusion coefficient mu of u_t = mu u_xx + f.
// Coefficients may be signed; each certificate path enforces its own sign
// requirements.
struct BoundaryParams {
  double a1 = 0.0;
  double a2 = 0.0;
  double b1 = 0.0;
  double b2 = 1.0;
  double mu = 1.0;

  // Throws invalid_argument unless mu > 0, a1^2+a2^2 > 0, b1^2+b2^2 > 0.
  void validate() const;

  bool dirichlet_right() const noexcept { return a2 == 0.0; }
};

class Grid {
 public:
  std::size_t n_cells() const noexcept { return n_cells_; }
  std::size_t n_nodes() const noexcept { return n_cells_ + 1; }
  double h() const noexcept { return h_; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  double node(std::size_t i) const { return nodes_.at(i); }

 private:
  friend Grid build_grid(std::size_t n_cells);
  Grid(std::size_t n_cells);

  std::size_t n_cells_;
  double h_;
  std::vector<double> nodes_;
};

// Uniform grid on [0,1]; n_cells >= 2.
Grid build_grid(std::size_t n_cells);

struct Field {
  double time = 0.0;
  std::vector<double> values;
};

// Composite trapezoid approximation of the integral of u^2 over [0,1].
double l2_norm_sq(const Field& field, const Grid& grid);
double l2_norm_sq(std::span<const double> values, const Grid& grid);

// Closed set of disturbance signals d(t), t >= 0.
class DisturbanceSignal {
 public:
  struct Zero {};
  struct Constant {
    double value;
  };
  // amplitude * sin(frequency * t + phase), frequency in rad per unit time.
  struct Sinusoid {
    double amplitude;
    double frequency;
    double phase;
  };
  // amplitude * exp(-rate * t)
  struct DecayingExp {
    double amplitude;
    double rate;
  };
  // Piecewise-linear through (times[i], values[i]); clamped outside.
  struct Table {
    std::vector<double> times;
    std::vector<double> values;
  };
  using Kind = std::variant<Zero, Constant, Sinusoid, DecayingExp, Table>;

  DisturbanceSignal() = default;

  static DisturbanceSignal zero();
  static DisturbanceSignal constant(double value);
  static DisturbanceSignal sinusoid(double amplitude, double frequency, double phase = 0.0);
  static DisturbanceSignal decaying_exp(double amplitude, double rate);
  static DisturbanceSignal table(std::vector<double> times, std::vector<double> values);

  // Evaluation without the t >= 0 check; used on hot paths.
  double value(double t) const;

  DisturbanceSignal scaled(double factor) const;
  bool is_zero() const;
  const Kind& kind() const noexcept { return kind_; }

  // Canonical textual form, e.g. "sinusoid(0.1, 2, 0)". Parsed back by the
  // config reader.
  std::string describe() const;

 private:
  explicit DisturbanceSignal(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_{Zero{}};
};

double eval_signal(const DisturbanceSignal& signal, double t);

// Spatial profiles with sup-norm 1 on [0,1].
enum class Profile { uniform, sine, cosine };

double eval_profile(Profile profile, double x);
std::string profile_name(Profile profile);

// d(t,x) = s(t) * phi(x) with |phi| <= 1, so |d(t,x)| <= |s(t)|.
struct DistributedDisturbance {
  DisturbanceSignal signal;
  Profile profile = Profile::uniform;

  double operator()(double t, double x) const {
    return signal.value(t) * eval_profile(profile, x);
  }
};

// a0 + sum_k a_k cos(k w (x - shift)) + b_k sin(k w (x - shift)), k = 1..order.
struct FourierSeries {
  double a0 = 0.0;
  std::vector<double> a;
  std::vector<double> b;
  double omega = 3.141592653589793;
  double shift = 0.0;

  double value(double x) const;
  double derivative(double x) const;
};

// sum_k coeffs[k] x^k
struct Polynomial {
  std::vector<double> coeffs;

  double value(double x) const;
  double derivative(double x) const;
};

// Formats a double with 17 significant digits, the decimal form used by every
// CSV and text output in the project.
std::string format_real(double value);

}  // namespace issc
