#include "issc/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "issc/error.hpp"
#include "overloaded.hpp"

namespace issc {

using detail::overloaded;

void BoundaryParams::validate() const {
  require(std::isfinite(a1) && std::isfinite(a2) && std::isfinite(b1) && std::isfinite(b2) &&
              std::isfinite(mu),
          "boundary coefficients must be finite");
  require(mu > 0.0, "diffusion coefficient mu must be positive");
  require(a1 * a1 + a2 * a2 > 0.0, "a1 and a2 must not both vanish");
  require(b1 * b1 + b2 * b2 > 0.0, "b1 and b2 must not both vanish");
}

Grid::Grid(std::size_t n_cells) : n_cells_(n_cells), h_(1.0 / static_cast<double>(n_cells)) {
  nodes_.resize(n_cells + 1);
  for (std::size_t i = 0; i <= n_cells; ++i) {
    nodes_[i] = static_cast<double>(i) / static_cast<double>(n_cells);
  }
}

Grid build_grid(std::size_t n_cells) {
  require(n_cells >= 2, "grid needs at least 2 cells");
  return Grid(n_cells);
}

double l2_norm_sq(std::span<const double> values, const Grid& grid) {
  require(values.size() == grid.n_nodes(), "field length does not match grid");
  const std::size_t n = grid.n_cells();
  double interior = 0.0;
  for (std::size_t i = 1; i < n; ++i) interior += values[i] * values[i];
  const double ends = 0.5 * (values[0] * values[0] + values[n] * values[n]);
  return grid.h() * (interior + ends);
}

double l2_norm_sq(const Field& field, const Grid& grid) { return l2_norm_sq(field.values, grid); }

DisturbanceSignal DisturbanceSignal::zero() { return DisturbanceSignal(Zero{}); }

DisturbanceSignal DisturbanceSignal::constant(double value) {
  require(std::isfinite(value), "constant signal must be finite");
  return DisturbanceSignal(Constant{value});
}

DisturbanceSignal DisturbanceSignal::sinusoid(double amplitude, double frequency, double phase) {
  require(std::isfinite(amplitude) && std::isfinite(frequency) && std::isfinite(phase),
          "sinusoid parameters must be finite");
  return DisturbanceSignal(Sinusoid{amplitude, frequency, phase});
}

DisturbanceSignal DisturbanceSignal::decaying_exp(double amplitude, double rate) {
  require(std::isfinite(amplitude) && std::isfinite(rate), "decaying_exp parameters must be finite");
  require(rate >= 0.0, "decaying_exp rate must be nonnegative");
  return DisturbanceSignal(DecayingExp{amplitude, rate});
}

DisturbanceSignal DisturbanceSignal::table(std::vector<double> times, std::vector<double> values) {
  require(!times.empty(), "table signal needs at least one point");
  require(times.size() == values.size(), "table times and values differ in length");
  for (std::size_t i = 0; i < times.size(); ++i) {
    require(std::isfinite(times[i]) && std::isfinite(values[i]), "table entries must be finite");
    if (i > 0) require(times[i] > times[i - 1], "table times must be strictly increasing");
  }
  return DisturbanceSignal(Table{std::move(times), std::move(values)});
}

namespace {

double interpolate(std::span<const double> xs, std::span<const double> ys, double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + w * (ys[hi] - ys[lo]);
}

}  // namespace

double DisturbanceSignal::value(double t) const {
  return std::visit(
      overloaded{
          [](const Zero&) { return 0.0; },
          [](const Constant& c) { return c.value; },
          [t](const Sinusoid& s) { return s.amplitude * std::sin(s.frequency * t + s.phase); },
          [t](const DecayingExp& e) { return e.amplitude * std::exp(-e.rate * t); },
          [t](const Table& tab) { return interpolate(tab.times, tab.values, t); },
      },
      kind_);
}

DisturbanceSignal DisturbanceSignal::scaled(double factor) const {
  return std::visit(
      overloaded{
          [](const Zero&) { return zero(); },
          [factor](const Constant& c) { return constant(c.value * factor); },
          [factor](const Sinusoid& s) {
            return sinusoid(s.amplitude * factor, s.frequency, s.phase);
          },
          [factor](const DecayingExp& e) { return decaying_exp(e.amplitude * factor, e.rate); },
          [factor](const Table& tab) {
            std::vector<double> values = tab.values;
            for (double& v : values) v *= factor;
            return table(tab.times, std::move(values));
          },
      },
      kind_);
}

bool DisturbanceSignal::is_zero() const {
  return std::visit(
      overloaded{
          [](const Zero&) { return true; },
          [](const Constant& c) { return c.value == 0.0; },
          [](const Sinusoid& s) { return s.amplitude == 0.0; },
          [](const DecayingExp& e) { return e.amplitude == 0.0; },
          [](const Table& tab) {
            return std::all_of(tab.values.begin(), tab.values.end(),
                               [](double v) { return v == 0.0; });
          },
      },
      kind_);
}

std::string DisturbanceSignal::describe() const {
  return std::visit(
      overloaded{
          [](const Zero&) { return std::string("zero"); },
          [](const Constant& c) { return "constant(" + format_real(c.value) + ")"; },
          [](const Sinusoid& s) {
            return "sinusoid(" + format_real(s.amplitude) + ", " + format_real(s.frequency) +
                   ", " + format_real(s.phase) + ")";
          },
          [](const DecayingExp& e) {
            return "decaying_exp(" + format_real(e.amplitude) + ", " + format_real(e.rate) + ")";
          },
          [](const Table& tab) {
            std::string out = "table(";
            for (std::size_t i = 0; i < tab.times.size(); ++i) {
              if (i > 0) out += ", ";
              out += format_real(tab.times[i]) + ":" + format_real(tab.values[i]);
            }
            return out + ")";
          },
      },
      kind_);
}

double eval_signal(const DisturbanceSignal& signal, double t) {
  require(t >= 0.0, "signal evaluated at negative time");
  return signal.value(t);
}

double eval_profile(Profile profile, double x) {
  switch (profile) {
    case Profile::uniform:
      return 1.0;
    case Profile::sine:
      return std::sin(std::numbers::pi * x);
    case Profile::cosine:
      return std::cos(std::numbers::pi * x);
  }
  return 0.0;
}

std::string profile_name(Profile profile) {
  switch (profile) {
    case Profile::uniform:
      return "uniform";
    case Profile::sine:
      return "sine";
    case Profile::cosine:
      return "cosine";
  }
  return "unknown";
}

double FourierSeries::value(double x) const {
  const double theta = omega * (x - shift);
  double sum = a0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += a[k] * std::cos(double(k + 1) * theta);
  for (std::size_t k = 0; k < b.size(); ++k) sum += b[k] * std::sin(double(k + 1) * theta);
  return sum;
}

double FourierSeries::derivative(double x) const {
  const double theta = omega * (x - shift);
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    sum -= a[k] * double(k + 1) * omega * std::sin(double(k + 1) * theta);
  }
  for (std::size_t k = 0; k < b.size(); ++k) {
    sum += b[k] * double(k + 1) * omega * std::cos(double(k + 1) * theta);
  }
  return sum;
}

double Polynomial::value(double x) const {
  double sum = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) sum = sum * x + *it;
  return sum;
}

double Polynomial::derivative(double x) const {
  double sum = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 1;) sum = sum * x + double(k) * coeffs[k];
  return sum;
}

std::string format_real(double value) {
  char buffer[64];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 17);
  return std::string(buffer, result.ptr);
}

}  // namespace issc
