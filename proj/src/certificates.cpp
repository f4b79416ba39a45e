#include "issc/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "issc/error.hpp"

namespace issc {

std::string path_name(AssumptionPath path) {
  switch (path) {
    case AssumptionPath::A1_1:
      return "A1_1";
    case AssumptionPath::A1_2:
      return "A1_2";
    case AssumptionPath::A2_1:
      return "A2_1";
    case AssumptionPath::A3a:
      return "A3a";
    case AssumptionPath::A3b:
      return "A3b";
    case AssumptionPath::A3c:
      return "A3c";
  }
  return "unknown";
}

std::optional<AssumptionPath> parse_path(std::string_view name) {
  for (auto path : {AssumptionPath::A1_1, AssumptionPath::A1_2, AssumptionPath::A2_1,
                    AssumptionPath::A3a, AssumptionPath::A3b, AssumptionPath::A3c}) {
    if (path_name(path) == name) return path;
  }
  return std::nullopt;
}

bool is_general_path(AssumptionPath path) {
  return path == AssumptionPath::A1_1 || path == AssumptionPath::A1_2 ||
         path == AssumptionPath::A2_1;
}

std::size_t split_count(AssumptionPath path) { return is_general_path(path) ? 3 : 2; }

bool is_b_variant(AssumptionPath path) {
  return path == AssumptionPath::A1_2 || path == AssumptionPath::A3b;
}

bool requires_dirichlet_right(AssumptionPath path) {
  return path == AssumptionPath::A2_1 || path == AssumptionPath::A3c;
}

double default_strictness_delta(double mu) { return 1e-9 * mu; }

// ---------------------------------------------------------------------------
// Well-posedness

namespace {

constexpr std::size_t kPlusAbSteps = 1000;

bool nonzero_product(double x, double y) { return x * y != 0.0; }

}  // namespace

bool WellPosednessReport::ok() const {
  if (!neq_condition) return false;
  if (sign_condition) return *sign_condition;
  return split_plus_ab1.has_value() || split_plus_ab2.has_value();
}

double plus_ab1_slack(const BoundaryParams& bc, double A1, double A2) {
  require(nonzero_product(bc.a2, bc.b2), "(+ab1) needs a2 b2 != 0");
  const double ra = bc.a1 / bc.a2;
  const double rb = bc.b1 / bc.b2;
  return std::min({ra - 2.0 * A2, A1 - rb, A2 - 2.0 * A1});
}

double plus_ab2_slack(const BoundaryParams& bc, double B1, double B2) {
  require(nonzero_product(bc.a2, bc.b2), "(+ab2) needs a2 b2 != 0");
  const double ra = bc.a1 / bc.a2;
  const double rb = bc.b1 / bc.b2;
  return std::min({ra + B2, -2.0 * B1 - rb, B1 - 2.0 * B2});
}

namespace {

// Largest slack of (+ab1) resp. (+ab2) over A1 = k/1000; -inf when a2 b2 = 0.
double best_plus_ab_slack(const BoundaryParams& bc, bool second) {
  if (!nonzero_product(bc.a2, bc.b2)) return -std::numeric_limits<double>::infinity();
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k <= kPlusAbSteps; ++k) {
    const double first = double(k) / double(kPlusAbSteps);
    const double rest = double(kPlusAbSteps - k) / double(kPlusAbSteps);
    const double slack = second ? plus_ab2_slack(bc, first, rest) : plus_ab1_slack(bc, first, rest);
    best = std::max(best, slack);
  }
  return best;
}

}  // namespace

WellPosednessReport check_wellposedness_params(const BoundaryParams& bc) {
  WellPosednessReport report;
  const double lhs = (bc.a1 + bc.a2) * bc.b1;
  const double rhs = bc.a1 * bc.b2;
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
  report.neq_condition = std::abs(lhs - rhs) > 1e-12 * scale;

  if (!nonzero_product(bc.a2, bc.b2)) {
    if (bc.a2 != 0.0 && bc.b2 == 0.0) {
      report.sign_condition = bc.a1 / bc.a2 >= -0.5;
    } else if (bc.a2 == 0.0 && bc.b2 != 0.0) {
      report.sign_condition = bc.b1 / bc.b2 <= 0.5;
    } else {
      // Dirichlet at both ends.
      report.sign_condition = true;
    }
    return report;
  }

  for (std::size_t k = 0; k <= kPlusAbSteps; ++k) {
    const double first = double(k) / double(kPlusAbSteps);
    const double rest = double(kPlusAbSteps - k) / double(kPlusAbSteps);
    if (!report.split_plus_ab1 && plus_ab1_slack(bc, first, rest) >= 0.0) {
      report.split_plus_ab1 = SplitPoint{first, rest};
    }
    if (!report.split_plus_ab2 && plus_ab2_slack(bc, first, rest) >= 0.0) {
      report.split_plus_ab2 = SplitPoint{first, rest};
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Assumption inequalities

namespace {

struct Problem {
  AssumptionPath path;
  BoundaryParams bc;
  double M1;
  double M2;
  double delta;
  double ra;  // a1/a2, 0 when a2 = 0
  double rb;  // b1/b2
  // Existence slack of (+ab1)/(+ab2); evaluated only for A1_1 / A1_2.
  double plus_ab = 0.0;
};

class InequalityList {
 public:
  explicit InequalityList(double delta) : delta_(delta) {}

  void le(const char* name, const char* expression, double lhs, double rhs) {
    items_.push_back({name, expression, lhs, rhs, false, rhs - lhs});
  }
  void lt(const char* name, const char* expression, double lhs, double rhs) {
    items_.push_back({name, expression, lhs, rhs, true, rhs - lhs - delta_});
  }
  std::vector<Inequality> take() { return std::move(items_); }

 private:
  double delta_;
  std::vector<Inequality> items_;
};

// Split-dependent combination appearing in the decay constant.
double decay_budget(AssumptionPath path, std::span<const double> splits) {
  return is_b_variant(path) ? splits[0] - 2.0 * splits[1] : splits[1] - 2.0 * splits[0];
}

CertificateConstants constants_for(const Problem& pb, std::span<const double> splits,
                                   std::span<const double> full_eps) {
  CertificateConstants c;
  const double budget = decay_budget(pb.path, splits);
  if (is_general_path(pb.path)) {
    const double eps0 = full_eps[0], eps1 = full_eps[1], eps2 = full_eps[2];
    const double eps3 = eps0;
    c.c_decay = budget - (eps2 / 2.0 + pb.M1 + eps3 * pb.M2 / 2.0);
    c.c_gain_boundary = pb.bc.mu / (2.0 * eps1 * pb.bc.b2 * pb.bc.b2);
    c.c_gain_distributed = 1.0 / (2.0 * eps2);
  } else {
    const double eps1 = full_eps[0], eps2 = full_eps[1];
    c.c_decay = budget - (eps2 / 2.0 + pb.M1);
    c.c_gain_boundary = pb.bc.mu / (2.0 * eps1 * pb.bc.b2 * pb.bc.b2);
    c.c_gain_distributed = 1.0 / (2.0 * eps2);
  }
  return c;
}

std::vector<Inequality> evaluate(const Problem& pb, std::span<const double> splits,
                                 std::span<const double> eps) {
  InequalityList list(pb.delta);
  const double mu = pb.bc.mu;
  const bool full = is_general_path(pb.path) ? eps.size() == 3 : eps.size() == 2;

  switch (pb.path) {
    case AssumptionPath::A1_1: {
      const double A1 = splits[0], A2 = splits[1], A3 = splits[2];
      list.le("plus_ab1", "(+ab1) feasible for some A1 + A2 = 1", 0.0, pb.plus_ab);
      list.le("robin_right", "2 A'2 <= (a1/a2) mu", 2.0 * A2, pb.ra * mu);
      list.lt("robin_left", "(b1/b2) mu < A'1", pb.rb * mu, A1);
      list.lt("decay_margin", "M1 + eps0 M2 / 2 < A'2 - 2 A'1", pb.M1 + eps[0] * pb.M2 / 2.0,
              A2 - 2.0 * A1);
      list.le("gradient_budget", "M2 / (2 eps0) <= A'3", pb.M2 / (2.0 * eps[0]), A3);
      if (full) {
        list.le("robin_left_young", "(b1/b2 + eps1/2) mu <= A'1", (pb.rb + eps[1] / 2.0) * mu, A1);
      }
      break;
    }
    case AssumptionPath::A1_2: {
      const double B1 = splits[0], B2 = splits[1], B3 = splits[2];
      list.le("plus_ab2", "(+ab2) feasible for some B1 + B2 = 1", 0.0, pb.plus_ab);
      list.le("robin_right", "-B'2 <= (a1/a2) mu", -B2, pb.ra * mu);
      list.lt("robin_left", "(b1/b2) mu < -2 B'1", pb.rb * mu, -2.0 * B1);
      list.lt("decay_margin", "M1 + eps0 M2 / 2 < B'1 - 2 B'2", pb.M1 + eps[0] * pb.M2 / 2.0,
              B1 - 2.0 * B2);
      list.le("gradient_budget", "M2 / (2 eps0) <= B'3", pb.M2 / (2.0 * eps[0]), B3);
      if (full) {
        list.le("robin_left_young", "(b1/b2 + eps1/2) mu <= -2 B'1", (pb.rb + eps[1] / 2.0) * mu,
                -2.0 * B1);
      }
      break;
    }
    case AssumptionPath::A2_1: {
      const double A1 = splits[0], A2 = splits[1], A3 = splits[2];
      list.lt("robin_left_half", "b1/b2 < 1/2", pb.rb, 0.5);
      list.lt("robin_left", "(b1/b2) mu < A'1", pb.rb * mu, A1);
      list.lt("decay_margin", "M1 + eps0 M2 / 2 < A'2 - 2 A'1", pb.M1 + eps[0] * pb.M2 / 2.0,
              A2 - 2.0 * A1);
      list.le("gradient_budget", "M2 / (2 eps0) <= A'3", pb.M2 / (2.0 * eps[0]), A3);
      if (full) {
        list.le("robin_left_young", "(b1/b2 + eps1/2) mu <= A'1", (pb.rb + eps[1] / 2.0) * mu, A1);
      }
      break;
    }
    case AssumptionPath::A3a: {
      const double A1 = splits[0], A2 = splits[1];
      list.le("robin_right", "-(a1/a2) mu + M2/2 <= -2 A'2", -pb.ra * mu + pb.M2 / 2.0, -2.0 * A2);
      list.lt("robin_left", "(b1/b2) mu - M2/2 < A'1", pb.rb * mu - pb.M2 / 2.0, A1);
      list.lt("decay_margin", "M1 < A'2 - 2 A'1", pb.M1, A2 - 2.0 * A1);
      if (full) {
        list.le("robin_left_young", "(b1/b2) mu - M2/2 + eps1 mu / 2 <= A'1",
                pb.rb * mu - pb.M2 / 2.0 + eps[0] * mu / 2.0, A1);
      }
      break;
    }
    case AssumptionPath::A3b: {
      const double B1 = splits[0], B2 = splits[1];
      list.le("robin_right", "-(a1/a2) mu + M2/2 <= B'2", -pb.ra * mu + pb.M2 / 2.0, B2);
      list.lt("robin_left", "(b1/b2) mu - M2/2 < -2 B'1", pb.rb * mu - pb.M2 / 2.0, -2.0 * B1);
      list.lt("decay_margin", "M1 < B'1 - 2 B'2", pb.M1, B1 - 2.0 * B2);
      if (full) {
        list.le("robin_left_young", "(b1/b2) mu - M2/2 + eps1 mu / 2 <= -2 B'1",
                pb.rb * mu - pb.M2 / 2.0 + eps[0] * mu / 2.0, -2.0 * B1);
      }
      break;
    }
    case AssumptionPath::A3c: {
      const double A1 = splits[0], A2 = splits[1];
      list.lt("robin_left", "(b1/b2) mu - M2/2 < A'1", pb.rb * mu - pb.M2 / 2.0, A1);
      list.lt("decay_margin", "M1 < A'2 - 2 A'1", pb.M1, A2 - 2.0 * A1);
      if (full) {
        list.le("robin_left_young", "(b1/b2) mu - M2/2 + eps1 mu / 2 <= A'1",
                pb.rb * mu - pb.M2 / 2.0 + eps[0] * mu / 2.0, A1);
      }
      break;
    }
  }

  if (full) {
    const CertificateConstants c = constants_for(pb, splits, eps);
    list.lt("decay_positive",
            is_general_path(pb.path) ? "0 < budget - (eps2/2 + M1 + eps3 M2 / 2)"
                                     : "0 < budget - (eps2/2 + M1)",
            0.0, c.c_decay);
  }
  return list.take();
}

Problem make_problem(AssumptionPath path, const BoundaryParams& bc, double M1, double M2,
                     std::optional<double> strictness_delta) {
  bc.validate();
  require(std::isfinite(M1) && std::isfinite(M2), "M1 and M2 must be finite");
  if (bc.b2 == 0.0) {
    fail(ErrorKind::unsupported_boundary,
         "stability paths need b2 != 0 (Dirichlet disturbances are not covered)");
  }
  if (requires_dirichlet_right(path) && bc.a2 != 0.0) {
    fail(ErrorKind::invalid_argument, "path " + path_name(path) + " requires a2 = 0");
  }
  if (!requires_dirichlet_right(path) && bc.a2 == 0.0) {
    fail(ErrorKind::invalid_argument, "path " + path_name(path) + " requires a2 != 0");
  }
  if (is_general_path(path)) require(M2 >= 0.0, "general-bound paths need M2 >= 0");
  if (strictness_delta) require(*strictness_delta > 0.0, "strictness_delta must be positive");

  Problem pb{path, bc, M1, M2, strictness_delta.value_or(default_strictness_delta(bc.mu)),
             bc.a2 != 0.0 ? bc.a1 / bc.a2 : 0.0, bc.b1 / bc.b2};
  if (path == AssumptionPath::A1_1) pb.plus_ab = best_plus_ab_slack(bc, false);
  if (path == AssumptionPath::A1_2) pb.plus_ab = best_plus_ab_slack(bc, true);
  return pb;
}

void check_splits(const Problem& pb, std::span<const double> splits) {
  require(splits.size() == split_count(pb.path),
          "path " + path_name(pb.path) + " expects " + std::to_string(split_count(pb.path)) +
              " split weights");
  double sum = 0.0;
  for (double s : splits) {
    require(std::isfinite(s) && s >= 0.0, "split weights must be nonnegative");
    sum += s;
  }
  require(std::abs(sum - pb.bc.mu) <= 1e-12 * std::max(1.0, pb.bc.mu),
          "split weights must sum to mu");
}

void check_eps_shape(const Problem& pb, std::span<const double> eps) {
  const bool general = is_general_path(pb.path);
  const bool ok = general ? (eps.size() == 1 || eps.size() == 3) : (eps.size() == 0 || eps.size() == 2);
  require(ok, "path " + path_name(pb.path) +
                  (general ? " expects eps = {eps0} or {eps0, eps1, eps2}"
                           : " expects eps = {} or {eps1, eps2}"));
  for (double e : eps) require(std::isfinite(e) && e > 0.0, "eps values must be positive");
}

AssumptionReport make_report(AssumptionPath path, std::vector<Inequality> items) {
  AssumptionReport report;
  report.path = path;
  report.inequalities = std::move(items);
  report.pass = std::all_of(report.inequalities.begin(), report.inequalities.end(),
                            [](const Inequality& q) { return q.holds(); });
  return report;
}

}  // namespace

const Inequality* AssumptionReport::find(std::string_view name) const {
  for (const auto& q : inequalities) {
    if (q.name == name) return &q;
  }
  return nullptr;
}

const Inequality* AssumptionReport::worst() const {
  const Inequality* worst = nullptr;
  for (const auto& q : inequalities) {
    if (!worst || q.slack < worst->slack) worst = &q;
  }
  return worst;
}

AssumptionReport check_assumption(AssumptionPath path, const BoundaryParams& bc, double M1,
                                  double M2, std::span<const double> splits,
                                  std::span<const double> eps,
                                  std::optional<double> strictness_delta) {
  const Problem pb = make_problem(path, bc, M1, M2, strictness_delta);
  check_splits(pb, splits);
  check_eps_shape(pb, eps);
  return make_report(path, evaluate(pb, splits, eps));
}

// ---------------------------------------------------------------------------
// Certificates

namespace {

std::span<const double> search_eps(const Certificate& cert) {
  // Stored general eps carry eps3 = eps0 as a fourth entry.
  if (is_general_path(cert.path)) {
    require(cert.eps.size() == 4, "general-path certificate needs eps0..eps3");
    return std::span<const double>(cert.eps).first(3);
  }
  require(cert.eps.size() == 2, "linear-path certificate needs eps1, eps2");
  return cert.eps;
}

}  // namespace

double Certificate::eps0() const {
  require(is_general_path(path) && eps.size() == 4, "eps0 is defined on general paths only");
  return eps[0];
}
double Certificate::eps1() const { return is_general_path(path) ? eps.at(1) : eps.at(0); }
double Certificate::eps2() const { return is_general_path(path) ? eps.at(2) : eps.at(1); }
double Certificate::eps3() const {
  require(is_general_path(path) && eps.size() == 4, "eps3 is defined on general paths only");
  return eps[3];
}

CertificateConstants recompute_constants(const Certificate& cert, const BoundaryParams& bc,
                                         double M1, double M2) {
  const Problem pb = make_problem(cert.path, bc, M1, M2, cert.options.strictness_delta);
  check_splits(pb, cert.splits);
  const auto eps = search_eps(cert);
  check_eps_shape(pb, eps);
  return constants_for(pb, cert.splits, eps);
}

AssumptionReport check_certificate(const Certificate& cert, const BoundaryParams& bc, double M1,
                                   double M2) {
  const auto eps = search_eps(cert);
  if (is_general_path(cert.path)) {
    require(cert.eps[3] == cert.eps[0], "general-path certificate must have eps3 = eps0");
  }
  return check_assumption(cert.path, bc, M1, M2, cert.splits, eps, cert.options.strictness_delta);
}

std::vector<AssumptionPath> candidate_paths(const BoundaryParams& bc, ReactionForm form) {
  const bool dirichlet_right = bc.a2 == 0.0;
  if (form == ReactionForm::general_bound) {
    if (dirichlet_right) return {AssumptionPath::A2_1};
    return {AssumptionPath::A1_1, AssumptionPath::A1_2};
  }
  if (dirichlet_right) return {AssumptionPath::A3c};
  return {AssumptionPath::A3a, AssumptionPath::A3b};
}

std::vector<double> eps_grid(const SynthesisOptions& options) {
  require(options.eps_points >= 2, "eps grid needs at least 2 points");
  require(options.eps_min > 0.0 && options.eps_max > options.eps_min,
          "eps grid needs 0 < eps_min < eps_max");
  const double lo = std::log10(options.eps_min);
  const double hi = std::log10(options.eps_max);
  const double last = double(options.eps_points - 1);
  std::vector<double> grid(options.eps_points);
  for (std::size_t k = 0; k < options.eps_points; ++k) {
    grid[k] = std::pow(10.0, lo + (hi - lo) * double(k) / last);
  }
  grid.front() = options.eps_min;
  grid.back() = options.eps_max;
  return grid;
}

namespace {

void validate_options(const SynthesisOptions& options) {
  require(options.gain_cap_boundary > 0.0 && options.gain_cap_distributed > 0.0,
          "gain caps must be positive");
  if (options.strictness_delta) {
    require(*options.strictness_delta > 0.0, "strictness_delta must be positive");
  }
  require(options.split_steps >= 1, "split grid needs at least one step");
}

struct Candidate {
  std::vector<double> splits;
  std::vector<double> eps;  // search shape
  CertificateConstants constants;
  std::vector<Inequality> inequalities;
};

// Total order of the search: larger decay, then smaller boundary gain, then
// smaller distributed gain. Earlier (lexicographically smaller) points win the
// remaining ties because enumeration is lexicographic.
bool better(const Candidate& a, const Candidate& b) {
  if (a.constants.c_decay != b.constants.c_decay) return a.constants.c_decay > b.constants.c_decay;
  if (a.constants.c_gain_boundary != b.constants.c_gain_boundary) {
    return a.constants.c_gain_boundary < b.constants.c_gain_boundary;
  }
  return a.constants.c_gain_distributed < b.constants.c_gain_distributed;
}

struct PathSearch {
  std::optional<Candidate> best;
  // Least infeasible point: largest worst-slack over the grid.
  double least_violation = -std::numeric_limits<double>::infinity();
  Inequality binding;
};

void append_caps(std::vector<Inequality>& items, const CertificateConstants& c,
                 const SynthesisOptions& options) {
  items.push_back({"gain_cap_boundary", "mu / (2 eps1 b2^2) <= gain_cap_boundary",
                   c.c_gain_boundary, options.gain_cap_boundary, false,
                   options.gain_cap_boundary - c.c_gain_boundary});
  items.push_back({"gain_cap_distributed", "1 / (2 eps2) <= gain_cap_distributed",
                   c.c_gain_distributed, options.gain_cap_distributed, false,
                   options.gain_cap_distributed - c.c_gain_distributed});
}

PathSearch search_path(const Problem& pb, const SynthesisOptions& options,
                       const std::vector<double>& grid) {
  const double mu = pb.bc.mu;
  const double b2sq = pb.bc.b2 * pb.bc.b2;
  const bool general = is_general_path(pb.path);
  const std::size_t steps = options.split_steps;

  // eps2 only enters the decay constant (decreasing) and the distributed gain,
  // so the smallest cap-respecting grid value is optimal for every split.
  double eps2 = grid.back();
  for (double e : grid) {
    if (1.0 / (2.0 * e) <= options.gain_cap_distributed) {
      eps2 = e;
      break;
    }
  }

  PathSearch result;
  std::vector<double> splits(split_count(pb.path));
  std::vector<double> eps;

  const auto visit = [&]() {
    // eps1: largest value satisfying the boundary Young inequality gives the
    // smallest boundary gain; it must still respect the cap.
    double boundary_target = 0.0;
    double boundary_base = 0.0;
    if (general) {
      boundary_target = is_b_variant(pb.path) ? -2.0 * splits[0] : splits[0];
      boundary_base = pb.rb * mu;
    } else {
      boundary_target = is_b_variant(pb.path) ? -2.0 * splits[0] : splits[0];
      boundary_base = pb.rb * mu - pb.M2 / 2.0;
    }
    std::optional<double> eps1;
    for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
      if (boundary_base + *it * mu / 2.0 <= boundary_target &&
          mu / (2.0 * *it * b2sq) <= options.gain_cap_boundary) {
        eps1 = *it;
        break;
      }
    }
    if (!eps1) {
      eps1 = grid.back();
      for (double e : grid) {
        if (mu / (2.0 * e * b2sq) <= options.gain_cap_boundary) {
          eps1 = e;
          break;
        }
      }
    }

    eps.clear();
    if (general) {
      // eps0 (= eps3): smallest value meeting M2/(2 eps0) <= third split;
      // the decay terms only grow with eps0.
      double eps0 = grid.back();
      for (double e : grid) {
        if (pb.M2 / (2.0 * e) <= splits[2]) {
          eps0 = e;
          break;
        }
      }
      eps = {eps0, *eps1, eps2};
    } else {
      eps = {*eps1, eps2};
    }

    Candidate candidate;
    candidate.constants = constants_for(pb, splits, eps);
    candidate.inequalities = evaluate(pb, splits, eps);
    append_caps(candidate.inequalities, candidate.constants, options);

    const Inequality* worst = nullptr;
    for (const auto& q : candidate.inequalities) {
      if (!worst || q.slack < worst->slack) worst = &q;
    }
    if (worst->slack >= 0.0) {
      candidate.splits = splits;
      candidate.eps = eps;
      if (!result.best || better(candidate, *result.best)) result.best = std::move(candidate);
    } else if (worst->slack > result.least_violation) {
      result.least_violation = worst->slack;
      result.binding = *worst;
    }
  };

  for (std::size_t i = 0; i <= steps; ++i) {
    splits[0] = double(i) * mu / double(steps);
    if (general) {
      for (std::size_t j = 0; i + j <= steps; ++j) {
        splits[1] = double(j) * mu / double(steps);
        splits[2] = double(steps - i - j) * mu / double(steps);
        visit();
      }
    } else {
      splits[1] = double(steps - i) * mu / double(steps);
      visit();
    }
  }
  return result;
}

Certificate make_certificate(const Problem& pb, Candidate&& c, const SynthesisOptions& options) {
  Certificate cert;
  cert.path = pb.path;
  cert.splits = std::move(c.splits);
  cert.eps = std::move(c.eps);
  if (is_general_path(pb.path)) cert.eps.push_back(cert.eps[0]);
  cert.c_decay = c.constants.c_decay;
  cert.c_gain_boundary = c.constants.c_gain_boundary;
  cert.c_gain_distributed = c.constants.c_gain_distributed;
  for (const auto& q : c.inequalities) cert.slacks.push_back({q.name, q.slack});
  cert.options = options;
  cert.options.strictness_delta = pb.delta;
  return cert;
}

}  // namespace

namespace {

struct PathOutcome {
  SynthesisResult result;
  double least_violation = 0.0;
};

PathOutcome run_path(AssumptionPath path, const BoundaryParams& bc, double M1, double M2,
                     const SynthesisOptions& options) {
  validate_options(options);
  const Problem pb = make_problem(path, bc, M1, M2, options.strictness_delta);
  PathSearch search = search_path(pb, options, eps_grid(options));

  PathOutcome out;
  if (search.best) {
    out.result.certificate = make_certificate(pb, std::move(*search.best), options);
    return out;
  }
  std::ostringstream reason;
  reason << "no feasible point on path " << path_name(path) << ": binding constraint "
         << search.binding.name << " (" << search.binding.expression << "), best slack "
         << format_real(search.least_violation);
  out.result.infeasible = Infeasible{reason.str(), search.binding.name, path};
  out.least_violation = search.least_violation;
  return out;
}

}  // namespace

SynthesisResult synthesize_on_path(AssumptionPath path, const BoundaryParams& bc, double M1,
                                   double M2, const SynthesisOptions& options) {
  return run_path(path, bc, M1, M2, options).result;
}

SynthesisResult synthesize_certificate(const BoundaryParams& bc, double M1, double M2,
                                       ReactionForm form, const SynthesisOptions& options) {
  bc.validate();
  if (bc.b2 == 0.0) {
    fail(ErrorKind::unsupported_boundary,
         "certificate synthesis needs b2 != 0 (Dirichlet disturbances are not covered)");
  }
  validate_options(options);

  std::optional<Certificate> best;
  std::optional<Infeasible> least_infeasible;
  double least_violation = -std::numeric_limits<double>::infinity();

  for (AssumptionPath path : candidate_paths(bc, form)) {
    PathOutcome r = run_path(path, bc, M1, M2, options);
    if (r.result.certificate) {
      const Certificate& c = *r.result.certificate;
      const bool take = !best || c.c_decay > best->c_decay ||
                        (c.c_decay == best->c_decay &&
                         (c.c_gain_boundary < best->c_gain_boundary ||
                          (c.c_gain_boundary == best->c_gain_boundary &&
                           c.c_gain_distributed < best->c_gain_distributed)));
      if (take) best = std::move(r.result.certificate);
    } else if (!least_infeasible || r.least_violation > least_violation) {
      least_violation = r.least_violation;
      least_infeasible = std::move(r.result.infeasible);
    }
  }

  SynthesisResult result;
  if (best) {
    result.certificate = std::move(best);
  } else {
    result.infeasible = std::move(least_infeasible);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Bounds

std::string bound_form_name(BoundForm form) { return form == BoundForm::eiiss ? "eiiss" : "eiss"; }

namespace {

struct Quadrature {
  const DisturbanceSignal& signal;
  double sup = 0.0;

  double sample(double t) {
    const double v = signal.value(t);
    const double sq = v * v;
    sup = std::max(sup, sq);
    return sq;
  }

  // Trapezoid refinement until successive estimates agree to `tol`.
  double adapt(double a, double b, double fa, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double fm = sample(m);
    const double left = 0.5 * (m - a) * (fa + fm);
    const double right = 0.5 * (b - m) * (fm + fb);
    const double refined = left + right;
    if (std::abs(refined - whole) <= 3.0 * tol || depth >= 48) return refined;
    return adapt(a, m, fa, fm, left, 0.5 * tol, depth + 1) +
           adapt(m, b, fm, fb, right, 0.5 * tol, depth + 1);
  }

  // Integral over [a,b] with tolerance rel_tol * max(|estimate|, floor).
  double integrate(double a, double b, double rel_tol, double floor) {
    if (b <= a) return 0.0;
    const std::size_t panels =
        std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(8.0 * (b - a))));
    const double width = (b - a) / double(panels);
    std::vector<double> values(panels + 1);
    for (std::size_t k = 0; k <= panels; ++k) values[k] = sample(a + double(k) * width);
    double coarse = 0.0;
    for (std::size_t k = 0; k < panels; ++k) coarse += 0.5 * width * (values[k] + values[k + 1]);
    const double tol = rel_tol * std::max(std::abs(coarse), floor);
    double total = 0.0;
    for (std::size_t k = 0; k < panels; ++k) {
      const double lo = a + double(k) * width;
      const double hi = (k + 1 == panels) ? b : a + double(k + 1) * width;
      const double whole = 0.5 * (hi - lo) * (values[k] + values[k + 1]);
      total += adapt(lo, hi, values[k], values[k + 1], whole, tol / double(panels), 0);
    }
    return total;
  }
};

}  // namespace

SquaredSignalSummary summarize_squared(const DisturbanceSignal& signal, double t, double rel_tol) {
  require(t >= 0.0, "summary requested at negative time");
  Quadrature q{signal};
  q.sample(0.0);
  SquaredSignalSummary s;
  s.integral = q.integrate(0.0, t, rel_tol, 0.0);
  s.sup = q.sup;
  return s;
}

SquaredSignalAccumulator::SquaredSignalAccumulator(const DisturbanceSignal& signal, double rel_tol)
    : signal_(signal), rel_tol_(rel_tol) {
  const double v = signal_.value(0.0);
  summary_.sup = v * v;
}

const SquaredSignalSummary& SquaredSignalAccumulator::advance(double t) {
  require(t >= t_, "accumulator times must not decrease");
  if (t == t_) return summary_;
  Quadrature q{signal_};
  q.sup = summary_.sup;
  summary_.integral += q.integrate(t_, t, rel_tol_, summary_.integral);
  summary_.sup = q.sup;
  t_ = t;
  return summary_;
}

double iss_bound(const Certificate& cert, double E0, const SquaredSignalSummary& d1,
                 const SquaredSignalSummary& d2, double t, BoundForm form) {
  require(t >= 0.0, "bound requested at negative time");
  const double decay = std::exp(-cert.c_decay * t);
  if (form == BoundForm::eiiss) {
    return E0 * decay + cert.c_gain_boundary * d1.integral +
           cert.c_gain_distributed * d2.integral;
  }
  return E0 * decay +
         (1.0 - decay) * (cert.c_gain_boundary * d1.sup + cert.c_gain_distributed * d2.sup);
}

double iss_bound(const Certificate& cert, double E0, const DisturbanceSignal& d1,
                 const DisturbanceSignal& d2, double t, BoundForm form) {
  require(t >= 0.0, "bound requested at negative time");
  return iss_bound(cert, E0, summarize_squared(d1, t), summarize_squared(d2, t), t, form);
}

}  // namespace issc
