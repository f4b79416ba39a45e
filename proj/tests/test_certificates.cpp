#include <gtest/gtest.h>

#include <cmath>
#include <optional>
#include <random>

#include "issc/certificates.hpp"
#include "issc/error.hpp"

using namespace issc;

namespace {

const BoundaryParams kTransportBc{1.5, 1.0, 0.0, 1.0, 1.0};
const BoundaryParams kNeumannDirichletBc{1.0, 0.0, 0.0, 1.0, 1.0};

// Decay and gain constants written out independently of the library.
struct OracleConstants {
  double c_decay;
  double c1;
  double c2;
};

OracleConstants oracle_constants(AssumptionPath path, const BoundaryParams& bc, double M1,
                                 double M2, const std::vector<double>& s,
                                 double eps0, double eps1, double eps2) {
  const bool b_variant = path == AssumptionPath::A1_2 || path == AssumptionPath::A3b;
  const double budget = b_variant ? s[0] - 2.0 * s[1] : s[1] - 2.0 * s[0];
  const bool general = path == AssumptionPath::A1_1 || path == AssumptionPath::A1_2 ||
                       path == AssumptionPath::A2_1;
  const double c = general ? budget - (eps2 / 2.0 + M1 + eps0 * M2 / 2.0)
                           : budget - (eps2 / 2.0 + M1);
  return {c, bc.mu / (2.0 * eps1 * bc.b2 * bc.b2), 1.0 / (2.0 * eps2)};
}

struct OracleBest {
  std::vector<double> splits;
  OracleConstants constants;
};

// Exhaustive search over splits x eps0 x eps1 x eps2 with the documented
// total order; no separability shortcuts.
std::optional<OracleBest> brute_force(AssumptionPath path, const BoundaryParams& bc, double M1,
                                      double M2, const SynthesisOptions& opt) {
  const bool general = is_general_path(path);
  const std::vector<double> grid = eps_grid(opt);
  const std::vector<double> eps0_values = general ? grid : std::vector<double>{0.0};
  std::optional<OracleBest> best;

  const auto consider = [&](const std::vector<double>& s) {
    for (double e0 : eps0_values) {
      for (double e1 : grid) {
        for (double e2 : grid) {
          const std::vector<double> eps =
              general ? std::vector<double>{e0, e1, e2} : std::vector<double>{e1, e2};
          const AssumptionReport r =
              check_assumption(path, bc, M1, M2, s, eps, opt.strictness_delta);
          if (!r.pass) continue;
          const OracleConstants c = oracle_constants(path, bc, M1, M2, s, e0, e1, e2);
          if (c.c1 > opt.gain_cap_boundary || c.c2 > opt.gain_cap_distributed) continue;
          const bool take =
              !best || c.c_decay > best->constants.c_decay ||
              (c.c_decay == best->constants.c_decay &&
               (c.c1 < best->constants.c1 ||
                (c.c1 == best->constants.c1 && c.c2 < best->constants.c2)));
          if (take) best = OracleBest{s, c};
        }
      }
    }
  };

  const std::size_t n = opt.split_steps;
  const double mu = bc.mu;
  for (std::size_t i = 0; i <= n; ++i) {
    if (general) {
      for (std::size_t j = 0; i + j <= n; ++j) {
        consider({double(i) * mu / double(n), double(j) * mu / double(n),
                  double(n - i - j) * mu / double(n)});
      }
    } else {
      consider({double(i) * mu / double(n), double(n - i) * mu / double(n)});
    }
  }
  return best;
}

struct OracleCase {
  const char* label;
  BoundaryParams bc;
  double M1;
  double M2;
  std::vector<AssumptionPath> paths;
};

}  // namespace

TEST(Paths, NamesRoundTrip) {
  for (auto p : {AssumptionPath::A1_1, AssumptionPath::A1_2, AssumptionPath::A2_1,
                 AssumptionPath::A3a, AssumptionPath::A3b, AssumptionPath::A3c}) {
    EXPECT_EQ(parse_path(path_name(p)), p);
  }
  EXPECT_FALSE(parse_path("A4").has_value());
  EXPECT_EQ(split_count(AssumptionPath::A1_2), 3u);
  EXPECT_EQ(split_count(AssumptionPath::A3c), 2u);
}

TEST(Paths, CandidatesFollowBoundaryAndForm) {
  using P = std::vector<AssumptionPath>;
  EXPECT_EQ(candidate_paths(kTransportBc, ReactionForm::linear_form),
            (P{AssumptionPath::A3a, AssumptionPath::A3b}));
  EXPECT_EQ(candidate_paths(kTransportBc, ReactionForm::general_bound),
            (P{AssumptionPath::A1_1, AssumptionPath::A1_2}));
  EXPECT_EQ(candidate_paths(kNeumannDirichletBc, ReactionForm::general_bound),
            (P{AssumptionPath::A2_1}));
  EXPECT_EQ(candidate_paths(kNeumannDirichletBc, ReactionForm::linear_form),
            (P{AssumptionPath::A3c}));
}

TEST(WellPosedness, TransportAdmitsPlusAb1) {
  const WellPosednessReport r = check_wellposedness_params(kTransportBc);
  EXPECT_TRUE(r.neq_condition);
  ASSERT_TRUE(r.split_plus_ab1.has_value());
  EXPECT_GE(plus_ab1_slack(kTransportBc, r.split_plus_ab1->first, r.split_plus_ab1->second), 0.0);
  EXPECT_TRUE(r.ok());
  // The hand-picked point (1/3, 2/3).
  EXPECT_GE(plus_ab1_slack(kTransportBc, 1.0 / 3.0, 2.0 / 3.0), 0.0);
}

TEST(WellPosedness, DirichletRightUsesSignCondition) {
  const WellPosednessReport r = check_wellposedness_params(kNeumannDirichletBc);
  EXPECT_TRUE(r.neq_condition);
  ASSERT_TRUE(r.sign_condition.has_value());
  EXPECT_FALSE(r.split_plus_ab1.has_value());
}

TEST(Assumptions, GinzburgLandauHandSplitsHold) {
  const std::vector<double> splits{1.0 / 3.0, 2.0 / 3.0, 0.0};
  const std::vector<double> eps0{1.0};
  const AssumptionReport r =
      check_assumption(AssumptionPath::A2_1, kNeumannDirichletBc, -1.0, 0.0, splits, eps0);
  EXPECT_TRUE(r.pass);
  ASSERT_NE(r.find("decay_margin"), nullptr);
  EXPECT_NEAR(r.find("decay_margin")->slack, 1.0, 1e-8);
}

TEST(Assumptions, GeneralizedGlHandSplitsHold) {
  const std::vector<double> splits{0.25, 0.5, 0.25};
  const std::vector<double> eps0{2.0};
  const AssumptionReport r =
      check_assumption(AssumptionPath::A2_1, kNeumannDirichletBc, -2.0, 1.0, splits, eps0);
  EXPECT_TRUE(r.pass);
  // M2 / (2 eps0) = A'3 exactly: a non-strict inequality at equality.
  EXPECT_EQ(r.find("gradient_budget")->slack, 0.0);
}

TEST(Assumptions, StrictInequalityFailsAtEquality) {
  // M1 = A'2 - 2 A'1 exactly.
  const std::vector<double> splits{0.25, 0.75};
  const AssumptionReport r =
      check_assumption(AssumptionPath::A3a, kTransportBc, 0.25, 0.0, splits, {});
  EXPECT_FALSE(r.pass);
  EXPECT_LT(r.find("decay_margin")->slack, 0.0);
  EXPECT_EQ(r.worst()->name, "decay_margin");
}

TEST(Assumptions, GatingAndShapeErrors) {
  const std::vector<double> two{0.5, 0.5};
  const std::vector<double> three{0.3, 0.3, 0.4};
  try {
    check_assumption(AssumptionPath::A2_1, kTransportBc, -1.0, 0.0, three, std::vector{1.0});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_argument);
  }
  try {
    check_assumption(AssumptionPath::A3a, BoundaryParams{1, 1, 1, 0, 1}, -1.0, 0.0, two, {});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unsupported_boundary);
  }
  EXPECT_THROW(check_assumption(AssumptionPath::A3a, kTransportBc, -1.0, 0.0, three, {}), Error);
  EXPECT_THROW(check_assumption(AssumptionPath::A3a, kTransportBc, -1.0, 0.0, two,
                                std::vector{1.0}),
               Error);
  EXPECT_THROW(check_assumption(AssumptionPath::A3a, kTransportBc, -1.0, 0.0,
                                std::vector{0.5, 0.6}, {}),
               Error);
}

TEST(Synthesis, EpsGridEndpointsAndSpacing) {
  const SynthesisOptions opt;
  const std::vector<double> g = eps_grid(opt);
  ASSERT_EQ(g.size(), 181u);
  EXPECT_EQ(g.front(), 1e-6);
  EXPECT_EQ(g.back(), 1e3);
  for (std::size_t k = 1; k < g.size(); ++k) {
    EXPECT_NEAR(std::log10(g[k] / g[k - 1]), 0.05, 1e-12);
  }
}

TEST(Synthesis, TransportCertificate) {
  const SynthesisResult r =
      synthesize_certificate(kTransportBc, -1.0, 0.0, ReactionForm::linear_form);
  ASSERT_TRUE(r.feasible());
  const Certificate& c = *r.certificate;
  EXPECT_EQ(c.path, AssumptionPath::A3a);
  EXPECT_GE(c.c_decay, 0.9);
  // A'2 <= 0.75 from the right boundary; the budget peaks at (0.25, 0.75), and
  // eps2 is the first grid value 10^-2.3 with 1/(2 eps2) <= 100.
  EXPECT_DOUBLE_EQ(c.splits[0], 0.25);
  EXPECT_DOUBLE_EQ(c.splits[1], 0.75);
  EXPECT_NEAR(c.eps2(), std::pow(10.0, -2.3), 1e-15);
  EXPECT_NEAR(c.c_decay, 1.25 - std::pow(10.0, -2.3) / 2.0, 1e-12);
  EXPECT_LE(c.c_gain_boundary, 100.0);
  EXPECT_LE(c.c_gain_distributed, 100.0);
}

TEST(Synthesis, GinzburgLandauOnA21) {
  const SynthesisResult gl =
      synthesize_certificate(kNeumannDirichletBc, -1.0, 0.0, ReactionForm::general_bound);
  ASSERT_TRUE(gl.feasible());
  EXPECT_EQ(gl.certificate->path, AssumptionPath::A2_1);
  // Largest budget: A'1 = mu/200 (strictly positive), A'3 = 0, so
  // A'2 - 2 A'1 = 0.985.
  EXPECT_DOUBLE_EQ(gl.certificate->splits[0], 0.005);
  EXPECT_NEAR(gl.certificate->c_decay, 0.985 + 1.0 - std::pow(10.0, -2.3) / 2.0, 1e-12);

  const SynthesisResult ggl =
      synthesize_certificate(kNeumannDirichletBc, -2.0, 1.0, ReactionForm::general_bound);
  ASSERT_TRUE(ggl.feasible());
  EXPECT_EQ(ggl.certificate->path, AssumptionPath::A2_1);
  EXPECT_EQ(ggl.certificate->eps0(), ggl.certificate->eps3());
}

TEST(Synthesis, UnstableReactionsAreInfeasible) {
  for (double M1 : {1.0, 1.5, 10.0}) {
    const SynthesisResult lin =
        synthesize_certificate(kNeumannDirichletBc, M1, 0.0, ReactionForm::linear_form);
    ASSERT_FALSE(lin.feasible()) << M1;
    EXPECT_NE(lin.infeasible->binding_constraint.find("decay"), std::string::npos);
    EXPECT_NE(lin.infeasible->reason.find("decay"), std::string::npos);
    const SynthesisResult gen =
        synthesize_certificate(kNeumannDirichletBc, M1, 0.0, ReactionForm::general_bound);
    EXPECT_FALSE(gen.feasible()) << M1;
    const SynthesisResult tr =
        synthesize_certificate(kTransportBc, M1, 0.0, ReactionForm::linear_form);
    EXPECT_FALSE(tr.feasible()) << M1;
  }
}

TEST(Synthesis, DirichletDisturbanceUnsupported) {
  try {
    synthesize_certificate(BoundaryParams{1, 0, 1, 0, 1}, -1.0, 0.0, ReactionForm::linear_form);
    FAIL() << "expected unsupported_boundary";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unsupported_boundary);
  }
}

TEST(Synthesis, MatchesBruteForceOracle) {
  SynthesisOptions opt;
  opt.split_steps = 8;
  opt.eps_points = 13;
  opt.eps_min = 1e-3;
  opt.eps_max = 1e2;
  opt.gain_cap_boundary = 20.0;
  opt.gain_cap_distributed = 20.0;

  using P = AssumptionPath;
  const std::vector<OracleCase> cases = {
      {"transport", kTransportBc, -1.0, 0.0, {P::A3a, P::A3b, P::A1_1, P::A1_2}},
      {"gl", kNeumannDirichletBc, -1.0, 0.0, {P::A2_1, P::A3c}},
      {"ggl", kNeumannDirichletBc, -2.0, 1.0, {P::A2_1}},
      {"robin", BoundaryParams{2.0, 1.0, -0.3, 1.0, 0.7}, -0.2, 0.4,
       {P::A3a, P::A3b, P::A1_1, P::A1_2}},
      {"robin_neg", BoundaryParams{-0.5, 1.0, -2.0, 1.5, 1.2}, -0.5, 0.1,
       {P::A3a, P::A3b, P::A1_1, P::A1_2}},
      {"unstable", kNeumannDirichletBc, 3.0, 0.0, {P::A2_1, P::A3c}},
  };
  int feasible_seen = 0;
  for (const auto& oc : cases) {
    for (P path : oc.paths) {
      SCOPED_TRACE(std::string(oc.label) + " " + path_name(path));
      const auto oracle = brute_force(path, oc.bc, oc.M1, oc.M2, opt);
      const SynthesisResult r = synthesize_on_path(path, oc.bc, oc.M1, oc.M2, opt);
      ASSERT_EQ(oracle.has_value(), r.feasible());
      if (!oracle) {
        EXPECT_FALSE(r.infeasible->binding_constraint.empty());
        continue;
      }
      ++feasible_seen;
      const Certificate& c = *r.certificate;
      EXPECT_NEAR(c.c_decay, oracle->constants.c_decay, 1e-12);
      EXPECT_NEAR(c.c_gain_boundary, oracle->constants.c1, 1e-9);
      EXPECT_NEAR(c.c_gain_distributed, oracle->constants.c2, 1e-9);
      ASSERT_EQ(c.splits.size(), oracle->splits.size());
      for (std::size_t k = 0; k < c.splits.size(); ++k) {
        EXPECT_DOUBLE_EQ(c.splits[k], oracle->splits[k]);
      }
    }
  }
  EXPECT_GE(feasible_seen, 6);
}

TEST(Synthesis, CertificateInvariantsOnRandomProblems) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SynthesisOptions opt;
  opt.split_steps = 40;
  opt.eps_points = 61;
  int feasible = 0;
  for (int trial = 0; trial < 60; ++trial) {
    BoundaryParams bc{2.0 * u(rng), trial % 3 == 0 ? 0.0 : 1.0 + 0.5 * u(rng), u(rng),
                      1.0 + 0.5 * u(rng), 0.5 + 0.4 * (u(rng) + 1.0)};
    if (bc.a2 == 0.0) bc.a1 = 1.0;
    const double M1 = 1.5 * u(rng) - 0.5;
    const double M2 = 0.3 * (u(rng) + 1.0);
    const ReactionForm form = trial % 2 ? ReactionForm::linear_form : ReactionForm::general_bound;
    SynthesisResult r;
    try {
      r = synthesize_certificate(bc, M1, M2, form, opt);
    } catch (const Error& e) {
      FAIL() << "unexpected error " << e.what();
    }
    if (!r.feasible()) {
      EXPECT_FALSE(r.infeasible->reason.empty());
      continue;
    }
    ++feasible;
    const Certificate& c = *r.certificate;
    EXPECT_GT(c.c_decay, 0.0);
    EXPECT_LE(c.c_gain_boundary, opt.gain_cap_boundary);
    EXPECT_LE(c.c_gain_distributed, opt.gain_cap_distributed);
    EXPECT_NEAR(c.c_gain_boundary, bc.mu / (2.0 * c.eps1() * bc.b2 * bc.b2), 1e-12 * c.c_gain_boundary);
    EXPECT_NEAR(c.c_gain_distributed, 1.0 / (2.0 * c.eps2()), 1e-12 * c.c_gain_distributed);
    double sum = 0.0;
    for (double s : c.splits) {
      EXPECT_GE(s, 0.0);
      sum += s;
    }
    EXPECT_NEAR(sum, bc.mu, 1e-12);
    for (const Slack& s : c.slacks) EXPECT_GE(s.value, 0.0) << s.name;
    EXPECT_TRUE(check_certificate(c, bc, M1, M2).pass);
    const CertificateConstants k = recompute_constants(c, bc, M1, M2);
    EXPECT_EQ(k.c_decay, c.c_decay);
    EXPECT_EQ(k.c_gain_boundary, c.c_gain_boundary);
  }
  EXPECT_GT(feasible, 5);
}

TEST(Certificate, CheckDetectsWrongProblem) {
  const Certificate c =
      *synthesize_certificate(kTransportBc, -1.0, 0.0, ReactionForm::linear_form).certificate;
  EXPECT_TRUE(check_certificate(c, kTransportBc, -1.0, 0.0).pass);
  EXPECT_FALSE(check_certificate(c, kTransportBc, 2.0, 0.0).pass);
  EXPECT_THROW(check_certificate(c, kNeumannDirichletBc, -1.0, 0.0), Error);
}

TEST(Bounds, SquaredIntegralsMatchClosedForms) {
  const double A = 0.1, w = 2.0;
  for (double t : {0.0, 0.3, 1.0, 7.5, 10.0}) {
    const SquaredSignalSummary s = summarize_squared(DisturbanceSignal::sinusoid(A, w), t);
    const double exact = A * A * (t / 2.0 - std::sin(2.0 * w * t) / (4.0 * w));
    EXPECT_NEAR(s.integral, exact, 1e-8 * std::max(exact, 1e-12) + 1e-15) << t;
    EXPECT_LE(s.sup, A * A + 1e-18);
  }
  const SquaredSignalSummary e = summarize_squared(DisturbanceSignal::decaying_exp(2.0, 0.5), 3.0);
  EXPECT_NEAR(e.integral, 4.0 * (1.0 - std::exp(-3.0)) / 1.0, 1e-7);
  EXPECT_DOUBLE_EQ(e.sup, 4.0);
  EXPECT_THROW(summarize_squared(DisturbanceSignal::zero(), -1.0), Error);
}

TEST(Bounds, AccumulatorAgreesWithDirectSummary) {
  const auto sig = DisturbanceSignal::sinusoid(0.3, 5.0, 0.2);
  SquaredSignalAccumulator acc(sig);
  for (double t = 0.0; t <= 4.0; t += 0.37) {
    const SquaredSignalSummary a = acc.advance(t);
    const SquaredSignalSummary d = summarize_squared(sig, t);
    EXPECT_NEAR(a.integral, d.integral, 1e-8 * std::max(d.integral, 1e-12));
    EXPECT_LE(a.sup, 0.09 + 1e-15);
  }
}

TEST(Bounds, ShapeOfBothForms) {
  Certificate c;
  c.path = AssumptionPath::A3a;
  c.splits = {0.25, 0.75};
  c.eps = {0.5, 0.01};
  c.c_decay = 1.2;
  c.c_gain_boundary = 2.0;
  c.c_gain_distributed = 50.0;
  const auto d1 = DisturbanceSignal::constant(0.1);
  const auto d2 = DisturbanceSignal::constant(0.2);
  const double E0 = 0.3;
  EXPECT_DOUBLE_EQ(iss_bound(c, E0, d1, d2, 0.0, BoundForm::eiiss), E0);
  EXPECT_DOUBLE_EQ(iss_bound(c, E0, d1, d2, 0.0, BoundForm::eiss), E0);
  const double t = 2.0;
  const double decay = std::exp(-1.2 * t);
  EXPECT_NEAR(iss_bound(c, E0, d1, d2, t, BoundForm::eiiss),
              E0 * decay + 2.0 * 0.01 * t + 50.0 * 0.04 * t, 1e-10);
  EXPECT_NEAR(iss_bound(c, E0, d1, d2, t, BoundForm::eiss),
              E0 * decay + (1.0 - decay) * (2.0 * 0.01 + 50.0 * 0.04), 1e-12);
  // Monotone in the initial energy and the disturbance level.
  for (BoundForm f : {BoundForm::eiiss, BoundForm::eiss}) {
    EXPECT_LT(iss_bound(c, E0, d1, d2, t, f), iss_bound(c, 2 * E0, d1, d2, t, f));
    EXPECT_LT(iss_bound(c, E0, d1, d2, t, f),
              iss_bound(c, E0, DisturbanceSignal::constant(0.2), d2, t, f));
  }
}
