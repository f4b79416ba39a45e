#include "issc/commands.hpp"

#include <cmath>
#include <sstream>

#include "issc/error.hpp"
#include "issc/io.hpp"

namespace issc {

namespace {

void require_section(const RunConfig& cfg, std::string_view name) {
  if (!cfg.has_section(name)) {
    fail(ErrorKind::config, cfg.source() + ": missing section [" + std::string(name) + "]");
  }
}

std::vector<BoundForm> requested_forms(const RunConfig& cfg) {
  const std::string form = cfg.get_string_opt("validation", "form").value_or("both");
  if (form == "both") return {BoundForm::eiiss, BoundForm::eiss};
  if (form == "eiiss") return {BoundForm::eiiss};
  if (form == "eiss") return {BoundForm::eiss};
  cfg.error_at("validation", "form", "expected both, eiiss or eiss");
}

}  // namespace

SynthesisResult run_certify(const RunConfig& cfg) {
  require_section(cfg, "certificate");
  const ModelSetup setup = build_model(cfg);
  return synthesize_certificate(setup.bc, setup.term.M1, setup.term.M2, setup.term.form,
                                build_synthesis_options(cfg));
}

Trace run_simulate(const RunConfig& cfg) { return simulate(build_scenario(cfg)); }

bool ValidationOutcome::pass() const {
  for (const auto& r : reports) {
    if (!r.pass) return false;
  }
  return !reports.empty();
}

std::string ValidationOutcome::summary() const {
  std::ostringstream out;
  out << "certificate path=" << path_name(certificate.path)
      << " c_decay=" << format_real(certificate.c_decay)
      << " c_gain_boundary=" << format_real(certificate.c_gain_boundary)
      << " c_gain_distributed=" << format_real(certificate.c_gain_distributed) << "\n";
  for (const auto& r : reports) {
    out << bound_form_name(r.form) << ": " << (r.pass ? "pass" : "FAIL")
        << " max_relative_violation=" << format_real(r.max_relative_violation)
        << " samples=" << r.samples.size();
    if (r.first_violation_time) {
      out << " first_violation_time=" << format_real(*r.first_violation_time);
    }
    out << "\n";
  }
  out << "validation: " << (pass() ? "pass" : "FAIL") << "\n";
  return out.str();
}

ValidationRun run_validate(const RunConfig& cfg, const Certificate* certificate) {
  const ModelSetup setup = build_model(cfg);
  ValidationRun run;

  Certificate cert;
  if (certificate) {
    cert = *certificate;
  } else {
    require_section(cfg, "certificate");
    if (const auto file = cfg.get_string_opt("certificate", "file")) {
      std::filesystem::path path(*file);
      if (path.is_relative()) path = cfg.base_dir() / path;
      if (!std::filesystem::exists(path)) {
        cfg.error_at("certificate", "file", "file '" + path.string() + "' does not exist");
      }
      cert = certificate_from_json(read_text_file(path));
    } else {
      SynthesisResult result = synthesize_certificate(setup.bc, setup.term.M1, setup.term.M2,
                                                      setup.term.form,
                                                      build_synthesis_options(cfg));
      if (!result.feasible()) {
        run.infeasible = std::move(result.infeasible);
        return run;
      }
      cert = std::move(*result.certificate);
    }
  }

  const Scenario scenario = build_scenario(cfg);
  const std::vector<BoundForm> forms = requested_forms(cfg);
  const IssTolerance tolerance = build_tolerance(cfg);
  const Trace trace = simulate(scenario);

  const ProblemData problem{setup.bc, setup.term.M1, setup.term.M2, setup.term.form};
  ValidationOutcome outcome{cert, {}};
  for (BoundForm form : forms) {
    outcome.reports.push_back(verify_iss_trajectory(trace, cert, problem, scenario.d1,
                                                    setup.term.d2, form, tolerance));
  }
  run.outcome = std::move(outcome);
  return run;
}

ConvergenceResult run_convergence(const RunConfig& cfg) {
  require_section(cfg, "convergence");
  std::vector<std::size_t> grids;
  for (double g : cfg.get_reals("convergence", "grids")) {
    if (!(g >= 2.0) || g != std::floor(g)) {
      cfg.error_at("convergence", "grids", "entries must be integers >= 2");
    }
    grids.push_back(static_cast<std::size_t>(g));
  }
  if (grids.size() < 3) cfg.error_at("convergence", "grids", "needs at least 3 grids");

  const std::string exact = cfg.get_string("convergence", "exact");
  ConvergenceCase study;
  if (exact == "heat_neumann_dirichlet") {
    if (cfg.has_section("model")) {
      fail(ErrorKind::config, cfg.source() +
                                  ": [model] is not used by the heat_neumann_dirichlet case");
    }
    for (const char* key : {"a1", "a2", "b1", "b2"}) {
      if (cfg.has("bc", key)) cfg.error_at("bc", key, "fixed by the heat_neumann_dirichlet case");
    }
    const double mu = cfg.get_real_or("bc", "mu", 1.0);
    const double t_end = cfg.get_real_or("numerics", "t_end", 0.5);
    const double dt = cfg.get_real_or("numerics", "dt", 1e-4);
    study = manufactured_heat_case(mu, t_end, dt);
  } else if (exact == "zero") {
    study.scenario = build_scenario(cfg);
    study.exact = [](double, double) { return 0.0; };
  } else {
    cfg.error_at("convergence", "exact", "expected heat_neumann_dirichlet or zero");
  }
  return convergence_study(study, grids);
}

}  // namespace issc
