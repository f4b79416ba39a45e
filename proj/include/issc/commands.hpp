#pragma once

#include <optional>
#include <vector>

#include "issc/certificates.hpp"
#include "issc/config.hpp"
#include "issc/validation.hpp"

namespace issc {

SynthesisResult run_certify(const RunConfig& config);

Trace run_simulate(const RunConfig& config);

struct ValidationOutcome {
  Certificate certificate;
  std::vector<IssReport> reports;  // one per requested bound form

  bool pass() const;
  std::string summary() const;
};

// Uses `certificate` when given, else the [certificate] block (file = ... or
// inline synthesis). Throws Error(config) without a [certificate] block.
// Returns an empty optional with `infeasible` filled when synthesis fails.
struct ValidationRun {
  std::optional<ValidationOutcome> outcome;
  std::optional<Infeasible> infeasible;
};

ValidationRun run_validate(const RunConfig& config,
                           const Certificate* certificate = nullptr);

ConvergenceResult run_convergence(const RunConfig& config);

}  // namespace issc
