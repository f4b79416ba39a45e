#include "issc/issc.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "issc/commands.hpp"
#include "issc/error.hpp"
#include "issc/io.hpp"

struct issc_config {
  issc::RunConfig config;
};
struct issc_certificate {
  issc::Certificate cert;
  std::string path_name;
};
struct issc_trace {
  issc::Trace trace;
};
struct issc_validation {
  issc::ValidationOutcome outcome;
};

namespace {

thread_local std::string last_error;

issc_status set_error(issc_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

issc_status status_of(issc::ErrorKind kind) {
  switch (kind) {
    case issc::ErrorKind::invalid_argument: return ISSC_ERROR_INVALID_ARGUMENT;
    case issc::ErrorKind::unsupported_boundary: return ISSC_ERROR_UNSUPPORTED_BOUNDARY;
    case issc::ErrorKind::numerical_failure: return ISSC_ERROR_NUMERICAL;
    case issc::ErrorKind::blow_up: return ISSC_ERROR_BLOWUP;
    case issc::ErrorKind::config: return ISSC_ERROR_CONFIG;
    case issc::ErrorKind::io: return ISSC_ERROR_IO;
  }
  return ISSC_ERROR_INTERNAL;
}

template <typename Fn>
issc_status guarded(Fn&& fn) noexcept {
  try {
    last_error.clear();
    return fn();
  } catch (const issc::BlowUpError& e) {
    return set_error(ISSC_ERROR_BLOWUP, std::string(e.what()) + " (first non-finite time " +
                                            issc::format_real(e.time()) + ")");
  } catch (const issc::Error& e) {
    return set_error(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(ISSC_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(ISSC_ERROR_INTERNAL, e.what());
  } catch (...) {
    return set_error(ISSC_ERROR_INTERNAL, "unknown failure");
  }
}

char* copy_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

bool null_args(std::initializer_list<const void*> args) {
  for (const void* p : args) {
    if (!p) return true;
  }
  return false;
}

issc_status null_error() { return set_error(ISSC_ERROR_INVALID_ARGUMENT, "null argument"); }

issc_certificate* wrap(issc::Certificate cert) {
  auto* handle = new issc_certificate{std::move(cert), {}};
  handle->path_name = issc::path_name(handle->cert.path);
  return handle;
}

}  // namespace

extern "C" {

const char* issc_last_error(void) { return last_error.c_str(); }

int issc_exit_code(issc_status status) {
  switch (status) {
    case ISSC_OK: return 0;
    case ISSC_ERROR_CONFIG: return 1;
    case ISSC_ERROR_INFEASIBLE: return 2;
    case ISSC_ERROR_BLOWUP: return 3;
    case ISSC_ERROR_IO: return 4;
    case ISSC_ERROR_VALIDATION: return 5;
    case ISSC_ERROR_NUMERICAL: return 3;
    case ISSC_ERROR_INVALID_ARGUMENT:
    case ISSC_ERROR_UNSUPPORTED_BOUNDARY:
    case ISSC_ERROR_INTERNAL: return 1;
  }
  return 1;
}

void issc_string_free(char* text) { delete[] text; }

issc_status issc_config_load(const char* path, issc_config** out) {
  if (null_args({path, out})) return null_error();
  *out = nullptr;
  return guarded([&] {
    *out = new issc_config{issc::RunConfig::load(path)};
    return ISSC_OK;
  });
}

issc_status issc_config_parse(const char* text, issc_config** out) {
  if (null_args({text, out})) return null_error();
  *out = nullptr;
  return guarded([&] {
    *out = new issc_config{issc::RunConfig::parse(text)};
    return ISSC_OK;
  });
}

void issc_config_free(issc_config* config) { delete config; }

issc_status issc_certify(const issc_config* config, issc_certificate** out) {
  if (null_args({config, out})) return null_error();
  *out = nullptr;
  return guarded([&] {
    issc::SynthesisResult result = issc::run_certify(config->config);
    if (!result.feasible()) return set_error(ISSC_ERROR_INFEASIBLE, result.infeasible->reason);
    *out = wrap(std::move(*result.certificate));
    return ISSC_OK;
  });
}

issc_status issc_certificate_load(const char* path, issc_certificate** out) {
  if (null_args({path, out})) return null_error();
  *out = nullptr;
  return guarded([&] {
    *out = wrap(issc::certificate_from_json(issc::read_text_file(path)));
    return ISSC_OK;
  });
}

issc_status issc_certificate_parse_json(const char* json, issc_certificate** out) {
  if (null_args({json, out})) return null_error();
  *out = nullptr;
  return guarded([&] {
    *out = wrap(issc::certificate_from_json(json));
    return ISSC_OK;
  });
}

issc_status issc_certificate_to_json(const issc_certificate* cert, char** out) {
  if (null_args({cert, out})) return null_error();
  *out = nullptr;
  return guarded([&] {
    *out = copy_string(issc::certificate_to_json(cert->cert));
    return ISSC_OK;
  });
}

const char* issc_certificate_path(const issc_certificate* cert) {
  return cert ? cert->path_name.c_str() : "";
}

double issc_certificate_c_decay(const issc_certificate* cert) {
  return cert ? cert->cert.c_decay : std::numeric_limits<double>::quiet_NaN();
}

double issc_certificate_c_gain_boundary(const issc_certificate* cert) {
  return cert ? cert->cert.c_gain_boundary : std::numeric_limits<double>::quiet_NaN();
}

double issc_certificate_c_gain_distributed(const issc_certificate* cert) {
  return cert ? cert->cert.c_gain_distributed : std::numeric_limits<double>::quiet_NaN();
}

size_t issc_certificate_split_count(const issc_certificate* cert) {
  return cert ? cert->cert.splits.size() : 0;
}

double issc_certificate_split(const issc_certificate* cert, size_t index) {
  if (!cert || index >= cert->cert.splits.size()) return std::numeric_limits<double>::quiet_NaN();
  return cert->cert.splits[index];
}

void issc_certificate_free(issc_certificate* cert) { delete cert; }

issc_status issc_simulate(const issc_config* config, issc_trace** out) {
  if (null_args({config, out})) return null_error();
  *out = nullptr;
  return guarded([&] {
    *out = new issc_trace{issc::run_simulate(config->config)};
    return ISSC_OK;
  });
}

size_t issc_trace_size(const issc_trace* trace) { return trace ? trace->trace.size() : 0; }

double issc_trace_time(const issc_trace* trace, size_t index) {
  if (!trace || index >= trace->trace.size()) return std::numeric_limits<double>::quiet_NaN();
  return trace->trace.times[index];
}

double issc_trace_energy(const issc_trace* trace, size_t index) {
  if (!trace || index >= trace->trace.size()) return std::numeric_limits<double>::quiet_NaN();
  return trace->trace.energies[index];
}

issc_status issc_trace_to_csv(const issc_trace* trace, char** out) {
  if (null_args({trace, out})) return null_error();
  *out = nullptr;
  return guarded([&] {
    *out = copy_string(issc::trace_to_csv(trace->trace));
    return ISSC_OK;
  });
}

issc_status issc_trace_write_csv(const issc_trace* trace, const char* path) {
  if (null_args({trace, path})) return null_error();
  return guarded([&] {
    issc::write_text_file(path, issc::trace_to_csv(trace->trace));
    return ISSC_OK;
  });
}

void issc_trace_free(issc_trace* trace) { delete trace; }

issc_status issc_validate(const issc_config* config, const issc_certificate* cert,
                          issc_validation** out) {
  if (null_args({config, out})) return null_error();
  *out = nullptr;
  return guarded([&] {
    issc::ValidationRun run = issc::run_validate(config->config, cert ? &cert->cert : nullptr);
    if (!run.outcome) return set_error(ISSC_ERROR_INFEASIBLE, run.infeasible->reason);
    const bool pass = run.outcome->pass();
    *out = new issc_validation{std::move(*run.outcome)};
    if (!pass) return set_error(ISSC_ERROR_VALIDATION, "trajectory exceeds the certified bound");
    return ISSC_OK;
  });
}

int issc_validation_passed(const issc_validation* report) {
  return report && report->outcome.pass() ? 1 : 0;
}

double issc_validation_max_violation(const issc_validation* report) {
  double worst = -std::numeric_limits<double>::infinity();
  if (!report) return std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : report->outcome.reports) worst = std::max(worst, r.max_relative_violation);
  return worst;
}

issc_status issc_validation_to_text(const issc_validation* report, char** out) {
  if (null_args({report, out})) return null_error();
  *out = nullptr;
  return guarded([&] {
    *out = copy_string(report->outcome.summary());
    return ISSC_OK;
  });
}

void issc_validation_free(issc_validation* report) { delete report; }

issc_status issc_lemma_check(size_t n_samples, uint64_t seed, char** summary) {
  if (!summary) return null_error();
  *summary = nullptr;
  return guarded([&] {
    const issc::LemmaSuiteReport report = issc::run_lemma_suite(n_samples, seed);
    *summary = copy_string(report.summary());
    if (!report.pass()) {
      return set_error(ISSC_ERROR_VALIDATION, std::to_string(report.violations) + " violations");
    }
    return ISSC_OK;
  });
}

issc_status issc_convergence(const issc_config* config, char** table, double* order,
                             int* degenerate) {
  if (null_args({config, table, order, degenerate})) return null_error();
  *table = nullptr;
  return guarded([&] {
    const issc::ConvergenceResult result = issc::run_convergence(config->config);
    *table = copy_string(result.table());
    *order = result.order.value_or(std::numeric_limits<double>::quiet_NaN());
    *degenerate = result.degenerate ? 1 : 0;
    return ISSC_OK;
  });
}

}  // extern "C"
