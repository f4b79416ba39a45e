// Command-line front end over the C API.
//
//   issc certify     --config run.ini [--out cert.json]
//   issc simulate    --config run.ini [--out trace.csv]
//   issc validate    --config run.ini
//   issc lemma-check [--n 1000] [--seed 42]
//   issc convergence --config run.ini
//
// Exit codes: 0 ok, 1 config/usage, 2 infeasible, 3 blow-up, 4 I/O,
// 5 validation failed.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "CLI11.hpp"
#include "issc/issc.h"

namespace {

struct Options {
  std::string config;
  std::string out;
  std::size_t n_samples = 1000;
  std::uint64_t seed = 42;
};

int report_failure(issc_status status, const char* what) {
  std::fprintf(stderr, "issc: %s: %s\n", what, issc_last_error());
  return issc_exit_code(status);
}

// Owns a string handed out by the library.
struct LibString {
  char* text = nullptr;
  ~LibString() { issc_string_free(text); }
};

int print_or_write(const char* text, const std::string& out) {
  if (out.empty()) {
    std::fputs(text, stdout);
    return 0;
  }
  std::FILE* f = std::fopen(out.c_str(), "wb");
  if (!f) {
    std::fprintf(stderr, "issc: cannot open '%s' for writing\n", out.c_str());
    return issc_exit_code(ISSC_ERROR_IO);
  }
  const std::size_t len = std::strlen(text);
  const bool ok = std::fwrite(text, 1, len, f) == len;
  if (std::fclose(f) != 0 || !ok) {
    std::fprintf(stderr, "issc: error while writing '%s'\n", out.c_str());
    return issc_exit_code(ISSC_ERROR_IO);
  }
  return 0;
}

issc_config* load_config(const std::string& path, int& code) {
  issc_config* config = nullptr;
  const issc_status st = issc_config_load(path.c_str(), &config);
  if (st != ISSC_OK) code = report_failure(st, "config");
  return config;
}

int cmd_certify(const Options& opt) {
  int code = 0;
  issc_config* config = load_config(opt.config, code);
  if (!config) return code;
  issc_certificate* cert = nullptr;
  issc_status st = issc_certify(config, &cert);
  issc_config_free(config);
  if (st == ISSC_ERROR_INFEASIBLE) {
    std::fprintf(stderr, "infeasible: %s\n", issc_last_error());
    return issc_exit_code(st);
  }
  if (st != ISSC_OK) return report_failure(st, "certify");
  LibString json;
  st = issc_certificate_to_json(cert, &json.text);
  issc_certificate_free(cert);
  if (st != ISSC_OK) return report_failure(st, "certify");
  return print_or_write(json.text, opt.out);
}

int cmd_simulate(const Options& opt) {
  int code = 0;
  issc_config* config = load_config(opt.config, code);
  if (!config) return code;
  issc_trace* trace = nullptr;
  issc_status st = issc_simulate(config, &trace);
  issc_config_free(config);
  if (st != ISSC_OK) return report_failure(st, "simulate");
  LibString csv;
  st = issc_trace_to_csv(trace, &csv.text);
  issc_trace_free(trace);
  if (st != ISSC_OK) return report_failure(st, "simulate");
  return print_or_write(csv.text, opt.out);
}

int cmd_validate(const Options& opt) {
  int code = 0;
  issc_config* config = load_config(opt.config, code);
  if (!config) return code;
  issc_validation* report = nullptr;
  const issc_status st = issc_validate(config, nullptr, &report);
  issc_config_free(config);
  if (st == ISSC_ERROR_INFEASIBLE) {
    std::fprintf(stderr, "infeasible: %s\n", issc_last_error());
    return issc_exit_code(st);
  }
  if (!report) return report_failure(st, "validate");
  LibString text;
  const issc_status text_st = issc_validation_to_text(report, &text.text);
  issc_validation_free(report);
  if (text_st != ISSC_OK) return report_failure(text_st, "validate");
  const int write_code = print_or_write(text.text, opt.out);
  if (write_code != 0) return write_code;
  return issc_exit_code(st);
}

int cmd_lemma_check(const Options& opt) {
  LibString summary;
  const issc_status st = issc_lemma_check(opt.n_samples, opt.seed, &summary.text);
  if (!summary.text) return report_failure(st, "lemma-check");
  std::printf("%s\n", summary.text);
  return issc_exit_code(st);
}

int cmd_convergence(const Options& opt) {
  int code = 0;
  issc_config* config = load_config(opt.config, code);
  if (!config) return code;
  LibString table;
  double order = 0.0;
  int degenerate = 0;
  const issc_status st = issc_convergence(config, &table.text, &order, &degenerate);
  issc_config_free(config);
  if (st != ISSC_OK) return report_failure(st, "convergence");
  std::fputs(table.text, stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certificate synthesis and trajectory validation for 1-D parabolic PDEs"};
  app.require_subcommand(1);
  Options opt;

  auto* certify = app.add_subcommand("certify", "Synthesize a decay/gain certificate (JSON)");
  certify->add_option("--config", opt.config, "Run configuration")->required();
  certify->add_option("--out", opt.out, "Write the certificate here instead of stdout");
  certify->add_option("--seed", opt.seed, "Accepted for uniformity; synthesis is deterministic");

  auto* sim = app.add_subcommand("simulate", "Simulate the scenario and emit the trace CSV");
  sim->add_option("--config", opt.config, "Run configuration")->required();
  sim->add_option("--out", opt.out, "CSV destination (stdout when omitted)");
  sim->add_option("--seed", opt.seed, "Accepted for uniformity; simulation is deterministic");

  auto* validate = app.add_subcommand("validate", "Check a simulated trajectory against a certificate");
  validate->add_option("--config", opt.config, "Run configuration")->required();
  validate->add_option("--out", opt.out, "Write the report here instead of stdout");
  validate->add_option("--seed", opt.seed, "Accepted for uniformity");

  auto* lemma = app.add_subcommand("lemma-check", "Randomized check of the trace inequalities");
  lemma->add_option("--n", opt.n_samples, "Number of random test functions")->capture_default_str();
  lemma->add_option("--seed", opt.seed, "Random seed")->capture_default_str();

  auto* conv = app.add_subcommand("convergence", "Spatial convergence study");
  conv->add_option("--config", opt.config, "Run configuration")->required();
  conv->add_option("--seed", opt.seed, "Accepted for uniformity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (certify->parsed()) return cmd_certify(opt);
  if (sim->parsed()) return cmd_simulate(opt);
  if (validate->parsed()) return cmd_validate(opt);
  if (lemma->parsed()) return cmd_lemma_check(opt);
  return cmd_convergence(opt);
}
