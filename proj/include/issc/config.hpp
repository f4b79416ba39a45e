#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "issc/certificates.hpp"
#include "issc/models.hpp"
#include "issc/solver.hpp"
#include "issc/validation.hpp"

namespace issc {

// Sectioned key = value text:
//
//   # comment
//   [bc]
//   a1 = 1.5
//
// Unknown sections and keys are rejected with the offending line number.
class RunConfig {
 public:
  struct Entry {
    std::string value;
    int line = 0;
  };
  struct Section {
    int line = 0;
    std::map<std::string, Entry> entries;
  };

  static RunConfig parse(std::string_view text, std::string source = "<config>");
  static RunConfig load(const std::filesystem::path& path);

  const std::string& source() const { return source_; }
  // Directory of the config file, used to resolve relative file references.
  const std::filesystem::path& base_dir() const { return base_dir_; }

  bool has_section(std::string_view name) const;
  bool has(std::string_view section, std::string_view key) const;
  const Entry* find(std::string_view section, std::string_view key) const;

  std::string get_string(std::string_view section, std::string_view key) const;
  std::optional<std::string> get_string_opt(std::string_view section, std::string_view key) const;
  double get_real(std::string_view section, std::string_view key) const;
  double get_real_or(std::string_view section, std::string_view key, double fallback) const;
  std::size_t get_count_or(std::string_view section, std::string_view key,
                           std::size_t fallback) const;
  std::vector<double> get_reals(std::string_view section, std::string_view key) const;

  [[noreturn]] void error_at(std::string_view section, std::string_view key,
                             const std::string& message) const;
  [[noreturn]] void error_missing(std::string_view section, std::string_view key) const;

 private:
  void check_schema() const;

  std::string source_;
  std::filesystem::path base_dir_;
  std::map<std::string, Section, std::less<>> sections_;
};

// "zero", "constant(c)", "sinusoid(amp, freq, phase)", "decaying_exp(amp,
// rate)", "table(t0:v0, t1:v1, ...)".
DisturbanceSignal parse_signal(std::string_view spec);

struct ModelSetup {
  ReactionTerm term;
  BoundaryParams bc;
  std::optional<TransportModel> transport;
};

ModelSetup build_model(const RunConfig& config);
DisturbanceSignal build_d1(const RunConfig& config);
Scenario build_scenario(const RunConfig& config);
SynthesisOptions build_synthesis_options(const RunConfig& config);
IssTolerance build_tolerance(const RunConfig& config);

}  // namespace issc
