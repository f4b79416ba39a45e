#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "issc/certificates.hpp"
#include "issc/solver.hpp"
#include "issc/validation.hpp"

namespace issc {

// {path, splits, eps, c_decay, c_gain_boundary, c_gain_distributed, slacks,
// options}; doubles are written in shortest round-trip form.
std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(std::string_view json);

// Header "t,energy,u0,u1", one row per recorded step, 17 significant digits.
std::string trace_to_csv(const Trace& trace);

// {pass, max_relative_violation, first_violation_time, n_samples}
std::string iss_report_to_json(const IssReport& report);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace issc
