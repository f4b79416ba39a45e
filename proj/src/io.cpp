#include "issc/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "issc/error.hpp"

namespace issc {

using nlohmann::json;

namespace {

json options_to_json(const SynthesisOptions& o) {
  json j = {
      {"gain_cap_boundary", o.gain_cap_boundary},
      {"gain_cap_distributed", o.gain_cap_distributed},
      {"split_steps", o.split_steps},
      {"eps_points", o.eps_points},
      {"eps_min", o.eps_min},
      {"eps_max", o.eps_max},
  };
  j["strictness_delta"] = o.strictness_delta ? json(*o.strictness_delta) : json(nullptr);
  return j;
}

SynthesisOptions options_from_json(const json& j) {
  SynthesisOptions o;
  o.gain_cap_boundary = j.at("gain_cap_boundary").get<double>();
  o.gain_cap_distributed = j.at("gain_cap_distributed").get<double>();
  o.split_steps = j.at("split_steps").get<std::size_t>();
  o.eps_points = j.at("eps_points").get<std::size_t>();
  o.eps_min = j.at("eps_min").get<double>();
  o.eps_max = j.at("eps_max").get<double>();
  if (j.contains("strictness_delta") && !j.at("strictness_delta").is_null()) {
    o.strictness_delta = j.at("strictness_delta").get<double>();
  }
  return o;
}

}  // namespace

std::string certificate_to_json(const Certificate& cert) {
  json slacks = json::array();
  for (const auto& s : cert.slacks) slacks.push_back({{"name", s.name}, {"value", s.value}});
  json j = {
      {"path", path_name(cert.path)},
      {"splits", cert.splits},
      {"eps", cert.eps},
      {"c_decay", cert.c_decay},
      {"c_gain_boundary", cert.c_gain_boundary},
      {"c_gain_distributed", cert.c_gain_distributed},
      {"slacks", slacks},
      {"options", options_to_json(cert.options)},
  };
  return j.dump(2) + "\n";
}

Certificate certificate_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::config, std::string("certificate JSON does not parse: ") + e.what());
  }
  try {
    Certificate cert;
    const auto name = j.at("path").get<std::string>();
    const auto path = parse_path(name);
    if (!path) fail(ErrorKind::config, "certificate names unknown path '" + name + "'");
    cert.path = *path;
    cert.splits = j.at("splits").get<std::vector<double>>();
    cert.eps = j.at("eps").get<std::vector<double>>();
    cert.c_decay = j.at("c_decay").get<double>();
    cert.c_gain_boundary = j.at("c_gain_boundary").get<double>();
    cert.c_gain_distributed = j.at("c_gain_distributed").get<double>();
    if (j.contains("slacks")) {
      for (const auto& s : j.at("slacks")) {
        cert.slacks.push_back({s.at("name").get<std::string>(), s.at("value").get<double>()});
      }
    }
    if (j.contains("options")) cert.options = options_from_json(j.at("options"));

    if (cert.splits.size() != split_count(cert.path)) {
      fail(ErrorKind::config, "certificate for " + name + " needs " +
                                  std::to_string(split_count(cert.path)) + " splits");
    }
    const std::size_t eps_count = is_general_path(cert.path) ? 4 : 2;
    if (cert.eps.size() != eps_count) {
      fail(ErrorKind::config,
           "certificate for " + name + " needs " + std::to_string(eps_count) + " eps values");
    }
    return cert;
  } catch (const json::exception& e) {
    fail(ErrorKind::config, std::string("certificate JSON is malformed: ") + e.what());
  }
}

std::string trace_to_csv(const Trace& trace) {
  std::string out = "t,energy,u0,u1\n";
  for (std::size_t k = 0; k < trace.size(); ++k) {
    out += format_real(trace.times[k]);
    out += ',';
    out += format_real(trace.energies[k]);
    out += ',';
    out += format_real(trace.left_values[k]);
    out += ',';
    out += format_real(trace.right_values[k]);
    out += '\n';
  }
  return out;
}

std::string iss_report_to_json(const IssReport& report) {
  json j = {
      {"pass", report.pass},
      {"max_relative_violation", report.max_relative_violation},
      {"n_samples", report.samples.size()},
  };
  j["first_violation_time"] =
      report.first_violation_time ? json(*report.first_violation_time) : json(nullptr);
  return j.dump();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) fail(ErrorKind::io, "error while reading '" + path.string() + "'");
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::io, "cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), std::streamsize(contents.size()));
  out.flush();
  if (!out) fail(ErrorKind::io, "error while writing '" + path.string() + "'");
}

}  // namespace issc
