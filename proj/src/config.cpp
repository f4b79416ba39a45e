#include "issc/config.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <set>

#include "issc/error.hpp"
#include "issc/io.hpp"

namespace issc {

namespace {

using KeySet = std::set<std::string, std::less<>>;

const std::map<std::string, KeySet, std::less<>>& schema() {
  static const std::map<std::string, KeySet, std::less<>> keys = {
      {"model", {"name", "alpha", "beta", "gamma", "lambda", "m", "n", "a", "b", "M1", "M2"}},
      {"bc", {"a1", "a2", "b1", "b2", "mu"}},
      {"disturbances", {"d1", "d2", "d2_shape"}},
      {"initial", {"kind", "a0", "a", "b", "omega", "coeffs", "x", "u", "frame"}},
      {"numerics", {"n_cells", "dt", "t_end", "output_stride"}},
      {"certificate",
       {"gain_cap_boundary", "gain_cap_distributed", "strictness_delta", "split_steps",
        "eps_points", "eps_min", "eps_max", "file"}},
      {"validation", {"rel_tol", "abs_tol", "form"}},
      {"convergence", {"grids", "exact"}},
  };
  return keys;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> to_real(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::vector<std::string_view> split_list(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

[[noreturn]] void config_error(const std::string& message) { fail(ErrorKind::config, message); }

}  // namespace

RunConfig RunConfig::parse(std::string_view text, std::string source) {
  RunConfig cfg;
  cfg.source_ = std::move(source);
  Section* current = nullptr;
  std::string current_name;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line =
        text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = (end == std::string_view::npos) ? text.size() + 1 : end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = cfg.source_ + ":" + std::to_string(line_no) + ": ";

    if (line.front() == '[') {
      if (line.back() != ']') config_error(where + "malformed section header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (!schema().contains(name)) config_error(where + "unknown section [" + name + "]");
      if (cfg.sections_.contains(name)) config_error(where + "duplicate section [" + name + "]");
      current = &cfg.sections_[name];
      current->line = line_no;
      current_name = name;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) config_error(where + "expected 'key = value'");
    if (!current) config_error(where + "key outside of any section");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) config_error(where + "empty key");
    if (!schema().at(current_name).contains(key)) {
      config_error(where + "unknown key '" + key + "' in section [" + current_name + "]");
    }
    if (current->entries.contains(key)) {
      config_error(where + "duplicate key '" + key + "' in section [" + current_name + "]");
    }
    if (value.empty()) config_error(where + "key '" + key + "' has an empty value");
    current->entries[key] = Entry{value, line_no};
  }
  cfg.check_schema();
  return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  RunConfig cfg = parse(read_text_file(path), path.string());
  cfg.base_dir_ = path.parent_path();
  return cfg;
}

void RunConfig::check_schema() const {
  for (const auto& [name, section] : sections_) {
    const auto& allowed = schema().at(name);
    for (const auto& [key, entry] : section.entries) {
      if (!allowed.contains(key)) error_at(name, key, "unknown key");
    }
  }
}

bool RunConfig::has_section(std::string_view name) const { return sections_.contains(name); }

bool RunConfig::has(std::string_view section, std::string_view key) const {
  return find(section, key) != nullptr;
}

const RunConfig::Entry* RunConfig::find(std::string_view section, std::string_view key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  const auto e = s->second.entries.find(std::string(key));
  return e == s->second.entries.end() ? nullptr : &e->second;
}

void RunConfig::error_at(std::string_view section, std::string_view key,
                         const std::string& message) const {
  const Entry* entry = find(section, key);
  std::string where = source_;
  if (entry) where += ":" + std::to_string(entry->line);
  config_error(where + ": [" + std::string(section) + "] " + std::string(key) + ": " + message);
}

void RunConfig::error_missing(std::string_view section, std::string_view key) const {
  config_error(source_ + ": missing required key '" + std::string(key) + "' in section [" +
               std::string(section) + "]");
}

std::string RunConfig::get_string(std::string_view section, std::string_view key) const {
  const Entry* entry = find(section, key);
  if (!entry) error_missing(section, key);
  return entry->value;
}

std::optional<std::string> RunConfig::get_string_opt(std::string_view section,
                                                     std::string_view key) const {
  const Entry* entry = find(section, key);
  if (!entry) return std::nullopt;
  return entry->value;
}

double RunConfig::get_real(std::string_view section, std::string_view key) const {
  const std::string text = get_string(section, key);
  const auto value = to_real(text);
  if (!value) error_at(section, key, "expected a finite number, got '" + text + "'");
  return *value;
}

double RunConfig::get_real_or(std::string_view section, std::string_view key,
                              double fallback) const {
  return has(section, key) ? get_real(section, key) : fallback;
}

std::size_t RunConfig::get_count_or(std::string_view section, std::string_view key,
                                    std::size_t fallback) const {
  const Entry* entry = find(section, key);
  if (!entry) return fallback;
  std::size_t value = 0;
  const auto& text = entry->value;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    error_at(section, key, "expected a nonnegative integer, got '" + text + "'");
  }
  return value;
}

std::vector<double> RunConfig::get_reals(std::string_view section, std::string_view key) const {
  const std::string text = get_string(section, key);
  std::vector<double> values;
  for (auto part : split_list(text, ',')) {
    const auto value = to_real(part);
    if (!value) error_at(section, key, "expected a comma-separated list of numbers");
    values.push_back(*value);
  }
  return values;
}

DisturbanceSignal parse_signal(std::string_view spec) {
  const std::string original(spec);
  spec = trim(spec);
  const auto open = spec.find('(');
  const std::string name(trim(spec.substr(0, open)));
  if (open == std::string_view::npos) {
    if (name == "zero") return DisturbanceSignal::zero();
    config_error("signal '" + original + "' is not of the form name(args)");
  }
  if (spec.back() != ')') config_error("signal '" + original + "' lacks a closing ')'");
  const std::string_view body = trim(spec.substr(open + 1, spec.size() - open - 2));

  const auto numbers = [&](std::size_t lo, std::size_t hi) {
    std::vector<double> out;
    if (!body.empty()) {
      for (auto part : split_list(body, ',')) {
        const auto v = to_real(part);
        if (!v) config_error("signal '" + original + "' has a non-numeric argument");
        out.push_back(*v);
      }
    }
    if (out.size() < lo || out.size() > hi) {
      config_error("signal '" + original + "' has the wrong number of arguments");
    }
    return out;
  };

  try {
    if (name == "zero") {
      numbers(0, 0);
      return DisturbanceSignal::zero();
    }
    if (name == "constant") return DisturbanceSignal::constant(numbers(1, 1)[0]);
    if (name == "sinusoid") {
      const auto v = numbers(2, 3);
      return DisturbanceSignal::sinusoid(v[0], v[1], v.size() == 3 ? v[2] : 0.0);
    }
    if (name == "decaying_exp") {
      const auto v = numbers(2, 2);
      return DisturbanceSignal::decaying_exp(v[0], v[1]);
    }
    if (name == "table") {
      std::vector<double> times, values;
      for (auto part : split_list(body, ',')) {
        const auto colon = part.find(':');
        if (colon == std::string_view::npos) {
          config_error("table signal entries must look like t:v, got '" + std::string(part) + "'");
        }
        const auto t = to_real(part.substr(0, colon));
        const auto v = to_real(part.substr(colon + 1));
        if (!t || !v) config_error("table signal entry '" + std::string(part) + "' is not numeric");
        times.push_back(*t);
        values.push_back(*v);
      }
      return DisturbanceSignal::table(std::move(times), std::move(values));
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::config) throw;
    config_error("signal '" + original + "': " + e.what());
  }
  config_error("unknown signal kind '" + name + "'");
}

namespace {

void only_keys(const RunConfig& cfg, std::string_view section, const KeySet& allowed,
               const std::string& context) {
  for (const auto& key : schema().at(std::string(section))) {
    if (cfg.has(section, key) && !allowed.contains(key)) {
      cfg.error_at(section, key, "not used by " + context);
    }
  }
}

BoundaryParams read_bc(const RunConfig& cfg) {
  if (!cfg.has_section("bc")) config_error(cfg.source() + ": missing section [bc]");
  BoundaryParams bc;
  bc.a1 = cfg.get_real("bc", "a1");
  bc.a2 = cfg.get_real("bc", "a2");
  bc.b1 = cfg.get_real("bc", "b1");
  bc.b2 = cfg.get_real("bc", "b2");
  bc.mu = cfg.get_real_or("bc", "mu", 1.0);
  return bc;
}

std::optional<Profile> parse_profile(std::string_view name) {
  for (Profile p : {Profile::uniform, Profile::sine, Profile::cosine}) {
    if (profile_name(p) == name) return p;
  }
  return std::nullopt;
}

DisturbanceSignal signal_at(const RunConfig& cfg, std::string_view section, std::string_view key) {
  const auto text = cfg.get_string_opt(section, key);
  if (!text) return DisturbanceSignal::zero();
  try {
    return parse_signal(*text);
  } catch (const Error& e) {
    cfg.error_at(section, key, e.what());
  }
}

}  // namespace

ModelSetup build_model(const RunConfig& cfg) {
  if (!cfg.has_section("model")) config_error(cfg.source() + ": missing section [model]");
  const std::string name = cfg.get_string("model", "name");
  ModelSetup setup;

  const bool wants_d2 = cfg.has("disturbances", "d2") || cfg.has("disturbances", "d2_shape");
  if (wants_d2 && name != "linear_form") {
    const char* key = cfg.has("disturbances", "d2") ? "d2" : "d2_shape";
    cfg.error_at("disturbances", key, "a distributed disturbance needs model linear_form");
  }

  try {
    if (name == "ginzburg_landau") {
      only_keys(cfg, "model", {"name", "alpha", "beta"}, "ginzburg_landau");
      setup.term = make_ginzburg_landau(cfg.get_real("model", "alpha"),
                                        cfg.get_real("model", "beta"));
      setup.bc = read_bc(cfg);
    } else if (name == "generalized_gl") {
      only_keys(cfg, "model", {"name", "alpha", "beta", "gamma", "lambda"}, "generalized_gl");
      setup.term = make_generalized_gl(
          cfg.get_real("model", "alpha"), cfg.get_real("model", "beta"),
          cfg.get_real_or("model", "gamma", 0.0), cfg.get_real("model", "lambda"));
      setup.bc = read_bc(cfg);
    } else if (name == "transport") {
      only_keys(cfg, "model", {"name", "m", "n", "a", "b"}, "transport");
      only_keys(cfg, "bc", {"mu"}, "transport (its boundary follows from a and b)");
      const double mu = cfg.get_real_or("bc", "mu", 1.0);
      TransportModel model = make_transport(cfg.get_real("model", "m"),
                                            cfg.get_real_or("model", "n", 0.0), mu);
      setup.bc = model.boundary(cfg.get_real("model", "a"), cfg.get_real("model", "b"));
      setup.term = model.term;
      setup.transport = std::move(model);
    } else if (name == "linear_form") {
      only_keys(cfg, "model", {"name", "M1", "M2"}, "linear_form");
      std::optional<DistributedDisturbance> dist;
      if (wants_d2) {
        DistributedDisturbance d;
        d.signal = signal_at(cfg, "disturbances", "d2");
        if (const auto shape = cfg.get_string_opt("disturbances", "d2_shape")) {
          const auto profile = parse_profile(*shape);
          if (!profile) cfg.error_at("disturbances", "d2_shape", "expected uniform, sine or cosine");
          d.profile = *profile;
        }
        dist = d;
      }
      setup.term = make_linear_form(cfg.get_real("model", "M1"),
                                    cfg.get_real_or("model", "M2", 0.0), dist);
      setup.bc = read_bc(cfg);
    } else {
      cfg.error_at("model", "name",
                   "expected ginzburg_landau, generalized_gl, transport or linear_form");
    }
    setup.bc.validate();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::config) throw;
    config_error(cfg.source() + ": [model]/[bc]: " + e.what());
  }
  return setup;
}

DisturbanceSignal build_d1(const RunConfig& cfg) { return signal_at(cfg, "disturbances", "d1"); }

namespace {

InitialCondition read_initial(const RunConfig& cfg) {
  InitialCondition ic;
  if (!cfg.has_section("initial")) return ic;
  const std::string kind = cfg.get_string("initial", "kind");
  if (kind == "zero") {
    only_keys(cfg, "initial", {"kind", "frame"}, "kind = zero");
  } else if (kind == "fourier") {
    only_keys(cfg, "initial", {"kind", "frame", "a0", "a", "b", "omega"}, "kind = fourier");
    FourierSeries f;
    f.a0 = cfg.get_real_or("initial", "a0", 0.0);
    if (cfg.has("initial", "a")) f.a = cfg.get_reals("initial", "a");
    if (cfg.has("initial", "b")) f.b = cfg.get_reals("initial", "b");
    f.omega = cfg.get_real_or("initial", "omega", std::numbers::pi);
    ic.kind = f;
  } else if (kind == "polynomial") {
    only_keys(cfg, "initial", {"kind", "frame", "coeffs"}, "kind = polynomial");
    ic.kind = Polynomial{cfg.get_reals("initial", "coeffs")};
  } else if (kind == "table") {
    only_keys(cfg, "initial", {"kind", "frame", "x", "u"}, "kind = table");
    InitialCondition::Table table{cfg.get_reals("initial", "x"), cfg.get_reals("initial", "u")};
    if (table.x.size() != table.u.size()) cfg.error_at("initial", "u", "x and u differ in length");
    for (std::size_t i = 1; i < table.x.size(); ++i) {
      if (!(table.x[i] > table.x[i - 1])) cfg.error_at("initial", "x", "must be increasing");
    }
    ic.kind = std::move(table);
  } else {
    cfg.error_at("initial", "kind", "expected zero, fourier, polynomial or table");
  }
  return ic;
}

}  // namespace

Scenario build_scenario(const RunConfig& cfg) {
  ModelSetup setup = build_model(cfg);
  Scenario scenario;
  scenario.bc = setup.bc;
  scenario.term = setup.term;
  scenario.d1 = build_d1(cfg);

  const std::size_t n_cells = cfg.get_count_or("numerics", "n_cells", 64);
  if (n_cells < 2) cfg.error_at("numerics", "n_cells", "must be at least 2");
  scenario.grid = build_grid(n_cells);
  scenario.t_end = cfg.get_real_or("numerics", "t_end", 1.0);
  if (!(scenario.t_end > 0.0)) cfg.error_at("numerics", "t_end", "must be positive");
  scenario.dt = cfg.get_real_or("numerics", "dt", default_time_step(scenario.t_end));
  if (!(scenario.dt > 0.0)) cfg.error_at("numerics", "dt", "must be positive");
  scenario.output_stride = cfg.get_count_or("numerics", "output_stride", 1);
  if (scenario.output_stride < 1) cfg.error_at("numerics", "output_stride", "must be at least 1");

  scenario.u0 = read_initial(cfg);
  const std::string frame = cfg.get_string_opt("initial", "frame").value_or("transformed");
  if (frame == "original") {
    if (!setup.transport) cfg.error_at("initial", "frame", "only meaningful for model transport");
    // Sample u0 on the grid and map it to w = exp(rate x) u.
    const Field original = scenario.u0.sample(scenario.grid);
    const Field w = transport_transform(original, scenario.grid, setup.transport->m,
                                        setup.transport->mu, TransformDirection::forward);
    const auto nodes = scenario.grid.nodes();
    scenario.u0.kind = InitialCondition::Table{{nodes.begin(), nodes.end()}, w.values};
  } else if (frame != "transformed") {
    cfg.error_at("initial", "frame", "expected transformed or original");
  }

  try {
    scenario.validate();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::config) throw;
    config_error(cfg.source() + ": scenario: " + e.what());
  }
  return scenario;
}

SynthesisOptions build_synthesis_options(const RunConfig& cfg) {
  SynthesisOptions o;
  o.gain_cap_boundary = cfg.get_real_or("certificate", "gain_cap_boundary", o.gain_cap_boundary);
  o.gain_cap_distributed =
      cfg.get_real_or("certificate", "gain_cap_distributed", o.gain_cap_distributed);
  if (cfg.has("certificate", "strictness_delta")) {
    o.strictness_delta = cfg.get_real("certificate", "strictness_delta");
    if (*o.strictness_delta < 0.0) cfg.error_at("certificate", "strictness_delta", "must be >= 0");
  }
  o.split_steps = cfg.get_count_or("certificate", "split_steps", o.split_steps);
  o.eps_points = cfg.get_count_or("certificate", "eps_points", o.eps_points);
  o.eps_min = cfg.get_real_or("certificate", "eps_min", o.eps_min);
  o.eps_max = cfg.get_real_or("certificate", "eps_max", o.eps_max);
  if (o.split_steps < 1) cfg.error_at("certificate", "split_steps", "must be at least 1");
  if (o.eps_points < 2) cfg.error_at("certificate", "eps_points", "must be at least 2");
  if (!(o.eps_min > 0.0 && o.eps_max > o.eps_min)) {
    cfg.error_at("certificate", cfg.has("certificate", "eps_min") ? "eps_min" : "eps_max",
                 "needs 0 < eps_min < eps_max");
  }
  if (!(o.gain_cap_boundary > 0.0)) cfg.error_at("certificate", "gain_cap_boundary", "must be > 0");
  if (!(o.gain_cap_distributed > 0.0)) {
    cfg.error_at("certificate", "gain_cap_distributed", "must be > 0");
  }
  return o;
}

IssTolerance build_tolerance(const RunConfig& cfg) {
  IssTolerance tol;
  tol.rel_tol = cfg.get_real_or("validation", "rel_tol", tol.rel_tol);
  tol.abs_tol = cfg.get_real_or("validation", "abs_tol", tol.abs_tol);
  if (tol.rel_tol < 0.0) cfg.error_at("validation", "rel_tol", "must be >= 0");
  if (tol.abs_tol < 0.0) cfg.error_at("validation", "abs_tol", "must be >= 0");
  return tol;
}

}  // namespace issc
