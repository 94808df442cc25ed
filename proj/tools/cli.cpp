// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "relmol/relmol.h"

namespace relmol::cli {

namespace {

constexpr double kTwoOverPi = 0.63661977236758134308;

enum class Kind { number, integer, flag, text, list };

using Check = std::function<bool(const Value&)>;

struct Spec {
  std::string name;
  Kind kind;
  Value fallback;
  /// Human-readable domain for diagnostics, e.g. "(0,1)".
  std::string domain;
  Check ok;
  /// Commands that read the parameter; empty means every command.
  std::vector<std::string> used_by;
  std::string help;
  /// Left open by the theory; echoed with an unset-by-paper marker at default.
  bool free_constant = false;
};

double as_number(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  return std::nan("");
}

Check positive() {
  return [](const Value& v) { return as_number(v) > 0.0; };
}
Check nonnegative() {
  return [](const Value& v) { return as_number(v) >= 0.0; };
}
Check open_unit() {
  return [](const Value& v) { return as_number(v) > 0.0 && as_number(v) < 1.0; };
}
Check at_least(double lo) {
  return [lo](const Value& v) { return as_number(v) >= lo; };
}
Check one_of(std::vector<std::string> options) {
  return [options](const Value& v) {
    const auto* s = std::get_if<std::string>(&v);
    return s != nullptr && std::find(options.begin(), options.end(), *s) != options.end();
  };
}
Check any() {
  return [](const Value&) { return true; };
}
Check finite_list() {
  return [](const Value& v) {
    const auto* l = std::get_if<std::vector<double>>(&v);
    return l != nullptr && std::all_of(l->begin(), l->end(), [](double x) { return std::isfinite(x); });
  };
}

const std::vector<std::string> kSingleCentre{"tf-atom", "herbst-ground", "herbst-scan"};

std::vector<std::string> join(std::initializer_list<std::vector<std::string>> lists) {
  std::vector<std::string> out;
  for (const auto& l : lists) out.insert(out.end(), l.begin(), l.end());
  return out;
}

const std::vector<Spec>& specs() {
  const std::vector<std::string> mesh_cmds{"tf-diatomic", "tf-fit", "scott"};
  static const std::vector<Spec> table = {
      {"z", Kind::number, 1.0, "> 0", positive(), kSingleCentre, "Nuclear charge (single-centre commands)"},
      {"z1", Kind::number, 1.0, "> 0", positive(),
       join({{"bounds", "tf-diatomic", "tf-fit", "scott"}, kSingleCentre}),
       "Charge of the first nucleus (alias of --z for single-centre commands)"},
      {"z2", Kind::number, 1.0, "> 0", positive(), {"bounds", "tf-diatomic", "tf-fit", "scott"},
       "Charge of the second nucleus"},
      {"n", Kind::integer, std::int64_t{1}, ">= 1", at_least(1), {"bounds"}, "Electron number"},
      {"alpha", Kind::number, 0.0, ">= 0", nonnegative(), {"bounds", "herbst-ground", "herbst-scan", "scott"},
       "Fine-structure constant"},
      {"epsilon", Kind::number, 0.5, "(0,1)", open_unit(), {"bounds", "scott"}, "Splitting parameter"},
      {"tau", Kind::number, 1.0, "> 0", positive(), {"bounds", "scott"}, "Bound constant tau", true},
      {"C", Kind::number, 1.0, "> 0", positive(), {"bounds"}, "Trace-inequality constant", true},
      {"c0", Kind::number, 1.0, "> 0", positive(), {"bounds", "scott"}, "Error-envelope constant", true},
      {"c1", Kind::number, 1.0, "> 0", positive(), {"bounds", "scott"}, "Van der Waals constant", true},
      {"radius", Kind::number, 0.0, ">= 0 (0 selects the standard choice)", nonnegative(), {"bounds"},
       "Radius of the trace bound"},
      {"statistics", Kind::text, std::string("fermionic"), "fermionic|none", one_of({"fermionic", "none"}),
       {"bounds"}, "Particle statistics"},
      {"R", Kind::number, 2.0, "> 0", positive(), {"tf-diatomic", "scott"}, "Internuclear separation"},
      {"r-min", Kind::number, 4.0, "> 0", positive(), {"tf-fit"}, "Smallest scaled separation"},
      {"r-max", Kind::number, 10.0, "> 0", positive(), {"tf-fit"}, "Largest scaled separation"},
      {"r-count", Kind::integer, std::int64_t{5}, ">= 4", at_least(4), {"tf-fit"}, "Number of separations"},
      {"r0", Kind::number, 1.0, "> 0", positive(), {"scott"}, "Smallest admissible scaled separation"},
      {"scott-gamma", Kind::list, std::vector<double>{}, "finite numbers", finite_list(), {"scott"},
       "Scott table abscissae Z alpha (comma separated)"},
      {"scott-value", Kind::list, std::vector<double>{}, "finite numbers", finite_list(), {"scott"},
       "Scott table values (comma separated)"},
      {"beta", Kind::number, 0.9, "[0,1)", [](const Value& v) { return as_number(v) >= 0.0 && as_number(v) < 1.0; },
       {"herbst-scan"}, "Trial-state singularity |x|^-beta"},
      {"lambda-min", Kind::number, 1.0, "> 0", positive(), {"herbst-scan"}, "Smallest dilation"},
      {"lambda-max", Kind::number, 1e8, "> 0", positive(), {"herbst-scan"}, "Largest dilation"},
      {"lambda-count", Kind::integer, std::int64_t{33}, ">= 2", at_least(2), {"herbst-scan"},
       "Number of dilations"},
      {"grid-n", Kind::integer, std::int64_t{800}, ">= 64", at_least(64), {"herbst-ground"},
       "Momentum grid points"},
      {"grid-guard", Kind::number, 1e-3, "> 0", positive(), {"herbst-ground"}, "Momentum cutoff guard"},
      {"x-min", Kind::number, 1e-4, "> 0", positive(), {"tf-atom"}, "Smallest output x"},
      {"x-max", Kind::number, 200.0, ">= 20", at_least(20.0), {"tf-atom"}, "Shooting endpoint x"},
      {"x-points", Kind::integer, std::int64_t{400}, ">= 16", at_least(16), {"tf-atom"}, "Output grid points"},
      {"ode-tol", Kind::number, 1e-12, "(0,1e-4)",
       [](const Value& v) { return as_number(v) > 0.0 && as_number(v) < 1e-4; }, {"tf-atom"},
       "Shooting integrator tolerance"},
      {"n-sigma", Kind::integer, std::int64_t{160}, ">= 8", at_least(8), mesh_cmds, "Radial mesh cells"},
      {"n-tau", Kind::integer, std::int64_t{120}, ">= 8", at_least(8), mesh_cmds, "Angular mesh cells"},
      {"outer-radius", Kind::number, 60.0, "> 0", positive(), mesh_cmds, "Minimum outer radius (scaled)"},
      {"outer-factor", Kind::number, 6.0, "> 1", [](const Value& v) { return as_number(v) > 1.0; }, mesh_cmds,
       "Outer radius in units of the scaled separation"},
      {"max-iterations", Kind::integer, std::int64_t{500}, ">= 1", at_least(1), mesh_cmds,
       "Newton iteration cap"},
      {"no-mesh-error", Kind::flag, false, "true|false", any(), mesh_cmds,
       "Skip the half-resolution mesh-error estimate"},
      {"residual-tol", Kind::number, 0.0, "> 0", positive(), {"tf-diatomic", "tf-fit", "scott", "herbst-ground"},
       "Solver residual tolerance (command default when unset)"},
      {"seed", Kind::integer, std::int64_t{1}, ">= 0", at_least(0), {"verify"}, "Random seed"},
      {"format", Kind::text, std::string("json"), "json|csv", one_of({"json", "csv"}), {}, "Output format"},
      {"no-timing", Kind::flag, false, "true|false", any(), {}, "Omit wall-clock timings"},
  };
  return table;
}

const Spec* find_spec(const std::string& name) {
  for (const Spec& s : specs()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

bool used_by(const Spec& s, const std::string& command) {
  return s.used_by.empty() || std::find(s.used_by.begin(), s.used_by.end(), command) != s.used_by.end();
}

struct InputError {
  std::string message;
};

std::string render(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Short form for diagnostics.
std::string brief(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.8g", v);
  return buf;
}

std::string render(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return render(*d);
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  std::string out;
  for (double x : std::get<std::vector<double>>(v)) out += (out.empty() ? "" : ",") + render(x);
  return out;
}

double parse_double(const std::string& name, const std::string& raw) {
  const char* begin = raw.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (raw.empty() || end != begin + raw.size() || !std::isfinite(v)) {
    throw InputError{name + ": expected a finite number, got '" + raw + "'"};
  }
  return v;
}

Value parse_flag_value(const Spec& s, const std::string& raw) {
  switch (s.kind) {
    case Kind::number: return parse_double(s.name, raw);
    case Kind::integer: {
      std::int64_t v = 0;
      const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
      if (raw.empty() || ec != std::errc() || ptr != raw.data() + raw.size()) {
        throw InputError{s.name + ": expected an integer, got '" + raw + "'"};
      }
      return v;
    }
    case Kind::flag: return true;
    case Kind::text: return raw;
    case Kind::list: {
      std::vector<double> out;
      std::stringstream ss(raw);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(parse_double(s.name, item));
      return out;
    }
  }
  return raw;
}

Value parse_json_value(const Spec& s, const nlohmann::json& j) {
  const std::string where = "config key '" + s.name + "'";
  switch (s.kind) {
    case Kind::number:
      if (!j.is_number()) throw InputError{where + ": expected a number"};
      return j.get<double>();
    case Kind::integer:
      if (j.is_number_integer()) return j.get<std::int64_t>();
      if (j.is_number_float() && j.get<double>() == std::floor(j.get<double>())) {
        return static_cast<std::int64_t>(j.get<double>());
      }
      throw InputError{where + ": expected an integer"};
    case Kind::flag:
      if (!j.is_boolean()) throw InputError{where + ": expected true or false"};
      return j.get<bool>();
    case Kind::text:
      if (!j.is_string()) throw InputError{where + ": expected a string"};
      return j.get<std::string>();
    case Kind::list:
      if (j.is_string()) return parse_flag_value(s, j.get<std::string>());
      if (!j.is_array()) throw InputError{where + ": expected an array of numbers"};
      {
        std::vector<double> out;
        for (const auto& x : j) {
          if (!x.is_number()) throw InputError{where + ": expected an array of numbers"};
          out.push_back(x.get<double>());
        }
        return out;
      }
  }
  throw InputError{where + ": unsupported value"};
}

nlohmann::json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError{"config: cannot read file '" + path + "'"};
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError{"config: '" + path + "' is not valid JSON (" + std::string(e.what()) + ")"};
  }
  if (!j.is_object()) throw InputError{"config: '" + path + "' must hold a flat JSON object"};
  return j;
}

void require_domain(const Spec& s, const Value& v) {
  if (!s.ok(v)) {
    const std::string shown = std::holds_alternative<double>(v) ? brief(std::get<double>(v)) : render(v);
    throw InputError{s.name + " = " + shown + " is outside its domain " + s.domain};
  }
}

Value command_default(const Spec& s, const std::string& command) {
  if (s.name == "residual-tol") {
    if (command == "herbst-ground") return relmol_herbst_default().residual_tolerance;
    return relmol_tf_mesh_default().residual_tolerance;
  }
  return s.fallback;
}

void gate(bool ok, const std::string& message) {
  if (!ok) throw InputError{message};
}

// Cross-parameter rules, applied once every value is resolved.
void validate_resolved(const RunConfig& c) {
  const std::string& cmd = c.command;
  if (cmd == "verify") {
    bool known = false;
    for (std::size_t i = 0; i < relmol_verify_suite_count(); ++i) {
      known = known || c.suite == relmol_verify_suite_name(i);
    }
    std::string names;
    for (std::size_t i = 0; i < relmol_verify_suite_count(); ++i) {
      names += (i ? "|" : "") + std::string(relmol_verify_suite_name(i));
    }
    gate(known, "suite '" + c.suite + "' is not one of " + names);
  }
  if (cmd == "herbst-ground") {
    const double g = c.number("z") * c.number("alpha");
    gate(g < kTwoOverPi, "alpha: Z alpha = " + brief(g) +
                             " must be below the critical coupling 2/pi = 0.63662 for herbst-ground");
  }
  if (cmd == "bounds" || cmd == "scott") {
    const double g = std::max(c.number("z1"), c.number("z2")) * c.number("alpha");
    gate(g <= kTwoOverPi, "alpha: max(Z1, Z2) alpha = " + brief(g) +
                              " exceeds the critical coupling 2/pi = 0.63662");
  }
  if (cmd == "scott") {
    const double r = std::cbrt(c.number("z1") + c.number("z2")) * c.number("R");
    gate(r > c.number("r0"), "R: scaled separation (Z1 + Z2)^(1/3) R = " + brief(r) +
                                 " must exceed r0 = " + brief(c.number("r0")));
    gate(c.list("scott-gamma").size() == c.list("scott-value").size(),
         "scott-value: needs as many entries as scott-gamma");
  }
  if (cmd == "tf-fit") {
    gate(c.number("r-max") > c.number("r-min"), "r-max must exceed r-min");
  }
  if (cmd == "herbst-scan") {
    gate(c.number("lambda-max") >= 1e4 * c.number("lambda-min"),
         "lambda-max must be at least 1e4 times lambda-min");
  }
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"verify",        "bounds",       "tf-atom", "tf-diatomic", "tf-fit",
                                          "herbst-ground", "herbst-scan",  "scott"};
  return c;
}

// --- RunConfig ---------------------------------------------------------------

const Param* RunConfig::find(const std::string& name) const {
  for (const Param& p : params) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

namespace {
const Value& lookup(const RunConfig& c, const std::string& name) {
  const Param* p = c.find(name);
  if (p == nullptr) throw std::logic_error("parameter '" + name + "' is not resolved for " + c.command);
  return p->value;
}
}  // namespace

double RunConfig::number(const std::string& name) const { return as_number(lookup(*this, name)); }
std::int64_t RunConfig::integer(const std::string& name) const {
  return std::get<std::int64_t>(lookup(*this, name));
}
bool RunConfig::flag(const std::string& name) const { return std::get<bool>(lookup(*this, name)); }
std::string RunConfig::text(const std::string& name) const {
  return std::get<std::string>(lookup(*this, name));
}
std::vector<double> RunConfig::list(const std::string& name) const {
  return std::get<std::vector<double>>(lookup(*this, name));
}
bool RunConfig::defaulted(const std::string& name) const {
  const Param* p = find(name);
  return p == nullptr || p->source == Source::default_value;
}

// --- parsing -------------------------------------------------------------------

ParseOutcome parse_and_validate(const std::vector<std::string>& args,
                                const std::optional<std::string>& env_config) {
  ParseOutcome out;
  CLI::App app{"Bounds, solvers and invariant suites for relativistic diatomic molecules", "relmol"};
  app.set_version_flag("--version", relmol_version());
  std::string command;
  std::string suite;
  std::string config_path;
  std::string output_path;
  app.add_option("command", command, "One of: verify, bounds, tf-atom, tf-diatomic, tf-fit, "
                                     "herbst-ground, herbst-scan, scott");
  app.add_option("suite", suite, "Suite for verify (default all)");
  app.add_option("--config", config_path, "Flat JSON config file (default $RELMOL_CONFIG)");
  app.add_option("--output", output_path, "Output file (default stdout)");

  std::map<std::string, std::string> raw;
  std::map<std::string, bool> switches;
  std::map<std::string, CLI::Option*> options;
  for (const Spec& s : specs()) {
    if (s.kind == Kind::flag) {
      switches[s.name] = false;
      options[s.name] = app.add_flag("--" + s.name, switches[s.name], s.help);
    } else {
      options[s.name] = app.add_option("--" + s.name, raw[s.name], s.help + " [" + s.domain + "]");
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out.exit_code = kExitOk;
    out.message = app.help();
    return out;
  } catch (const CLI::CallForVersion&) {
    out.exit_code = kExitOk;
    out.message = std::string(relmol_version()) + "\n";
    return out;
  } catch (const CLI::ParseError& e) {
    out.exit_code = kExitInput;
    out.message = e.what();
    return out;
  }

  try {
    // Flags first, each checked against its own domain.
    std::map<std::string, Value> from_flags;
    for (const Spec& s : specs()) {
      if (options[s.name]->count() == 0) continue;
      from_flags[s.name] = s.kind == Kind::flag ? Value(true) : parse_flag_value(s, raw[s.name]);
      require_domain(s, from_flags[s.name]);
    }

    std::map<std::string, Value> from_config;
    const std::string path = !config_path.empty() ? config_path : env_config.value_or("");
    if (!path.empty()) {
      const nlohmann::json j = load_config(path);
      for (const auto& [key, value] : j.items()) {
        const Spec* s = find_spec(key);
        if (s == nullptr) throw InputError{"config: unknown key '" + key + "'"};
        from_config[key] = parse_json_value(*s, value);
        require_domain(*s, from_config[key]);
      }
    }

    if (command.empty()) throw InputError{"command: missing; expected one of verify, bounds, tf-atom, "
                                          "tf-diatomic, tf-fit, herbst-ground, herbst-scan, scott"};
    if (std::find(commands().begin(), commands().end(), command) == commands().end()) {
      throw InputError{"command: unknown command '" + command + "'"};
    }
    if (!suite.empty() && command != "verify") {
      throw InputError{"command: unexpected argument '" + suite + "' after " + command};
    }
    for (const auto& [name, value] : from_flags) {
      if (!used_by(*find_spec(name), command)) {
        throw InputError{name + ": not used by command " + command};
      }
    }

    RunConfig cfg;
    cfg.command = command;
    if (!suite.empty()) cfg.suite = suite;
    const bool single = std::find(kSingleCentre.begin(), kSingleCentre.end(), command) != kSingleCentre.end();
    for (const Spec& s : specs()) {
      if (!used_by(s, command)) continue;
      if (single && s.name == "z1") continue;
      Param p{s.name, command_default(s, command), Source::default_value};
      if (auto it = from_config.find(s.name); it != from_config.end()) p = {s.name, it->second, Source::config_file};
      if (auto it = from_flags.find(s.name); it != from_flags.end()) p = {s.name, it->second, Source::flag};
      if (single && s.name == "z") {
        // z1 is accepted as an alias; the higher-precedence source wins.
        Param alias{"z", s.fallback, Source::default_value};
        if (auto it = from_config.find("z1"); it != from_config.end()) alias = {"z", it->second, Source::config_file};
        if (auto it = from_flags.find("z1"); it != from_flags.end()) alias = {"z", it->second, Source::flag};
        if (alias.source == p.source && alias.source != Source::default_value &&
            as_number(alias.value) != as_number(p.value)) {
          throw InputError{"z: --z and --z1 give different charges"};
        }
        if (alias.source > p.source) p = alias;
      }
      cfg.params.push_back(std::move(p));
    }
    validate_resolved(cfg);
    out.config = std::move(cfg);
  } catch (const InputError& e) {
    out.exit_code = kExitInput;
    out.message = e.message;
    return out;
  }
  // The output path is plumbing, not part of the echoed configuration.
  out.config.params.push_back({"output", output_path, output_path.empty() ? Source::default_value : Source::flag});
  return out;
}

// --- execution -----------------------------------------------------------------

bool RunReport::passed() const {
  return !error && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

int RunReport::exit_code() const { return passed() ? kExitOk : kExitFailure; }

namespace {

relmol_tf_mesh mesh_of(const RunConfig& c) {
  relmol_tf_mesh m = relmol_tf_mesh_default();
  m.n_sigma = static_cast<size_t>(c.integer("n-sigma"));
  m.n_tau = static_cast<size_t>(c.integer("n-tau"));
  m.outer_radius = c.number("outer-radius");
  m.outer_factor = c.number("outer-factor");
  m.max_iterations = static_cast<size_t>(c.integer("max-iterations"));
  m.residual_tolerance = c.number("residual-tol");
  m.estimate_mesh_error = c.flag("no-mesh-error") ? 0 : 1;
  return m;
}

void collect(const relmol_report* rep, RunReport& out) {
  for (std::size_t i = 0; i < relmol_report_size(rep); ++i) {
    relmol_entry e{};
    relmol_report_entry(rep, i, &e);
    ResultEntry r;
    r.id = e.id;
    r.value = e.value;
    if (e.has_exact) {
      r.exact = e.exact_den == 1 ? std::to_string(e.exact_num)
                                 : std::to_string(e.exact_num) + "/" + std::to_string(e.exact_den);
    }
    r.formula = e.formula;
    r.units = e.units;
    r.note = e.note;
    for (std::size_t k = 0; k < e.input_count; ++k) {
      relmol_input in{};
      relmol_report_input(rep, i, k, &in);
      r.inputs.push_back({in.name, in.value, in.unset_by_paper != 0});
    }
    out.results.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < relmol_report_check_count(rep); ++i) {
    relmol_check c{};
    relmol_report_check(rep, i, &c);
    out.checks.push_back({c.id, c.passed != 0, c.measured, c.threshold, c.detail});
  }
}

relmol_status dispatch(const RunConfig& c, relmol_report** rep) {
  const std::string& cmd = c.command;
  if (cmd == "verify") {
    return relmol_verify(c.suite.c_str(), static_cast<uint64_t>(c.integer("seed")), rep);
  }
  if (cmd == "bounds") {
    relmol_bounds_params p = relmol_bounds_default();
    p.z1 = c.number("z1");
    p.z2 = c.number("z2");
    p.n = c.integer("n");
    p.alpha = c.number("alpha");
    p.epsilon = c.number("epsilon");
    p.tau = c.number("tau");
    p.c = c.number("C");
    p.c0 = c.number("c0");
    p.c1 = c.number("c1");
    p.r = c.number("radius");
    p.statistics = c.text("statistics") == "none" ? RELMOL_NO_SYMMETRY : RELMOL_FERMIONIC;
    p.tau_set = !c.defaulted("tau");
    p.c_set = !c.defaulted("C");
    p.c0_set = !c.defaulted("c0");
    p.c1_set = !c.defaulted("c1");
    return relmol_bounds(&p, rep);
  }
  if (cmd == "tf-atom") {
    relmol_tf_atom_params p = relmol_tf_atom_default();
    p.z = c.number("z");
    p.x_min = c.number("x-min");
    p.x_max = c.number("x-max");
    p.points = static_cast<size_t>(c.integer("x-points"));
    p.ode_tolerance = c.number("ode-tol");
    return relmol_tf_atom(&p, rep);
  }
  if (cmd == "tf-diatomic") {
    relmol_tf_diatomic_params p = relmol_tf_diatomic_default();
    p.z1 = c.number("z1");
    p.z2 = c.number("z2");
    p.separation = c.number("R");
    p.mesh = mesh_of(c);
    return relmol_tf_diatomic(&p, rep);
  }
  if (cmd == "tf-fit") {
    relmol_tf_fit_params p = relmol_tf_fit_default();
    p.z1 = c.number("z1");
    p.z2 = c.number("z2");
    p.r_min = c.number("r-min");
    p.r_max = c.number("r-max");
    p.r_count = static_cast<size_t>(c.integer("r-count"));
    p.mesh = mesh_of(c);
    return relmol_tf_fit(&p, rep);
  }
  if (cmd == "herbst-ground") {
    relmol_herbst_params p = relmol_herbst_default();
    p.z = c.number("z");
    p.alpha = c.number("alpha");
    p.grid_points = static_cast<size_t>(c.integer("grid-n"));
    p.grid_guard = c.number("grid-guard");
    p.residual_tolerance = c.number("residual-tol");
    return relmol_herbst_ground(&p, rep);
  }
  if (cmd == "herbst-scan") {
    relmol_dilation_params p = relmol_dilation_default();
    p.z = c.number("z");
    p.alpha = c.number("alpha");
    p.beta = c.number("beta");
    p.lambda_min = c.number("lambda-min");
    p.lambda_max = c.number("lambda-max");
    p.count = static_cast<size_t>(c.integer("lambda-count"));
    return relmol_herbst_scan(&p, rep);
  }
  // scott
  const std::vector<double> gammas = c.list("scott-gamma");
  const std::vector<double> values = c.list("scott-value");
  relmol_scott_params p = relmol_scott_default();
  p.z1 = c.number("z1");
  p.z2 = c.number("z2");
  p.separation = c.number("R");
  p.alpha = c.number("alpha");
  p.c0 = c.number("c0");
  p.c1 = c.number("c1");
  p.epsilon = c.number("epsilon");
  p.tau = c.number("tau");
  p.r0 = c.number("r0");
  p.constants_set = !c.defaulted("c0") || !c.defaulted("c1") || !c.defaulted("tau");
  p.table_gammas = gammas.data();
  p.table_values = values.data();
  p.table_size = gammas.size();
  p.mesh = mesh_of(c);
  return relmol_scott(&p, rep);
}

}  // namespace

ExecuteOutcome execute(const RunConfig& config) {
  ExecuteOutcome out;
  RunReport& r = out.report;
  r.version = relmol_version();
  r.command = config.command;
  r.config = config;
  for (const Param& p : config.params) {
    const Spec* s = find_spec(p.name);
    if (s != nullptr && s->free_constant && p.source == Source::default_value) {
      r.markers[p.name] = "unset-by-paper";
    }
  }

  const auto start = std::chrono::steady_clock::now();
  relmol_report* rep = nullptr;
  const relmol_status status = dispatch(config, &rep);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (status == RELMOL_OK) {
    collect(rep, r);
    relmol_report_free(rep);
  } else {
    RunError e{relmol_status_string(status), relmol_last_error(), std::nullopt};
    const double est = relmol_last_error_estimate();
    if (!std::isnan(est)) e.last_estimate = est;
    r.error = e;
    out.input_rejected = status == RELMOL_ERR_DOMAIN || status == RELMOL_ERR_PRECONDITION ||
                         status == RELMOL_ERR_CRITICAL_COUPLING || status == RELMOL_ERR_INVALID_ARGUMENT;
  }
  if (config.find("no-timing") != nullptr && config.flag("no-timing")) r.seconds.reset();
  return out;
}

// --- output --------------------------------------------------------------------

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

// JSON has no infinities; they are written as strings.
std::string json_number(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  return render(v);
}

std::string json_value(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return json_number(*d);
  if (const auto* s = std::get_if<std::string>(&v)) return quote(*s);
  if (const auto* l = std::get_if<std::vector<double>>(&v)) {
    std::string out = "[";
    for (std::size_t i = 0; i < l->size(); ++i) out += (i ? ", " : "") + json_number((*l)[i]);
    return out + "]";
  }
  return render(v);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

}  // namespace

void write_json(std::ostream& os, const RunReport& r) {
  os << "{\n";
  os << "  \"tool\": \"relmol\",\n";
  os << "  \"version\": " << quote(r.version) << ",\n";
  os << "  \"command\": " << quote(r.command) << ",\n";
  os << "  \"config\": {";
  bool first = true;
  if (r.command == "verify") {
    os << "\n    \"suite\": " << quote(r.config.suite);
    first = false;
  }
  for (const Param& p : r.config.params) {
    if (p.name == "output") continue;
    os << (first ? "\n" : ",\n") << "    " << quote(p.name) << ": " << json_value(p.value);
    first = false;
  }
  os << (first ? "},\n" : "\n  },\n");
  os << "  \"config_markers\": {";
  first = true;
  for (const auto& [name, marker] : r.markers) {
    os << (first ? "\n" : ",\n") << "    " << quote(name) << ": " << quote(marker);
    first = false;
  }
  os << (first ? "},\n" : "\n  },\n");
  os << "  \"results\": {";
  first = true;
  for (const ResultEntry& e : r.results) {
    os << (first ? "\n" : ",\n") << "    " << quote(e.id) << ": {\"value\": " << json_number(e.value);
    if (e.exact) os << ", \"exact\": " << quote(*e.exact);
    os << ", \"formula\": " << quote(e.formula) << ", \"units\": " << quote(e.units);
    if (!e.note.empty()) os << ", \"note\": " << quote(e.note);
    os << ", \"inputs\": [";
    for (std::size_t k = 0; k < e.inputs.size(); ++k) {
      const ResultInput& in = e.inputs[k];
      os << (k ? ", " : "") << "{\"name\": " << quote(in.name) << ", \"value\": " << json_number(in.value);
      if (in.unset_by_paper) os << ", \"marker\": \"unset-by-paper\"";
      os << "}";
    }
    os << "]}";
    first = false;
  }
  os << (first ? "},\n" : "\n  },\n");
  os << "  \"checks\": [";
  first = true;
  for (const CheckResult& c : r.checks) {
    os << (first ? "\n" : ",\n") << "    {\"id\": " << quote(c.id) << ", \"passed\": " << (c.passed ? "true" : "false")
       << ", \"measured\": " << json_number(c.measured) << ", \"threshold\": " << json_number(c.threshold);
    if (!c.detail.empty()) os << ", \"detail\": " << quote(c.detail);
    os << "}";
    first = false;
  }
  os << (first ? "],\n" : "\n  ],\n");
  if (r.error) {
    os << "  \"error\": {\"status\": " << quote(r.error->status) << ", \"message\": " << quote(r.error->message);
    if (r.error->last_estimate) os << ", \"last_estimate\": " << json_number(*r.error->last_estimate);
    os << "},\n";
  }
  os << "  \"passed\": " << (r.passed() ? "true" : "false");
  if (r.seconds) os << ",\n  \"timings\": {\"execute_seconds\": " << json_number(*r.seconds) << "}";
  os << "\n}\n";
}

void write_csv(std::ostream& os, const RunReport& r) {
  os << "id,value,formula,inputs\n";
  for (const ResultEntry& e : r.results) {
    std::string inputs;
    for (const ResultInput& in : e.inputs) {
      inputs += (inputs.empty() ? "" : ";") + in.name + "=" + render(in.value);
      if (in.unset_by_paper) inputs += " [unset-by-paper]";
    }
    os << csv_field(e.id) << ',' << csv_field(e.exact ? *e.exact : render(e.value)) << ','
       << csv_field(e.formula) << ',' << csv_field(inputs) << '\n';
  }
}

bool emit(const RunReport& report, const std::string& format, const std::string& path,
          std::ostream& stdout_stream, std::string& error) {
  std::ostringstream buf;
  if (format == "csv") {
    write_csv(buf, report);
  } else {
    write_json(buf, report);
  }
  if (path.empty() || path == "-") {
    stdout_stream << buf.str();
    stdout_stream.flush();
    if (!stdout_stream) {
      error = "output: write to stdout failed";
      return false;
    }
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    error = "output: cannot open '" + path + "' for writing";
    return false;
  }
  f << buf.str();
  f.close();
  if (!f) {
    error = "output: write to '" + path + "' failed";
    return false;
  }
  return true;
}

int run(const std::vector<std::string>& args, const std::optional<std::string>& env_config,
        std::ostream& out, std::ostream& err) {
  ParseOutcome parsed = parse_and_validate(args, env_config);
  if (parsed.exit_code) {
    if (*parsed.exit_code == kExitOk) {
      out << parsed.message;
    } else {
      err << "relmol: error: " << parsed.message << '\n';
    }
    return *parsed.exit_code;
  }
  const ExecuteOutcome done = execute(parsed.config);
  const RunReport& report = done.report;
  if (done.input_rejected) {
    err << "relmol: error: " << report.error->message << '\n';
    return kExitInput;
  }
  std::string io_error;
  if (!emit(report, parsed.config.text("format"), parsed.config.text("output"), out, io_error)) {
    err << "relmol: error: " << io_error << '\n';
    return kExitFailure;
  }
  if (report.error) {
    err << "relmol: " << report.error->status << ": " << report.error->message << '\n';
  }
  for (const CheckResult& c : report.checks) {
    if (!c.passed) {
      err << "relmol: check failed: " << c.id << " (measured " << render(c.measured) << ", threshold "
          << render(c.threshold) << ")\n";
    }
  }
  return report.exit_code();
}

}  // namespace relmol::cli
