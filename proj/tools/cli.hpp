// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: parameter resolution, dispatch through the C API and
// report serialization. Kept as a library so tests can drive it in-process.

#ifndef RELMOL_TOOLS_CLI_HPP
#define RELMOL_TOOLS_CLI_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace relmol::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;

const std::vector<std::string>& commands();

using Value = std::variant<double, std::int64_t, bool, std::string, std::vector<double>>;

enum class Source { default_value, config_file, flag };

struct Param {
  std::string name;
  Value value;
  Source source = Source::default_value;
};

struct RunConfig {
  std::string command;
  /// verify only.
  std::string suite = "all";
  /// Parameters used by the command plus the global ones, in a fixed order.
  std::vector<Param> params;

  const Param* find(const std::string& name) const;
  double number(const std::string& name) const;
  std::int64_t integer(const std::string& name) const;
  bool flag(const std::string& name) const;
  std::string text(const std::string& name) const;
  std::vector<double> list(const std::string& name) const;
  bool defaulted(const std::string& name) const;
};

struct ParseOutcome {
  /// Set when the process should exit without executing (help, version, error).
  std::optional<int> exit_code;
  /// Diagnostic for exit code 2, or help/version text for 0.
  std::string message;
  RunConfig config;
};

/// Resolves flags > config file > defaults. The config file is `--config` or,
/// failing that, `env_config` (typically $RELMOL_CONFIG).
ParseOutcome parse_and_validate(const std::vector<std::string>& args,
                                const std::optional<std::string>& env_config = std::nullopt);

struct ResultInput {
  std::string name;
  double value = 0.0;
  bool unset_by_paper = false;
};

struct ResultEntry {
  std::string id;
  double value = 0.0;
  /// "p/q" when the value is an exact rational.
  std::optional<std::string> exact;
  std::string formula;
  std::string units;
  std::string note;
  std::vector<ResultInput> inputs;
};

struct CheckResult {
  std::string id;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct RunError {
  std::string status;
  std::string message;
  /// Residual or error estimate of a convergence failure.
  std::optional<double> last_estimate;
};

struct RunReport {
  std::string version;
  std::string command;
  RunConfig config;
  /// Free constants echoed at placeholder defaults, name -> "unset-by-paper".
  std::map<std::string, std::string> markers;
  std::vector<ResultEntry> results;
  std::vector<CheckResult> checks;
  std::optional<RunError> error;
  std::optional<double> seconds;

  bool passed() const;
  int exit_code() const;
};

/// Dispatches to the library. Input errors the validator could not see
/// (for example a malformed Scott table) set `input_rejected`.
struct ExecuteOutcome {
  RunReport report;
  bool input_rejected = false;
};

ExecuteOutcome execute(const RunConfig& config);

void write_json(std::ostream& os, const RunReport& report);
void write_csv(std::ostream& os, const RunReport& report);

/// Writes to `path`, or to `stdout_stream` when path is empty or "-".
/// Returns false and sets `error` on I/O failure.
bool emit(const RunReport& report, const std::string& format, const std::string& path,
          std::ostream& stdout_stream, std::string& error);

/// Full CLI: parse, execute, emit. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, const std::optional<std::string>& env_config,
        std::ostream& out, std::ostream& err);

}  // namespace relmol::cli

#endif  // RELMOL_TOOLS_CLI_HPP
