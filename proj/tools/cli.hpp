#pragma once

// Command runner behind the `yb` executable.
//   yb verify|evaluate|lattice|surface-scan --config <file> [--seed N] [--samples N] [--out <path>]
// Exit codes: 0 pass, 1 verification failure, 2 config error, 3 numerical degeneracy.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "ybmaps/json_io.hpp"

namespace ybcli {

enum ExitCode : int { kPass = 0, kFail = 1, kConfigError = 2, kNumericalError = 3 };

struct RunConfig {
  std::string command;
  ybmaps::Json doc = ybmaps::Json::object();  ///< config file with flag overrides applied
  std::optional<std::string> out;
  bool stamp = true;  ///< include the "timestamp" field in JSON reports
};

/// Applies `--seed`, `--samples`, `--map`, `--out` overrides onto the parsed document.
RunConfig make_config(const std::string& command, const ybmaps::Json& doc,
                      std::optional<std::uint64_t> seed, std::optional<std::size_t> samples,
                      std::optional<std::string> map, std::optional<std::string> out);

int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_evaluate(const RunConfig& cfg, std::ostream& out);
int cmd_lattice(const RunConfig& cfg, std::ostream& out);
int cmd_surface_scan(const RunConfig& cfg, std::ostream& out);

/// Dispatches on cfg.command; library errors become a structured JSON error document and
/// the matching exit code. Output goes to cfg.out when set, otherwise to `out`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line entry point.
int main_entry(int argc, char** argv);

}  // namespace ybcli
