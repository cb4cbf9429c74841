#ifndef EMCONN_CLI_COMMANDS_HPP
#define EMCONN_CLI_COMMANDS_HPP

#include <iosfwd>

#include "config.hpp"

namespace emconn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitBreach = 2;
inline constexpr int kExitAbort = 3;

inline constexpr int kSchemaVersion = 1;

// Each command writes its report to `out` and diagnostics to `err`, and
// returns the exit code. Configuration problems found while running (for
// example a non-uniform field given to boost) throw ConfigError.
int cmd_table(const RunConfig& cfg, bool torsion, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_decay(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_boost(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_chern(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses arguments, loads and validates the configuration, runs the
/// subcommand and maps failures onto the exit-code contract.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace emconn::cli

#endif
