#pragma once

#include <string>
#include <vector>

#include "dualproc/run_config.hpp"

namespace dualproc {

struct CliInvocation {
  std::string command{};  // "run", "compare" or "dump-table"
  RunConfig config{};
};

// Parses argv-style tokens (without the program name). Flags override
// config-file values, which override defaults. Throws ConfigError on
// unknown flags, malformed values or a missing subcommand.
CliInvocation parse_cli(const std::vector<std::string>& args);

// Full entry point: parse, dispatch, report errors on stderr.
int cli_main(int argc, char** argv);

}  // namespace dualproc
