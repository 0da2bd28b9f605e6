#pragma once

#include <ostream>

#include "dualproc/run_config.hpp"

namespace dualproc {

// Subcommand bodies behind the CLI; they validate, run, write files under
// config.out_dir and print a short status line. Return value is the
// process exit status.
int cmd_run(const RunConfig& config, std::ostream& out);
int cmd_compare(const RunConfig& config, std::ostream& out);
int cmd_dump_table(const RunConfig& config, std::ostream& out);

}  // namespace dualproc
