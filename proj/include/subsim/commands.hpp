#pragma once

#include "subsim/run_config.hpp"

#include <iosfwd>
#include <string>

namespace subsim {

enum class OutputFormat { json, csv };

OutputFormat parse_format(const std::string& name);

// Subcommand bodies. Results go to `out`; the return value is the process
// exit code (0 success, 2 below-threshold). Configuration and domain
// problems throw; the caller maps them to exit codes 1 and 3.
int cmd_evaluate(const RunConfig& rc, OutputFormat fmt, std::ostream& out);
int cmd_sweep(const RunConfig& rc, OutputFormat fmt, std::ostream& out);
int cmd_optimize(const RunConfig& rc, OutputFormat fmt, std::ostream& out);
int cmd_compare(const RunConfig& rc, OutputFormat fmt, std::ostream& out);

} // namespace subsim
