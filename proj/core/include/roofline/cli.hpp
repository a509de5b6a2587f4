#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace roofline::report {

/// The `roofline` command line: ingest / plot / report / simulate / bench /
/// section subcommands. `args` excludes the program name. Returns 0 on
/// success, 1 on a typed toolkit error (message on `err`), 2 on a usage
/// error. Exposed as a library call so tests can drive the CLI in-process.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace roofline::report
