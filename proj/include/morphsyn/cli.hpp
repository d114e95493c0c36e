#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace morphsyn::cli {

/// Runs one subcommand (scale, median, synth, improve, aggregate, check).
/// `args` excludes the program name. Returns the process exit code: 0 on
/// success, 1 for validation or solver errors (the error name goes to `err`),
/// 2 for usage errors.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace morphsyn::cli
