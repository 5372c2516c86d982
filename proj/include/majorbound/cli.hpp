// cli.hpp — command-line front end: bound / rank / figure / verify.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace majorbound::cli {

/// Runs the CLI on the given arguments (program name excluded) and writes to
/// the supplied streams. Returns 0 on success, 1 when a verification check
/// fails, 2 on malformed input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace majorbound::cli
