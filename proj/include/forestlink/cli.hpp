#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace forestlink::cli {

// Parses argv (without the program name), runs the requested subcommand,
// and writes results to out / diagnostics to err. Exit codes: 0 success,
// 1 domain or validation failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace forestlink::cli
