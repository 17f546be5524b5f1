#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rootcert {

inline constexpr const char* kToolVersion = "1.0.0";

/// Runs the command line `args` (without the program name). Returns the exit
/// code: 0 when every check passes, 1 on a certification or consistency
/// failure, 2 on a usage error, 3 when a search or enumeration cap is hit.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rootcert
