#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aivip {

/// Dispatches one CLI invocation (arguments without the program name).
/// Returns 0 on success, 1 on a domain error (weak instrument, visible edge,
/// bad input data), 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aivip
