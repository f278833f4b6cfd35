#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cff::io {

// Full CLI entry point: args excludes the program name. Returns the process
// exit code: 0 success, 1 usage/parse/validation, 2 validated but
// inapplicable (positivity violated, gamma >= 1, nothing left after an
// erasure), 3 numerical failure.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace cff::io
