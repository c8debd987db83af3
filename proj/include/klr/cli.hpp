#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace klr {

// Command-line front end. Returns the process exit status:
//   0 success, 1 a requested check failed (a machine-readable report is
//   emitted), 2 usage or configuration error, 3 computation budget exceeded.
// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace klr
