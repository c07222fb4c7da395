#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace exstab {

// Entry point behind the exstab binary. `args` excludes the program name.
// Exit codes: 0 success, 2 usage error, 1 runtime refusal (caps) or bad input.
// Results go to `out` only; diagnostics go to `err` only.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace exstab
