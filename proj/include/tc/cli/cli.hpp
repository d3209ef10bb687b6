#pragma once

#include <iosfwd>

namespace tc {

// Entry point of the tcbench tool. Returns 0 on success, 1 on runtime
// failure (including episode errors and invalid suites) and 2 on usage
// errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tc
