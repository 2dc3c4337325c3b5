#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dcp {

// Command line entry point, minus the argv plumbing so tests can drive it.
// args excludes the program name. Returns the process exit code:
// 0 success, 1 usage or input error, 2 failed regression check.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace dcp
