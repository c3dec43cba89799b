#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace erasure {

/// Entry point of the `erasebench` tool. `args` excludes the program name.
/// Returns 0 on success, 1 on invalid input, 2 on internal failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace erasure
