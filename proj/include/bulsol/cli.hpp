#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bulsol {

/// Runs one CLI invocation. `args` excludes the program name.
/// Exit codes: 0 success, 2 usage/domain error, 3 capacity, 4 invariant
/// violation or solver failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bulsol
