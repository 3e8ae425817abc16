#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace epsnet {

/// Runs one CLI invocation. `args` excludes the program name. Returns 0 iff
/// every requested assertion passed.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace epsnet
