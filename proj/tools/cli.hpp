#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace facetscope::cli {

/// Runs the facetscope command line with `args` (args[0] is the program name).
/// Returns 0 on success, 1 on runtime failure and 2 on bad usage.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace facetscope::cli
