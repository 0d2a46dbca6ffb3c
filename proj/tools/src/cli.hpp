#pragma once

#include <string>
#include <vector>

namespace asysa::cli {

/// Parse command-line arguments (program name excluded), run the selected
/// command and return the process exit code: 0 success, 2 configuration
/// error, 3 data error, 4 functional-check failure, 1 anything else.
int run_cli(std::vector<std::string> args);

}  // namespace asysa::cli
