#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polylab {

/// Entry point shared by the binary and the tests. Arguments exclude the
/// program name. Exit code 0: all checks pass; 1: a mathematical finding was
/// violated (failed theorem check, unclassified epimorphism, truncated
/// search); 2: usage or parse error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polylab
