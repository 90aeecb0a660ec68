#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace padicqm {

// Runs one command; args exclude the program name. Returns the exit code:
// 0 success, 2 validation failure, 3 parse failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padicqm
