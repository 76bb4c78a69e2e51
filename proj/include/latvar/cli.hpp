#ifndef LATVAR_CLI_HPP
#define LATVAR_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace latvar {

// Full command-line front end, callable in-process for tests.
// args excludes the program name. Returns the process exit code:
// 0 success, 1 numerical failure, 2 invalid input.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

} // namespace latvar

#endif
