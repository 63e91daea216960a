#ifndef TPATH_CLI_HPP
#define TPATH_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace tpath {

// exit code 0: success or property holds
// exit code 1: property fails (violations, cycle found, verification no)
// exit code 2: unusable input or usage error
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}

#endif
