// Command-line front end. Exit codes: 0 answered, 1 not found up to the
// bound, 2 input error.

#ifndef PTA_TOOLS_CLI_HPP
#define PTA_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace pta {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pta

#endif  // PTA_TOOLS_CLI_HPP
