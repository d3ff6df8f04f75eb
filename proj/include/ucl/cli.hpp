#ifndef UCL_CLI_HPP
#define UCL_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ucl {

/// Runs one subcommand (`args` starts with the subcommand name). Returns 0
/// when every check passes, 1 when one fails, 2 when inconclusive and 3 on
/// input errors.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_dispatch(int argc, char** argv);

}  // namespace ucl

#endif  // UCL_CLI_HPP
