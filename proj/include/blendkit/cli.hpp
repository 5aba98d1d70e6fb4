#ifndef BLENDKIT_CLI_HPP
#define BLENDKIT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace blendkit {

// Dispatches the blendkit subcommands. Exit code 0 on success, 2 on argument
// errors, 1 on computation errors; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blendkit

#endif
