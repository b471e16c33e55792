#ifndef HDGAME_CLI_HPP
#define HDGAME_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace hdgame::cli {

// Dispatches one command. Exit status: 0 success (non-existence results
// included), 1 domain errors, 2 input/parse errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace hdgame::cli

#endif
