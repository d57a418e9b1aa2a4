#ifndef ALTLAB_CLI_HPP
#define ALTLAB_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace altlab {

// Entry point of the command-line tool. Exit codes: 0 completed (verdict in
// output), 2 input error, 3 resource cap exceeded, 4 internal inconsistency.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace altlab

#endif
