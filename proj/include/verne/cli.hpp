#ifndef VERNE_CLI_HPP
#define VERNE_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace verne {

// Command-line front end. Exit status 0 on success, 1 on domain errors
// (unreachable pose, no assembly mode, failed verification), 2 on usage or
// configuration errors. Streams are injected so tests can capture output.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace verne

#endif  // VERNE_CLI_HPP
