#ifndef WALLCROSS_CLI_HPP
#define WALLCROSS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace wallcross {

// exit codes: 0 success, 1 mathematical mismatch, 2 input or usage error
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace wallcross

#endif
