#ifndef MSDIFF_CLI_HPP
#define MSDIFF_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace msdiff::cli {

/// Runs the command-line interface. Returns the process exit status:
/// 0 success, 2 precondition violation (with a diagnostic naming the failed
/// invariant), 3 resource guard.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

} // namespace msdiff::cli

#endif
