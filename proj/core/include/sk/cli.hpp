#ifndef SK_CLI_HPP
#define SK_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace sk {

// Command-line dispatcher; exit code 0 on success, 1 on domain errors,
// 2 on parse/usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sk

#endif
