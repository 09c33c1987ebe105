#ifndef TZ_CLI_HPP
#define TZ_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace tz::cli {

/// Runs one CLI command. `args` excludes the program name.
///
/// Exit codes: 0 success or verification pass, 1 verification failure,
/// 2 usage error, 3 domain or degeneracy error.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

} // namespace tz::cli

#endif // TZ_CLI_HPP
