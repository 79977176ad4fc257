#ifndef NTL_CLI_APP_HPP
#define NTL_CLI_APP_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ntl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/**
 * Runs one `ntlkit` invocation. `args` excludes the program name. Results and
 * the one-line summary go to `out`; diagnostics and run metadata go to `err`.
 * Returns 0 on success, 1 on a domain error, 2 on a usage or parse error.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ntl::cli

#endif
