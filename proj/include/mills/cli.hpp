#pragma once

// Command-line front end. Subcommands: poly, bounds, verify, beta, cf, phi.
//
// Exit status: 0 when every certificate passes, 1 on a certification
// failure, 2 on a usage, domain or I/O error. MILLS_PRECISION_BITS sets the
// default working precision (128 bits otherwise); --precision overrides it.

#include <iosfwd>
#include <string>
#include <vector>

namespace mills {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mills
